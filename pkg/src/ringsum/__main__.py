import sys

from ringsum.cli import main

sys.exit(main())
