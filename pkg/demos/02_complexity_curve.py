"""Regenerate the message/addition growth curve from measured runs.

Writes ``complexity.csv`` in the working directory; plotting is left to
whatever tool reads the CSV.
"""

from pathlib import Path

from ringsum.engine import complexity_csv, complexity_table

rows = complexity_table("modified-ck", range(4, 13))
for n, messages, additions in rows:
    print(f"n={n:>2}  messages={messages:>4}  additions={additions:>4}  n^2={n * n:>4}")

# Quadratic growth shows up as constant second differences.
msgs = [m for _, m, _ in rows]
print("second differences:", [msgs[i + 2] - 2 * msgs[i + 1] + msgs[i] for i in range(len(msgs) - 2)])

for variant in ("baseline", "k-secure", "ck"):
    print(variant, complexity_table(variant, [4, 5, 6]))

Path("complexity.csv").write_text(complexity_csv(rows))
