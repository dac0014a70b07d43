"""Arithmetic in Z_p and additive segmentation of private inputs.

Values are plain Python ints kept in ``[0, p)``; :class:`Modulus` owns the
reduction. Randomness comes from numpy generators derived from a run seed
plus a stream name, so every party draws from its own reproducible stream.
"""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

from ringsum.errors import DimensionMismatch, NotPrime, TooSmall

MERSENNE_61 = 2**61 - 1


@dataclass(frozen=True)
class Modulus:
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise TooSmall(self.p)
        if not isprime(self.p):
            raise NotPrime(self.p)

    def __int__(self) -> int:
        return self.p

    def reduce(self, x: int) -> int:
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return pow(a, -1, self.p)


DEFAULT_MODULUS = Modulus(MERSENNE_61)


def make_modulus(p: int) -> Modulus:
    return Modulus(int(p))


def as_modulus(p: Modulus | int | None) -> Modulus:
    if p is None:
        return DEFAULT_MODULUS
    if isinstance(p, Modulus):
        return p
    return make_modulus(p)


def rng_stream(seed: int, name: str, *key: int) -> np.random.Generator:
    """Independent generator for the named stream ``name`` (and sub-key) of ``seed``.

    Streams with different names or keys never share state, so adding a
    party or a mask does not shift anyone else's draws.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=(zlib.crc32(name.encode()), *key))
    return np.random.default_rng(ss)


def random_elements(rng: np.random.Generator, count: int, modulus: Modulus) -> list[int]:
    if count <= 0:
        return []
    return [int(v) for v in rng.integers(0, modulus.p, size=count, dtype=np.int64)]


def split_segments(x: int, k: int, rng: np.random.Generator, modulus: Modulus) -> list[int]:
    """Split ``x`` into ``k`` additive segments mod p.

    The first ``k - 1`` segments are uniform over Z_p and the last one is the
    balancing residue, so any ``k - 1`` of them are independent of ``x``.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    x = modulus.reduce(x)
    head = random_elements(rng, k - 1, modulus)
    return head + [modulus.sub(x, sum(head))]


def sum_inputs(inputs: Iterable[int], modulus: Modulus | int | None = None) -> int:
    return sum(inputs) % as_modulus(modulus).p


@dataclass(frozen=True)
class SegmentMatrix:
    """``d[i][j]`` is segment ``j`` of party ``i + 1``; rows sum to ``inputs``."""

    modulus: Modulus
    inputs: tuple[int, ...]
    d: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.d) != len(self.inputs):
            raise DimensionMismatch(f"{len(self.d)} segment rows for {len(self.inputs)} inputs")
        widths = {len(row) for row in self.d}
        if len(widths) > 1:
            raise DimensionMismatch(f"ragged segment matrix, row widths {sorted(widths)}")
        p = self.modulus.p
        for i, (x, row) in enumerate(zip(self.inputs, self.d)):
            if not 0 <= x < p or any(not 0 <= v < p for v in row):
                raise ValueError(f"party {i + 1} has values outside [0, {p})")
            if sum(row) % p != x:
                raise ValueError(f"segments of party {i + 1} do not sum to its input")

    @property
    def n(self) -> int:
        return len(self.inputs)

    @property
    def k(self) -> int:
        return len(self.d[0]) if self.d else 0

    def segment(self, party: int, j: int) -> int:
        """Segment ``j`` (1-based) of party ``party`` (1-based)."""
        return self.d[party - 1][j - 1]


def segment_inputs(inputs: Sequence[int], k: int, modulus: Modulus, seed: int) -> SegmentMatrix:
    """Segment every party's input from the run's ``"segments"`` stream.

    All uniform segments are drawn in one block (party-major), then each
    row is closed with its balancing residue exactly as in :func:`split_segments`.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    xs = tuple(modulus.reduce(int(x)) for x in inputs)
    p = modulus.p
    rng = rng_stream(seed, "segments")
    block = rng.integers(0, p, size=(len(xs), k - 1), dtype=np.int64).tolist()
    rows = tuple(tuple(head + [(x - sum(head)) % p]) for x, head in zip(xs, block))
    return SegmentMatrix(modulus, xs, rows)
