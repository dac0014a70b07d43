"""Gaussian elimination over Z_p on augmented systems ``A x = b``.

Entries are Python ints so moduli up to 2**61 - 1 never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class Echelon:
    """Reduced row-echelon form of ``[A | b]`` over Z_p.

    ``rows[i]`` has a leading 1 in column ``pivots[i]`` and zeros in every
    other pivot column; ``rhs[i]`` is the matching right-hand side.
    """

    p: int
    ncols: int
    rows: tuple[tuple[int, ...], ...]
    rhs: tuple[int, ...]
    pivots: tuple[int, ...]
    consistent: bool

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Sequence[int]) -> tuple[list[int], int]:
        """Subtract the row-space component of ``vec``.

        Returns the residual vector and the value ``c . b`` of the combination
        ``c . A`` that was removed. The residual is zero iff ``vec`` lies in
        the row space, in which case ``vec . x`` equals that value for every
        solution ``x``.
        """
        p = self.p
        res = [v % p for v in vec]
        value = 0
        for row, b, col in zip(self.rows, self.rhs, self.pivots):
            c = res[col]
            if c:
                res = [(a - c * r) % p for a, r in zip(res, row)]
                value = (value + c * b) % p
        return res, value


def rref(matrix: Sequence[Sequence[int]], rhs: Sequence[int], p: int) -> Echelon:
    ncols = len(matrix[0]) if matrix else 0
    rows = [[v % p for v in row] for row in matrix]
    b = [v % p for v in rhs]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        b[r], b[pivot] = b[pivot], b[r]
        inv = pow(rows[r][col], -1, p)
        rows[r] = [v * inv % p for v in rows[r]]
        b[r] = b[r] * inv % p
        for i in range(len(rows)):
            c = rows[i][col]
            if i != r and c:
                rows[i] = [(v - c * w) % p for v, w in zip(rows[i], rows[r])]
                b[i] = (b[i] - c * b[r]) % p
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    consistent = all(b[i] == 0 for i in range(r, len(rows)))
    return Echelon(p, ncols, tuple(map(tuple, rows[:r])), tuple(b[:r]), tuple(pivots), consistent)


def rank(matrix: Sequence[Sequence[int]], p: int) -> int:
    return rref(matrix, [0] * len(matrix), p).rank


def in_row_space(vec: Sequence[int], matrix: Sequence[Sequence[int]], p: int) -> bool:
    residual, _ = rref(matrix, [0] * len(matrix), p).reduce(vec)
    return not any(residual)
