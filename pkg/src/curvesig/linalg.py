"""Exact dense linear algebra over Q (thin layer over flint's fmpq_mat)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

from .algebra import to_fmpq, to_fraction

Matrix = list[list[Fraction]]


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[to_fraction(v) if not isinstance(v, Fraction) else v for v in row] for row in rows]


def _fm(rows: Sequence[Sequence]) -> "flint.fmpq_mat":
    r = len(rows)
    c = len(rows[0]) if r else 0
    return flint.fmpq_mat(r, c, [to_fmpq(v) for row in rows for v in row])


def _back(m: "flint.fmpq_mat") -> Matrix:
    return [[to_fraction(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of {v : rows * v = 0}, one vector per entry."""
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    m = _fm(rows)
    n = m.ncols()
    R, rank = m.rref()
    pivots = []
    for i in range(rank):
        for j in range(n):
            if R[i, j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -to_fraction(R[i, f])
        basis.append(v)
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return _fm(rows).rref()[1]


def det(rows: Sequence[Sequence]) -> Fraction:
    return to_fraction(_fm(rows).det())


def inverse(rows: Sequence[Sequence]) -> Matrix:
    return _back(_fm(rows).inv())


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return _back(_fm(a) * _fm(b))


def apply(m: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * Fraction(y) for x, y in zip(row, v)), Fraction(0)) for row in m]


def normalize(m: Sequence[Sequence]) -> Matrix:
    """Scale so the first nonzero entry (row-major) is 1."""
    for row in m:
        for v in row:
            if v != 0:
                return [[Fraction(x) / v for x in r] for r in m]
    return as_matrix(m)


def proportional(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    return normalize(a) == normalize(b)
