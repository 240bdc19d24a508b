"""Exact Gaussian elimination over any field whose elements support + - * / and truthiness.

Used with ``Fraction`` and ``QuadScalar`` entries.  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

_ONE = Fraction(1)


def rref(matrix: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[top], rows[pivot_row] = rows[pivot_row], rows[top]
        inv = _ONE / rows[top][col]
        rows[top] = [x * inv for x in rows[top]]
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[top])]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1])


def kernel(matrix: Sequence[Sequence], zero=Fraction(0), one=Fraction(1)) -> list[list]:
    """Basis of the right null space ``{v : M v = 0}``, one vector per free column."""
    reduced, pivots = rref(matrix)
    if not matrix:
        return []
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(matrix: Sequence[Sequence], rhs: Sequence):
    """Unique solution of a square nonsingular system."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ZeroDivisionError("singular system")
    return [reduced[i][n] for i in range(n)]


def inverse(matrix: Sequence[Sequence], zero=Fraction(0), one=Fraction(1)) -> list[list]:
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in reduced]


def leading_minors_positive(matrix: Sequence[Sequence]) -> bool:
    """Sylvester test for positive definiteness via pivots of plain elimination.

    Entries must support ``.sign()`` or ordinary comparison with 0.
    """
    rows = [list(r) for r in matrix]
    n = len(rows)
    for k in range(n):
        p = rows[k][k]
        if _sign(p) <= 0:
            return False
        inv = _ONE / p
        for i in range(k + 1, n):
            f = rows[i][k] * inv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[k])]
    return True


def _sign(x) -> int:
    if hasattr(x, "sign"):
        return x.sign()
    return (x > 0) - (x < 0)


def transpose(matrix: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*matrix)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero=Fraction(0)) -> list[list]:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out
