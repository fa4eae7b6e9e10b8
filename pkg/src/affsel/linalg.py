"""Small dense exact linear algebra over Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[Fraction, ...]
Matrix = list[list[Fraction]]


def as_vector(values) -> Vector:
    return tuple(Fraction(v) for v in values)


def _row_reduce(rows: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form (in place) and its pivot columns."""
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        rows[r] = [v / lead for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    if not matrix:
        return 0
    _, pivots = _row_reduce([[Fraction(v) for v in row] for row in matrix])
    return len(pivots)


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> Vector | None:
    """Solve a square system exactly; None when the matrix is singular."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    aug, pivots = _row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return tuple(aug[i][n] for i in range(n))


def inverse(matrix: Sequence[Sequence]) -> Matrix | None:
    n = len(matrix)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(matrix)
    ]
    aug, pivots = _row_reduce(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in aug]


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : matrix @ x = 0}."""
    if not matrix:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    rows, pivots = _row_reduce([[Fraction(v) for v in row] for row in matrix])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in enumerate(pivots):
            x[p] = -rows[r][f]
        basis.append(tuple(x))
    return basis


def matvec(matrix: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Vector:
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in matrix)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
