"""Small exact linear algebra over ``Fraction``.

Matrices are lists of rows. Only what the geometry needs: reduced row
echelon form, rank, kernel basis, affine solves and 3x3 determinants.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> tuple[Matrix, list[int]]:
    """Return the reduced row echelon form and the pivot columns.

    ``ncols`` bounds the columns used for pivoting, so an augmented matrix
    can be reduced without pivoting on its last column.
    """
    m = _copy(rows)
    if not m:
        return m, []
    width = len(m[0])
    limit = width if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Basis of ``{x : rows @ x = 0}``; ``ncols`` is required when ``rows`` is empty."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols is required for an empty system")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    width = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * width
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve_affine(a: Sequence[Sequence], b: Sequence) -> tuple[Optional[list[Fraction]], int]:
    """Solve ``a @ x = b``.

    Returns ``(particular_solution, kernel_dimension)``; the solution is
    ``None`` when the system is inconsistent.
    """
    width = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, pivots = rref(aug, ncols=width)
    for row in red[len(pivots):]:
        if row[-1] != 0:
            return None, width - len(pivots)
    x = [Fraction(0)] * width
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return x, width - len(pivots)


def det3(m: Sequence[Sequence[Fraction]]) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple[Fraction, Fraction, Fraction]:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def inverse(m: Sequence[Sequence[Fraction]]) -> Matrix:
    size = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(size)] for i, row in enumerate(m)]
    red, pivots = rref(aug, ncols=size)
    if len(pivots) < size:
        raise ZeroDivisionError("singular matrix")
    return [row[size:] for row in red]
