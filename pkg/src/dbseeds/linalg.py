"""Small exact linear algebra over Fraction.

Everything here works on tuples of tuples (rows) of Fractions or ints.
Matrices are tiny (a dozen rows at most), so plain Gaussian elimination
with exact pivots is all we need.
"""

from __future__ import annotations

from fractions import Fraction as Q
from typing import Sequence

Vec = tuple[Q, ...]
Mat = tuple[Vec, ...]


def vec(xs: Sequence) -> Vec:
    return tuple(Q(x) for x in xs)


def mat(rows: Sequence[Sequence]) -> Mat:
    return tuple(vec(r) for r in rows)


def zeros(n: int, m: int) -> Mat:
    return tuple(tuple(Q(0) for _ in range(m)) for _ in range(n))


def identity(n: int) -> Mat:
    return tuple(tuple(Q(1 if i == j else 0) for j in range(n)) for i in range(n))


def transpose(a: Mat) -> Mat:
    return tuple(zip(*a)) if a else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum(x * Q(y) for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence) -> Q:
    return sum(Q(x) * Q(y) for x, y in zip(u, v))


def bilinear(u: Sequence, a: Mat, v: Sequence) -> Q:
    """u^T a v with exact rationals."""
    return sum(Q(u[i]) * a[i][j] * Q(v[j]) for i in range(len(a)) for j in range(len(a[0])))


def _echelon(rows: list[list[Q]]) -> tuple[list[list[Q]], list[int]]:
    """In-place reduced row echelon form; returns (rows, pivot column list)."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return rows, pivots


def rank(a: Mat) -> int:
    if not a:
        return 0
    rows = [[Q(x) for x in row] for row in a]
    _, pivots = _echelon(rows)
    return len(pivots)


def mat_inv(a: Mat) -> Mat:
    """Exact inverse of a square matrix; raises ValueError if singular."""
    n = len(a)
    rows = [[Q(x) for x in row] + [Q(1 if i == j else 0) for j in range(n)] for i, row in enumerate(a)]
    rows, pivots = _echelon(rows)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return tuple(tuple(row[n:]) for row in rows)


class LinearSolveError(ValueError):
    """Stacked linear system is inconsistent or does not pin a unique solution."""


def solve_unique(a: Mat, b: Sequence) -> Vec:
    """Solve a x = b where a may be rectangular; the solution must be unique.

    Raises LinearSolveError when the system is inconsistent (no solution)
    or underdetermined (free variables remain).
    """
    n = len(a)
    m = len(a[0]) if n else 0
    rows = [[Q(x) for x in row] + [Q(b[i])] for i, row in enumerate(a)]
    rows, pivots = _echelon(rows)
    if m in pivots:
        raise LinearSolveError("inconsistent system")
    if len(pivots) < m:
        raise LinearSolveError("underdetermined system")
    sol = [Q(0)] * m
    for r, c in enumerate(pivots):
        sol[c] = rows[r][m]
    return tuple(sol)


def as_int_vec(v: Sequence[Q]) -> tuple[int, ...]:
    """Cast an exact rational vector to integers; raises ValueError otherwise."""
    out = []
    for x in v:
        q = Q(x)
        if q.denominator != 1:
            raise ValueError(f"non-integer entry {q}")
        out.append(int(q))
    return tuple(out)
