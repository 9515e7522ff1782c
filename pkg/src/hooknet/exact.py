"""Small exact linear algebra over Python ints and ``fractions.Fraction``.

Matrices are plain lists of rows.  Nothing here touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

Matrix = list[list]


class SingularMatrixError(ArithmeticError):
    pass


def zeros(rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return [[0] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


def _integerize(a: Sequence[Sequence]) -> tuple[Matrix, int]:
    den = lcm(*(x.denominator for row in a for x in row))
    if den == 1:
        return [[int(x) for x in row] for row in a], 1
    return [[x.numerator * (den // x.denominator) for x in row] for row in a], den


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    # integer dot products over a common denominator; one Fraction per entry
    ai, da = _integerize(a)
    bi, db = _integerize(b)
    bt = transpose(bi)
    prod = [[sum(x * y for x, y in zip(row, col) if x) for col in bt] for row in ai]
    den = da * db
    if den == 1:
        return prod
    return [[Fraction(x, den) for x in row] for row in prod]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def add(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Sequence[Sequence], s) -> Matrix:
    return [[s * x for x in row] for row in a]


def diag(values: Sequence) -> Matrix:
    n = len(values)
    out = zeros(n)
    for i, v in enumerate(values):
        out[i][i] = v
    return out


def outer(u: Sequence, v: Sequence) -> Matrix:
    return [[x * y for y in v] for x in u]


def is_zero(a: Sequence[Sequence]) -> bool:
    return all(x == 0 for row in a for x in row)


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination.

    Every intermediate division is exact, so the computation stays in the
    integers throughout.
    """
    m = [list(map(int, row)) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i = m[i]
            row_k = m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    """Solve ``a @ x = b`` exactly for a square nonsingular ``a``.

    ``b`` is a matrix (one column per right-hand side).  Gauss-Jordan with
    first-nonzero pivoting; all arithmetic in ``Fraction``.
    """
    n = len(a)
    aug = [
        [Fraction(x) for x in ra] + [Fraction(x) for x in rb]
        for ra, rb in zip(a, b)
    ]
    width = len(aug[0]) if aug else 0
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"no pivot in column {col}")
        aug[col], aug[piv] = aug[piv], aug[col]
        prow = aug[col]
        inv = 1 / prow[col]
        if inv != 1:
            for j in range(col, width):
                prow[j] *= inv
        for r in range(n):
            if r == col:
                continue
            f = aug[r][col]
            if f:
                row = aug[r]
                for j in range(col, width):
                    if prow[j]:
                        row[j] -= f * prow[j]
    return [row[n:] for row in aug]


def inverse(a: Sequence[Sequence]) -> Matrix:
    return solve(a, identity(len(a)))


def symmetric_pivots(a: Sequence[Sequence]) -> list[Fraction] | None:
    """Pivots of a symmetric LDL^T elimination with diagonal pivoting.

    Returns the list of pivots when the matrix is positive semidefinite and
    ``None`` as soon as it provably is not (a negative pivot, or a zero
    pivot whose row has not been eliminated).
    """
    m = [[Fraction(x) for x in row] for row in a]
    remaining = list(range(len(m)))
    pivots = []
    while remaining:
        p = max(remaining, key=lambda r: m[r][r])
        d = m[p][p]
        if d < 0:
            return None
        if d == 0:
            # largest diagonal is zero: PSD only if the rest is all zero
            if any(m[r][c] != 0 for r in remaining for c in remaining):
                return None
            pivots.extend(Fraction(0) for _ in remaining)
            break
        remaining.remove(p)
        for r in remaining:
            f = m[r][p] / d
            if f:
                for c in remaining:
                    m[r][c] -= f * m[p][c]
        pivots.append(d)
    return pivots


def is_psd(a: Sequence[Sequence]) -> bool:
    return symmetric_pivots(a) is not None
