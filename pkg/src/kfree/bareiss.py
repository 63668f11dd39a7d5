"""Fraction-free (Bareiss) elimination over the integers.

Entries stay integral throughout: every step divides exactly by the previous
pivot, so rank and determinant come out exact with no rational arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Optional, Sequence


def _copy(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[int(v) for v in row] for row in matrix]


def echelon(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int], int]:
    """Row echelon form (integer), pivot columns, and the sign of the row permutation."""
    a = _copy(matrix)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    prev = 1
    sign = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, cols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, sign


def rank(matrix: Sequence[Sequence[int]]) -> int:
    return len(echelon(matrix)[1])


def det(matrix: Sequence[Sequence[int]]) -> int:
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant of a non-square matrix")
    a, pivots, sign = echelon(matrix)
    if len(pivots) < n:
        return 0
    # with no skipped columns the last pivot is the determinant up to row swaps
    return sign * a[n - 1][n - 1]


def primitive(vec: Sequence[int]) -> list[int]:
    """Divide by the content and make the first nonzero entry positive."""
    g = 0
    for v in vec:
        g = math.gcd(g, v)
    if g == 0:
        return list(vec)
    out = [v // g for v in vec]
    first = next(v for v in out if v)
    return out if first > 0 else [-v for v in out]


def right_nullvector(matrix: Sequence[Sequence[int]], ncols: int) -> Optional[list[int]]:
    """A primitive integer c != 0 with matrix @ c = 0, or None when the kernel is trivial.

    The first free column is set to 1 and the pivot variables are solved by
    back substitution, so the result is deterministic.
    """
    if not matrix:
        return [1] + [0] * (ncols - 1) if ncols else None
    ech, pivots, _ = echelon(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    sol = [Fraction(0)] * ncols
    sol[free[0]] = Fraction(1)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        acc = sum((ech[r][j] * sol[j] for j in range(c + 1, ncols)), Fraction(0))
        sol[c] = -acc / ech[r][c]
    lcm = 1
    for v in sol:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return primitive([int(v * lcm) for v in sol])


def left_nullvector(matrix: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """A primitive integer c != 0 with c^T @ matrix = 0, or None."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    transposed = [[matrix[i][j] for i in range(rows)] for j in range(cols)]
    return right_nullvector(transposed, rows)
