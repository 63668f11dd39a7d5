import random

import pytest
import sympy

from kfree.bareiss import det, left_nullvector, primitive, rank, right_nullvector


def random_matrix(rng, rows, cols, deficient):
    if deficient and rows > 1:
        base = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows - 1)]
        mix = [rng.randint(-3, 3) for _ in range(rows - 1)]
        extra = [sum(m * r[j] for m, r in zip(mix, base)) for j in range(cols)]
        rows_ = base + [extra]
        rng.shuffle(rows_)
        return rows_
    return [[rng.randint(-50, 50) for _ in range(cols)] for _ in range(rows)]


def test_against_sympy():
    rng = random.Random(7)
    for trial in range(300):
        r, c = rng.randint(1, 6), rng.randint(1, 6)
        A = random_matrix(rng, r, c, trial % 2 == 0)
        S = sympy.Matrix(A)
        assert rank(A) == S.rank()
        if r == c:
            assert det(A) == S.det()
        v = left_nullvector(A)
        if S.rank() < r:
            assert v is not None and any(v)
            assert all(sum(v[i] * A[i][j] for i in range(r)) == 0 for j in range(c))
        else:
            assert v is None


def test_examples():
    assert left_nullvector([[4], [2], [14], [7]]) == [1, -2, 0, 0]
    assert rank([[1, 0], [0, 1]]) == 2 and left_nullvector([[1, 0], [0, 1]]) is None
    assert det([[1, 2], [1, 2]]) == 0
    assert det([]) == 1
    assert right_nullvector([[1, 2, 3]], 3) == [2, -1, 0]
    with pytest.raises(ValueError):
        det([[1, 2]])


def test_primitive():
    assert primitive([0, -4, 6]) == [0, 2, -3]
    assert primitive([0, 0]) == [0, 0]
