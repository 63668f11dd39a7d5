import math
import random
from fractions import Fraction

import pytest

from kfree.dioph import Box, count_N
from kfree.lattice import (
    IntervalSpec,
    ScaledLattice,
    compute_Li,
    count_NI,
    cover_intervals,
    gauss_reduce,
    interval_bases,
    interval_solutions,
    make_lattice,
    shortest_histogram,
    to_lambda,
)


def brute_shortest(lat, bound=12):
    """Smallest nonzero Gram norm over coordinates |x|, |y| <= bound (oracle)."""
    G11, G12, G22 = lat.gram()
    best = None
    for x in range(-bound, bound + 1):
        for y in range(-bound, bound + 1):
            if x or y:
                n = G11 * x * x + 2 * G12 * x * y + G22 * y * y
                best = n if best is None else min(best, n)
    return best * lat.scale**2


def test_cover_examples():
    assert [s.z for s in cover_intervals(1, 1, 4)] == list(range(2, 8))
    assert [s.z for s in cover_intervals(1, 1, 2)] == [1, 2, 3]
    with pytest.raises(ValueError):
        cover_intervals(1, 8, 4)


def test_cover_partitions_box_ratios():
    X, Y, M = Fraction(4), Fraction(8), 16
    specs = cover_intervals(X, Y, M)
    for x in range(5, 9):
        for y in range(9, 17):
            assert sum(s.contains(x, y) for s in specs) == 1


def test_make_lattice_examples():
    lat = make_lattice(IntervalSpec(4, 2, 1))
    assert lat.vector((1, 0)) == (2, 0)
    assert lat.vector((0, 1)) == (-1, Fraction(1, 2))
    assert lat.det == 1
    lat = make_lattice(IntervalSpec(1, 1, Fraction(1, 2)))
    assert lat.vector((1, 0)) == (1, 0) and lat.vector((0, 1)) == (-1, 1)


def test_gauss_reduce_example():
    b = gauss_reduce(make_lattice(IntervalSpec(4, 2, 1)))
    assert b.e1 == (1, 2) and b.g1 == (0, 1)
    assert b.norm2_1 == 1 and b.norm2_2 == Fraction(5, 4)
    L1, L2 = compute_Li(b)
    assert L1 >= Fraction(8, 3) ** 0.5 and L1 - Fraction(16330, 10000) < Fraction(1, 10000)
    assert L1 >= L2


def test_gauss_reduce_z_equal_M_and_identity():
    b = gauss_reduce(make_lattice(IntervalSpec(5, 5, 3)))
    assert b.norm2_1 == Fraction(1, 36) == brute_shortest(make_lattice(IntervalSpec(5, 5, 3)))
    # [[1, -1], [0, 1]] generates Z^2, so this is the scaled identity lattice
    b = gauss_reduce(ScaledLattice(1, 1, Fraction(1, 3)))
    assert b.norm2_1 == b.norm2_2 == Fraction(1, 9)
    assert {b.g1, b.g2} == {(Fraction(1, 3), 0), (0, Fraction(1, 3))}


def test_reduction_properties_random():
    rng = random.Random(3)
    for _ in range(500):
        M = rng.randint(1, 400)
        z = rng.randint(1, 4 * M)
        Y = Fraction(rng.randint(1, 200), rng.choice([1, 2]))
        lat = make_lattice(IntervalSpec(M, z, Y))
        b = gauss_reduce(lat)
        assert b.norm2_1 <= b.norm2_2
        assert abs(b.e1[0] * b.e2[1] - b.e1[1] * b.e2[0]) == 1
        assert b.norm2_1 <= brute_shortest(lat, bound=8)
        d2 = b.det**2
        assert d2 <= b.norm2_1 * b.norm2_2 <= Fraction(4, 3) * d2
        # L_i is a rational upper bound of sqrt(8/3)/|g_i| that is tight to 1e-11
        for L, n in ((b.L1, b.norm2_1), (b.L2, b.norm2_2)):
            assert L * L * n >= Fraction(8, 3)
            assert (L - Fraction(1, 2**38)) ** 2 * n < Fraction(8, 3)


def test_containment_and_lambda():
    spec = IntervalSpec(4, 2, 1)
    b = gauss_reduce(make_lattice(spec))
    lat = make_lattice(spec)
    for x in range(-20, 21):
        for y in range(-20, 21):
            u, v = lat.vector((x, y))
            l1, l2 = to_lambda((x, y), b)
            assert (l1 * b.e1[0] + l2 * b.e2[0], l1 * b.e1[1] + l2 * b.e2[1]) == (x, y)
            if abs(u) <= 1 and abs(v) <= 1:
                assert abs(l1) <= b.L1 and abs(l2) <= b.L2
    assert to_lambda(b.e1, b) == (1, 0) and to_lambda(b.e2, b) == (0, 1)


def test_lambda_round_trip_random():
    rng = random.Random(11)
    b = gauss_reduce(make_lattice(IntervalSpec(97, 151, 40)))
    for _ in range(1000):
        x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        l1, l2 = to_lambda((x, y), b)
        assert (l1 * b.e1[0] + l2 * b.e2[0], l1 * b.e1[1] + l2 * b.e2[1]) == (x, y)


@pytest.mark.parametrize(
    "X, Y, Z, k", [(8, 8, 4096, 2), (4, 16, 2000, 2), (2, 32, 50_000, 2), (8, 16, 10**5, 3), (16, 64, 10**5, 2)]
)
def test_interval_partition_identity(X, Y, Z, k):
    box = Box(X, Y, Z, k)
    M = max(16, math.ceil(2 * Y / X))
    total = 0
    for spec, b in interval_bases(X, Y, M):
        n = count_NI(spec, box, b)
        total += n
        assert n <= 8 * b.L1
    assert total == count_N(box)


def test_empty_interval():
    box = Box(8, 8, 4096, 2)
    spec = IntervalSpec(64, 200, 8)  # s in (3.125, 3.14], outside (1/2, 2]
    assert interval_solutions(spec, box, gauss_reduce(make_lattice(spec))) == []


def test_histogram_total():
    hist = shortest_histogram(64, 64, 256)
    assert sum(hist.values()) == len(cover_intervals(64, 64, 256))
    hist = shortest_histogram(1, 1, 2)
    assert sum(hist.values()) == 3
