import itertools
import math
import random
from fractions import Fraction

import pytest

from kfree.detmethod import (
    AuxPolynomial,
    BoxAnalysis,
    FullRankError,
    choose_degrees,
    choose_M,
    delta1_check,
    delta2,
    delta_factorization_check,
    evaluation_matrix,
    find_aux_polynomial,
    g_polynomials,
    monomial_basis,
    monomial_product_bound,
    poly_eval,
    rank_and_nullvector,
    t_set,
    verify_vanishing,
)
from kfree.dioph import Box, Quadruple, enumerate_solutions

Q = Quadruple(2, 1, 2, 7)  # 2*2^2 - 7*1^2 = 1


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([row[:j] + row[j + 1 :] for row in m[1:]]) for j in range(len(m)))


def test_monomial_basis():
    b = monomial_basis(1, 1)
    assert b.names() == ["a*x", "a*y", "b*x", "b*y"] and b.H == 4
    assert monomial_basis(0, 0).names() == ["1"]
    assert monomial_basis(2, 3).H == 12
    mons = monomial_basis(3, 2).monomials
    assert len(set(mons)) == len(mons)
    assert list(mons) == sorted(mons, key=lambda m: (m[0], m[2]), reverse=True)
    with pytest.raises(ValueError):
        monomial_basis(-1, 0)


def test_evaluation_matrix():
    assert evaluation_matrix([Q], monomial_basis(1, 1)) == [[4], [2], [14], [7]]
    assert evaluation_matrix([Q, Q], monomial_basis(0, 0)) == [[1, 1]]
    m = evaluation_matrix([Q, Q], monomial_basis(1, 0))
    assert all(row[0] == row[1] for row in m)


def test_rank_and_nullvector():
    assert rank_and_nullvector([[4], [2], [14], [7]]) == (1, [1, -2, 0, 0])
    assert rank_and_nullvector([[1, 0], [0, 1]]) == (2, None)
    r, v = rank_and_nullvector([[1, 1], [2, 2]])
    assert r == 1 and v is not None


def test_find_aux_polynomial():
    B = find_aux_polynomial([Q], 1, 1, Z=4)
    c = B.coefficients
    assert 4 * c[0] + 2 * c[1] + 14 * c[2] + 7 * c[3] == 0
    assert math.gcd(*c) == 1 and any(c)
    assert verify_vanishing(B, [Q])
    assert B.height == 2 and B.kappa_measured == pytest.approx(0.5)
    assert str(B) == "1*a*x - 2*a*y"
    empty = find_aux_polynomial([], 2, 1)
    assert empty.coefficients == (1,) + (0,) * 5 and empty.kappa_measured is None
    many = enumerate_solutions(Box(8, 8, 4096, 2))[:4]
    with pytest.raises(FullRankError):
        find_aux_polynomial(many, 0, 0)


def test_verify_vanishing_examples():
    basis = monomial_basis(1, 1)
    assert verify_vanishing(AuxPolynomial(basis, (1, -2, 0, 0)), [Q])
    assert not verify_vanishing(AuxPolynomial(basis, (1, 0, 0, 0)), [Q])
    assert verify_vanishing(AuxPolynomial(basis, (1, 0, 0, 0)), [])


def solution_pool():
    pool = []
    for X, Y, Z in [(4, 4, 500), (8, 8, 4096), (2, 16, 3000), (16, 4, 9000)]:
        pool += enumerate_solutions(Box(X, Y, Z, 2)) + enumerate_solutions(Box(X, Y, Z, 2, -1))
    return pool


def test_delta1_against_cofactor_expansion():
    rng = random.Random(5)
    pool = solution_pool()
    for d, e in [(1, 1), (0, 3), (3, 0), (1, 0)]:
        basis = monomial_basis(d, e)
        for _ in range(25):
            sols = rng.sample(pool, basis.H)
            assert delta1_check(sols, basis) == cofactor_det(evaluation_matrix(sols, basis))
    assert delta1_check([Q, Q, Q, Q], monomial_basis(1, 1)) == 0
    with pytest.raises(ValueError):
        delta1_check([Q], monomial_basis(1, 1))


def test_delta_factorization():
    rng = random.Random(8)
    pool = solution_pool()
    for d, e in [(1, 1), (2, 1), (1, 2), (0, 0)]:
        basis = monomial_basis(d, e)
        for _ in range(10):
            assert delta_factorization_check(rng.sample(pool, basis.H), basis)
    basis = monomial_basis(0, 0)
    assert delta1_check([Q], basis) == 1 and delta2([Q], basis) == 1
    basis = monomial_basis(1, 1)
    assert delta_factorization_check([Q] * 4, basis) and delta2([Q] * 4, basis) == 0


def test_g_polynomials():
    assert g_polynomials(Fraction(1, 3), 2, monomial_basis(0, 0)) == [{(0, 0): 1}]
    # f = b*y at s0 = 1/2, k = 2: (1/2 + u)^2 - v
    by = g_polynomials(Fraction(1, 2), 2, monomial_basis(1, 0))[1]
    assert by == {(0, 0): Fraction(1, 4), (1, 0): 1, (2, 0): 1, (0, 1): -1}
    basis = monomial_basis(2, 2)
    s0 = Fraction(7, 8)
    gs = g_polynomials(s0, 2, basis)
    for q in enumerate_solutions(Box(8, 8, 4096, 2))[:20]:
        u, v = q.s - s0, q.v(2)
        for (al, be, ga, de), g in zip(basis.monomials, gs):
            assert poly_eval(g, u, v) == q.t**be * q.s**ga


def test_monomial_product_bound_examples():
    assert monomial_product_bound(10.0, 20.0, 1).exact_log_product == 0
    assert monomial_product_bound(math.e, math.e, 3).exact_log_product == pytest.approx(-2)
    assert monomial_product_bound(math.exp(2), math.e, 2).exact_log_product == pytest.approx(-1)
    with pytest.raises(ValueError):
        monomial_product_bound(1.0, 5.0, 3)


def test_monomial_product_bound_is_optimal_and_t_set():
    M, V = 7.0, 3.0
    for H in (1, 5, 13, 30):
        rep = monomial_product_bound(M, V, H)
        costs = sorted(j * math.log(M) + l * math.log(V) for j, l in itertools.product(range(40), repeat=2))
        assert rep.exact_log_product == pytest.approx(-sum(costs[:H]))
        assert rep.exact_log_product <= 0
        assert set(rep.exponents) <= set(t_set(M, V, rep.log_W + 1e-9))


def test_monomial_product_ratio_tends_to_one():
    # the ratio approaches 1 from above, so |ratio - 1| shrinks strictly
    ratios = []
    for H in (10, 20, 40, 80):
        rep = monomial_product_bound(math.exp(100), math.exp(100), H)
        ratios.append(rep.asymptotic_value / rep.exact_log_product)
    assert all(r > 1 for r in ratios)
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    rep = monomial_product_bound(1e6, 1e4, 160)
    assert abs(rep.asymptotic_value / rep.exact_log_product - 1) < 0.1


def test_choose_degrees():
    Z = 2**20
    # X = Y gives A = Z/X^2 and e = floor(d log A / log Y)
    assert choose_degrees(BoxAnalysis(2**5, 2**5, 2**15, 2), 3) == (3, 3)  # A = Y
    assert choose_degrees(BoxAnalysis(2**4, 2**4, 2**16, 2), 2) == (2, 4)  # A = Y^2
    assert choose_degrees(BoxAnalysis(2**10, 2**7, Z, 2), 4) == (4, 0)  # A = 1
    with pytest.raises(ValueError):
        choose_degrees(BoxAnalysis(4, 1, Z, 2), 2)


def test_choose_M():
    # X = Z^(1/k): the first term is 1, so M = ceil(Y)
    assert choose_M(BoxAnalysis(2**10, 300, 2**20, 2), 2, Fraction(1, 10)).M == 300
    # u = 5/9, v = 1, delta = 0: M = ceil(Z^(2/k))
    Z = 2**27
    ch = choose_M(BoxAnalysis(2**5, 2**9, Z, 3), 3, 0)
    assert ch.M == 2**18 and not ch.clamped
    Z = 2**18
    ch = choose_M(BoxAnalysis(2**5, 2**9, Z, 2), 2, 0)
    assert ch.M == Z and ch.clamped
    # irrational exponents go through the mpmath path
    ch = choose_M(BoxAnalysis(3, 50, 10**4, 2), 2, Fraction(1, 10))
    expo = 4.5 * 1.1 * math.log(10**4 / 9) * math.log(50) / math.log(10**4)
    assert ch.M == min(max(math.ceil(math.exp(expo)), 50), 10**4)


def test_box_analysis_V_at_least_Z():
    for X, Y, Z in [(8, 8, 4096), (2, 60, 10**4), (31, 31, 1000)]:
        a = BoxAnalysis(X, Y, Z, 2)
        if max(X, Y) ** 2 <= Z:
            assert a.V >= Z
