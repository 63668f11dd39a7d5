"""Constructive determinant method for a*x^k - b*y^k = 1 on one s-interval.

The monomials of bidegree (d, e) in (a, b; x, y) are evaluated at the
solutions; a left null vector of that H x J matrix is the coefficient vector
of an auxiliary form vanishing at every solution.  The remaining helpers
reproduce the bookkeeping that shows such a vector must exist: the
factorisation of the H x H minors through t = b/a and s = x/y, the monomial
product bound, and the choice of (d, e) and M for a given box.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

import mpmath

from . import bareiss
from .dioph import Box, Quadruple, iroot

Number = Union[int, Fraction]
Poly = dict  # {(deg_u, deg_v): Fraction}


class FullRankError(ArithmeticError):
    """The evaluation matrix has rank H: no auxiliary form of this bidegree exists."""


@dataclass(frozen=True)
class MonomialBasis:
    d: int
    e: int
    monomials: tuple[tuple[int, int, int, int], ...]

    @property
    def H(self) -> int:
        return len(self.monomials)

    def names(self) -> list[str]:
        out = []
        for exps in self.monomials:
            parts = [f"{v}^{p}" if p > 1 else v for v, p in zip("abxy", exps) if p]
            out.append("*".join(parts) or "1")
        return out


def monomial_basis(d: int, e: int) -> MonomialBasis:
    """a^al b^be x^ga y^de with al+be = d, ga+de = e, ordered by (al, ga) descending."""
    if d < 0 or e < 0:
        raise ValueError("degrees must be nonnegative")
    mons = tuple(
        (al, d - al, ga, e - ga) for al in range(d, -1, -1) for ga in range(e, -1, -1)
    )
    return MonomialBasis(d, e, mons)


def _eval_monomial(exps, q: Quadruple) -> int:
    al, be, ga, de = exps
    return q.a**al * q.b**be * q.x**ga * q.y**de


def evaluation_matrix(solutions: Sequence[Quadruple], basis: MonomialBasis) -> list[list[int]]:
    """H x J matrix with entry (i, j) = f_i(a_j, b_j, x_j, y_j)."""
    return [[_eval_monomial(m, q) for q in solutions] for m in basis.monomials]


def rank_and_nullvector(matrix: Sequence[Sequence[int]]) -> tuple[int, Optional[list[int]]]:
    """Exact rank, and when rank < H a primitive c with c^T * matrix = 0."""
    H = len(matrix)
    if H == 0:
        return 0, None
    if not matrix[0]:
        return 0, [1] + [0] * (H - 1)
    r = bareiss.rank(matrix)
    return r, (bareiss.left_nullvector(matrix) if r < H else None)


@dataclass(frozen=True)
class AuxPolynomial:
    basis: MonomialBasis
    coefficients: tuple[int, ...]
    Z: Optional[int] = None

    @property
    def height(self) -> int:
        return max(abs(c) for c in self.coefficients)

    @property
    def kappa_measured(self) -> Optional[float]:
        if self.Z is None or self.Z < 2:
            return None
        return math.log(self.height) / math.log(self.Z)

    def __call__(self, q: Quadruple) -> int:
        return sum(c * _eval_monomial(m, q) for c, m in zip(self.coefficients, self.basis.monomials) if c)

    def __str__(self) -> str:
        terms = [f"{c}*{n}" for c, n in zip(self.coefficients, self.basis.names()) if c]
        return " + ".join(terms).replace("+ -", "- ")


def find_aux_polynomial(
    solutions: Sequence[Quadruple], d: int, e: int, Z: Optional[int] = None
) -> AuxPolynomial:
    basis = monomial_basis(d, e)
    if not solutions:
        return AuxPolynomial(basis, (1,) + (0,) * (basis.H - 1), Z)
    r, vec = rank_and_nullvector(evaluation_matrix(solutions, basis))
    if vec is None:
        raise FullRankError(
            f"evaluation matrix has full rank H={basis.H} for (d, e)=({d}, {e}) "
            f"on {len(solutions)} solutions; M, d or e too small for this interval"
        )
    return AuxPolynomial(basis, tuple(vec), Z)


def verify_vanishing(B: AuxPolynomial, solutions: Sequence[Quadruple]) -> bool:
    return all(B(q) == 0 for q in solutions)


def delta1_check(solutions: Sequence[Quadruple], basis: MonomialBasis) -> int:
    """det(f_i(x_j)) for exactly H solutions."""
    if len(solutions) != basis.H:
        raise ValueError(f"need exactly H={basis.H} solutions, got {len(solutions)}")
    return bareiss.det(evaluation_matrix(solutions, basis))


def _fraction_det(rows: list[list[Fraction]]) -> Fraction:
    # plain Gaussian elimination over Q, independent of the Bareiss path
    a = [row[:] for row in rows]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return result


def delta2(solutions: Sequence[Quadruple], basis: MonomialBasis) -> Fraction:
    """det(f_i(1, t_j, s_j, 1)) = det(t_j^be_i * s_j^ga_i) over the rationals."""
    rows = [[q.t**be * q.s**ga for q in solutions] for (_, be, ga, _) in basis.monomials]
    return _fraction_det(rows)


def delta_factorization_check(solutions: Sequence[Quadruple], basis: MonomialBasis) -> bool:
    """Delta_1 == prod_j a_j^d y_j^e * Delta_2, exactly."""
    if len(solutions) != basis.H:
        raise ValueError(f"need exactly H={basis.H} solutions, got {len(solutions)}")
    scale = 1
    for q in solutions:
        scale *= q.a**basis.d * q.y**basis.e
    return delta1_check(solutions, basis) == scale * delta2(solutions, basis)


# -- polynomials in (u, v) -------------------------------------------------


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in p.items():
        for (i2, j2), c2 in q.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0) + c1 * c2
    return {key: c for key, c in out.items() if c}


def _ppow(p: Poly, n: int) -> Poly:
    out: Poly = {(0, 0): Fraction(1)}
    for _ in range(n):
        out = _pmul(out, p)
    return out


def poly_degree(p: Poly) -> int:
    return max((i + j for i, j in p), default=0)


def poly_eval(p: Poly, u: Number, v: Number) -> Fraction:
    return sum((c * Fraction(u) ** i * Fraction(v) ** j for (i, j), c in p.items()), Fraction(0))


def g_polynomials(s0, k: int, basis: MonomialBasis) -> list[Poly]:
    """g_i(u, v) = f_i(1, (s0 + u)^k - v, s0 + u, 1), expanded."""
    s0 = Fraction(s0)
    s_poly: Poly = {(0, 0): s0, (1, 0): Fraction(1)} if s0 else {(1, 0): Fraction(1)}
    t_poly = _ppow(s_poly, k)
    t_poly[(0, 1)] = t_poly.get((0, 1), 0) - 1
    out = []
    bound = k * basis.d + basis.e
    for _, be, ga, _ in basis.monomials:
        g = _pmul(_ppow(t_poly, be), _ppow(s_poly, ga))
        if poly_degree(g) > bound:
            raise AssertionError(f"degree {poly_degree(g)} exceeds k*d + e = {bound}")
        out.append(g)
    return out


# -- monomial product bound ---------------------------------------------------


@dataclass(frozen=True)
class DetBoundReport:
    M: float
    V: float
    H: int
    exact_log_product: float
    asymptotic_value: float
    log_W: float
    exponents: tuple[tuple[int, int], ...] = field(repr=False, default=())


def monomial_product_bound(M: float, V: float, H: int) -> DetBoundReport:
    """log of the product of the H largest M^-j V^-l, against its asymptotic form.

    Monomials are taken in increasing order of j*log M + l*log V, ties broken
    by smaller j.
    """
    if H < 1:
        raise ValueError("H must be positive")
    if M <= 1 or V <= 1:
        raise ValueError("M and V must exceed 1")
    lm, lv = math.log(M), math.log(V)
    heap = [(0.0, 0, 0)]
    seen = {(0, 0)}
    chosen = []
    while len(chosen) < H:
        cost, j, l = heapq.heappop(heap)
        chosen.append((j, l, cost))
        for nj, nl in ((j + 1, l), (j, l + 1)):
            if (nj, nl) not in seen:
                seen.add((nj, nl))
                heapq.heappush(heap, (nj * lm + nl * lv, nj, nl))
    exact = -math.fsum(c for _, _, c in chosen)
    asym = -(2 * math.sqrt(2) / 3) * H**1.5 * math.sqrt(lm * lv)
    return DetBoundReport(M, V, H, exact, asym, chosen[-1][2], tuple((j, l) for j, l, _ in chosen))


def t_set(M: float, V: float, log_W: float) -> list[tuple[int, int]]:
    """All (j, l) >= 0 with j log M + l log V <= log W."""
    lm, lv = math.log(M), math.log(V)
    out = []
    j = 0
    while j * lm <= log_W:
        l = 0
        while j * lm + l * lv <= log_W:
            out.append((j, l))
            l += 1
        j += 1
    return out


# -- parameters for a box --------------------------------------------------


def _exact_log_ratio(value: Fraction, Z: int) -> Optional[Fraction]:
    """p/q with value^q == Z^p exactly, if such a ratio with small q exists."""
    if Z < 2 or value <= 0:
        return None
    guess = Fraction(math.log(value.numerator) - math.log(value.denominator)) / math.log(Z)
    r = Fraction(guess).limit_denominator(64)
    p, q = r.numerator, r.denominator
    lhs = value**q
    rhs = Fraction(Z) ** p
    return r if lhs == rhs else None


@dataclass(frozen=True)
class BoxAnalysis:
    X: Fraction
    Y: Fraction
    Z: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "X", Fraction(self.X))
        object.__setattr__(self, "Y", Fraction(self.Y))

    @classmethod
    def of(cls, box: Box) -> "BoxAnalysis":
        return cls(box.X, box.Y, box.Z, box.k)

    @property
    def A(self) -> Fraction:
        return self.Z / self.X**self.k

    @property
    def B(self) -> Fraction:
        return self.Z / self.Y**self.k

    @property
    def V(self) -> Fraction:
        return self.A * self.Y**self.k

    @property
    def alpha(self) -> Union[Fraction, float]:
        r = _exact_log_ratio(self.X, self.Z)
        return r if r is not None else _flog(self.X) / math.log(self.Z)

    @property
    def beta(self) -> Union[Fraction, float]:
        r = _exact_log_ratio(self.Y, self.Z)
        return r if r is not None else _flog(self.Y) / math.log(self.Z)


def _flog(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def choose_degrees(analysis: BoxAnalysis, d: int) -> tuple[int, int]:
    """e = floor(d log A / log Y), clamped at 0, decided by exact power comparison."""
    A, Y = analysis.A, analysis.Y
    if Y <= 1:
        raise ValueError("choose_degrees needs Y > 1")
    if A <= 1 or d == 0:
        return d, 0
    # largest e with Y^e <= A^d
    e = max(0, math.floor(d * _flog(A) / _flog(Y)))
    target = A**d
    while e > 0 and Y**e > target:
        e -= 1
    while Y ** (e + 1) <= target:
        e += 1
    return d, e


class MChoice(NamedTuple):
    M: int
    clamped: bool
    log_lower_bound: float


def _ceil_power(Z: int, r: Fraction) -> int:
    """Smallest integer m with m >= Z^r, for rational r >= 0."""
    p, q = r.numerator, r.denominator
    target = Z**p
    m = iroot(target, q)
    return m if m**q == target else m + 1


def _mpf(q) -> mpmath.mpf:
    q = Fraction(q)
    return mpmath.mpf(q.numerator) / q.denominator


def choose_M(analysis: BoxAnalysis, k: int, delta) -> MChoice:
    """Smallest integer M >= max(Z^{(9/2)(1+delta)(1-k*alpha)*beta}, Y), clamped at Z.

    The clamp flag is raised when the lower bound is not strictly below Z,
    i.e. when the upper constraint log M <= log Z cannot be met with room.
    """
    Z = analysis.Z
    if Z < 2:
        raise ValueError("choose_M needs Z >= 2")
    delta = Fraction(delta) if not isinstance(delta, float) else delta
    alpha, beta = analysis.alpha, analysis.beta
    y_part = math.ceil(analysis.Y)
    if all(isinstance(v, Fraction) for v in (alpha, beta, delta)):
        expo = Fraction(9, 2) * (1 + delta) * (1 - k * alpha) * beta
        if expo <= 0:
            first = 1
        else:
            first = _ceil_power(Z, expo)
        lower = float(expo) * math.log(Z)
        hits_top = expo >= 1 or analysis.Y >= Z
    else:
        with mpmath.workdps(50):
            logA = mpmath.log(analysis.A.numerator) - mpmath.log(analysis.A.denominator)
            logY = mpmath.log(analysis.Y.numerator) - mpmath.log(analysis.Y.denominator)
            lg = mpmath.mpf(4.5) * (1 + _mpf(delta)) * logA * logY / mpmath.log(Z)
            first = int(mpmath.ceil(mpmath.exp(lg))) if lg > 0 else 1
            lower = float(lg)
            hits_top = lg >= mpmath.log(Z) or analysis.Y >= Z
    M = max(first, y_part)
    return MChoice(min(M, Z), bool(hits_top), max(lower, _flog(analysis.Y)))
