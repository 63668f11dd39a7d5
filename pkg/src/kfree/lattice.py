"""Interval covering of s = x/y and the lattices attached to each interval.

For I = (z/M, (z+1)/M] the lattice is scale * B * Z^2 with B = [[M, -z], [0, 1]]
and scale = 1/(2Y).  A lattice vector is therefore determined by its integer
coordinates (x, y), and all norms are compared through the integer Gram
matrix B^T B; square roots never appear except when L_i is rounded up to a
rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .dioph import Box, Quadruple, solutions_for_pair

# rational upper bound of 2*sqrt(2)/sqrt(3)
C_LAMBDA_UPPER = Fraction(329, 201)
# denominator used when rounding C_lambda/|g| up to a rational
_L_DENOM = 1 << 40


@dataclass(frozen=True)
class IntervalSpec:
    M: int
    z: int
    Y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "Y", Fraction(self.Y))
        if self.M < 1 or self.z < 1 or self.Y <= 0:
            raise ValueError("need M >= 1, z >= 1 and Y > 0")

    @property
    def s0(self) -> Fraction:
        return Fraction(self.z, self.M)

    def contains(self, x: int, y: int) -> bool:
        """Whether x/y lies in (z/M, (z+1)/M], for y > 0."""
        return self.z * y < self.M * x <= (self.z + 1) * y


@dataclass(frozen=True)
class ScaledLattice:
    M: int
    z: int
    scale: Fraction

    @property
    def basis(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.M, -self.z), (0, 1))

    @property
    def det(self) -> Fraction:
        return self.M * self.scale**2

    def gram(self) -> tuple[int, int, int]:
        """Integer Gram entries (G11, G12, G22) of the unscaled basis."""
        M, z = self.M, self.z
        return M * M, -M * z, z * z + 1

    def vector(self, coords) -> tuple[Fraction, Fraction]:
        x, y = coords
        return (self.scale * (self.M * x - self.z * y), self.scale * y)

    def norm2(self, coords) -> Fraction:
        u, v = self.vector(coords)
        return u * u + v * v


@dataclass(frozen=True)
class ReducedBasis:
    g1: tuple[Fraction, Fraction]
    g2: tuple[Fraction, Fraction]
    e1: tuple[int, int]
    e2: tuple[int, int]
    norm2_1: Fraction
    norm2_2: Fraction
    L1: Fraction
    L2: Fraction
    det: Fraction


def cover_intervals(X, Y, M: int) -> list[IntervalSpec]:
    """Intervals (z/M, (z+1)/M] partitioning a range containing (X/(2Y), 2X/Y]."""
    X, Y = Fraction(X), Fraction(Y)
    if M < 2 * Y / X:
        raise ValueError(f"M={M} is below 2Y/X={2 * Y / X}")
    z_lo = math.floor(M * X / (2 * Y))
    z_hi = math.ceil(2 * M * X / Y) - 1
    return [IntervalSpec(M, z, Y) for z in range(z_lo, z_hi + 1)]


def make_lattice(spec: IntervalSpec) -> ScaledLattice:
    return ScaledLattice(spec.M, spec.z, 1 / (2 * spec.Y))


def _canonical(c: tuple[int, int]) -> tuple[int, int]:
    return c if (c[0], c[1]) > (0, 0) else (-c[0], -c[1])


def _lagrange(g11: int, g12: int, g22: int):
    """Lagrange reduction on integer coordinates; returns (u, v) with |u| <= |v|."""
    u, v = (1, 0), (0, 1)

    def dot(p, q):
        return p[0] * q[0] * g11 + (p[0] * q[1] + p[1] * q[0]) * g12 + p[1] * q[1] * g22

    nu, nv = dot(u, u), dot(v, v)
    if nu > nv:
        u, v, nu, nv = v, u, nv, nu
    while True:
        num, den = dot(u, v), nu
        q = (2 * num + den) // (2 * den)  # nearest integer to num/den
        v = (v[0] - q * u[0], v[1] - q * u[1])
        nv = dot(v, v)
        if nv >= nu:
            return u, v, dot
        u, v, nu, nv = v, u, nv, nu


def gauss_reduce(lattice: ScaledLattice) -> ReducedBasis:
    """Shortest vector g1 and shortest vector g2 not parallel to it.

    After Lagrange reduction every vector attaining the first or second
    minimum is a combination c1*u + c2*v with |c_i| <= 1, so scanning a
    slightly larger window and picking by (norm, sign-normalised coordinates)
    gives a deterministic choice among ties.
    """
    u, v, dot = _lagrange(*lattice.gram())
    cands = {}
    for c1, c2 in product(range(-2, 3), repeat=2):
        if c1 == c2 == 0:
            continue
        w = _canonical((c1 * u[0] + c2 * v[0], c1 * u[1] + c2 * v[1]))
        cands[w] = dot(w, w)
    e1 = min(cands, key=lambda w: (cands[w], w))
    e2 = min(
        (w for w in cands if w[0] * e1[1] - w[1] * e1[0] != 0),
        key=lambda w: (cands[w], w),
    )
    if abs(e1[0] * e2[1] - e1[1] * e2[0]) != 1:
        raise ArithmeticError("reduced vectors do not form a basis")
    s2 = lattice.scale**2
    n1, n2 = s2 * cands[e1], s2 * cands[e2]
    return ReducedBasis(
        g1=lattice.vector(e1),
        g2=lattice.vector(e2),
        e1=e1,
        e2=e2,
        norm2_1=n1,
        norm2_2=n2,
        L1=_box_bound(n1),
        L2=_box_bound(n2),
        det=lattice.det,
    )


def _box_bound(norm2: Fraction) -> Fraction:
    """Rational upper bound of (2*sqrt(2)/sqrt(3)) / sqrt(norm2)."""
    # sqrt(8/(3*norm2)) rounded up at denominator 2^40
    n = -(-8 * _L_DENOM**2 * norm2.denominator // (3 * norm2.numerator))
    r = math.isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, _L_DENOM)


def compute_Li(basis: ReducedBasis) -> tuple[Fraction, Fraction]:
    return basis.L1, basis.L2


def to_lambda(point, basis: ReducedBasis) -> tuple[int, int]:
    """Integer (l1, l2) with (x, y) = l1*e1 + l2*e2; accepts a Quadruple or (x, y)."""
    if isinstance(point, Quadruple):
        x, y = point.x, point.y
    else:
        x, y = point
    (a, c), (b, d) = basis.e1, basis.e2
    D = a * d - b * c
    return ((x * d - y * b) * D, (a * y - c * x) * D)


def dyadic_anchor(Y, M: int) -> Fraction:
    """Largest power of two (possibly fractional) not exceeding Y/(2*sqrt(M))."""
    Y = Fraction(Y)
    # 2^e <= Y/(2 sqrt M)  <=>  4^e * 4M <= Y^2
    e = math.floor(math.log2(float(Y)) - 1 - 0.5 * math.log2(M))
    p = Fraction(2) ** e
    while p * p * 4 * M > Y * Y:
        p /= 2
    while (2 * p) ** 2 * 4 * M <= Y * Y:
        p *= 2
    return p


def dyadic_bucket(L: Fraction, anchor: Fraction) -> Fraction:
    b = anchor
    while b > L:
        b /= 2
    while 2 * b <= L:
        b *= 2
    return b


def interval_bases(X, Y, M: int):
    """Yield (spec, reduced basis) for every interval of the cover."""
    for spec in cover_intervals(X, Y, M):
        yield spec, gauss_reduce(make_lattice(spec))


def shortest_histogram(X, Y, M: int) -> dict[Fraction, int]:
    """Number of cover intervals with L1 in each dyadic bucket [L, 2L)."""
    anchor = dyadic_anchor(Y, M)
    hist: dict[Fraction, int] = {}
    for _, basis in interval_bases(X, Y, M):
        b = dyadic_bucket(basis.L1, anchor)
        hist[b] = hist.get(b, 0) + 1
    return dict(sorted(hist.items()))


def interval_solutions(spec: IntervalSpec, box: Box, basis: ReducedBasis) -> list[Quadruple]:
    """Box solutions with x/y in the interval, found through lambda coordinates.

    Every such solution has |y| <= 2Y and |x - s0*y| <= 2Y/M, so its lattice
    vector lies in [-1, 1]^2 and |lambda_i| <= L_i; scanning that lambda box
    therefore misses nothing.
    """
    n1, n2 = math.floor(basis.L1), math.floor(basis.L2)
    l1 = np.arange(-n1, n1 + 1, dtype=np.int64)[:, None]
    l2 = np.arange(-n2, n2 + 1, dtype=np.int64)[None, :]
    x = (l1 * basis.e1[0] + l2 * basis.e2[0]).ravel()
    y = (l1 * basis.e1[1] + l2 * basis.e2[1]).ravel()
    xr, yr = box.x_range(), box.y_range()
    keep = (x >= xr.start) & (x < xr.stop) & (y >= yr.start) & (y < yr.stop)
    keep &= (spec.z * y < spec.M * x) & (spec.M * x <= (spec.z + 1) * y)
    x, y = x[keep], y[keep]
    keep = np.gcd(x, y) == 1
    out = []
    for xi, yi in zip(x[keep].tolist(), y[keep].tolist()):
        out.extend(solutions_for_pair(xi, yi, box))
    return sorted(out)


def count_NI(spec: IntervalSpec, box: Box, basis: ReducedBasis) -> int:
    return len(interval_solutions(spec, box, basis))
