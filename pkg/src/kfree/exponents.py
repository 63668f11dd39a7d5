"""Exact maximisation of the exponent functions over the triangle T_w.

With u = k*alpha, v = k*beta, w = k*phi the admissible region is
u <= v <= 1, u + v >= w, a triangle with vertices (w-1, 1), (1, 1),
(w/2, w/2) for 1 <= w <= 2.  Both objectives are bilinear in (u, v), so
on each edge they restrict to a quadratic in one parameter and the maximum
is found among endpoints, concave vertices of those quadratics, and interior
critical points (there are none in the region, which is checked rather than
assumed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class Bilinear:
    """c0 + cu*u + cv*v + cuv*u*v."""

    name: str
    c0: Fraction
    cu: Fraction
    cv: Fraction
    cuv: Fraction

    def __call__(self, u, v) -> Fraction:
        u, v = Fraction(u), Fraction(v)
        return self.c0 + self.cu * u + self.cv * v + self.cuv * u * v

    def gradient(self, u, v) -> Point:
        u, v = Fraction(u), Fraction(v)
        return (self.cu + self.cuv * v, self.cv + self.cuv * u)

    def critical_point(self) -> Union[Point, None]:
        if self.cuv == 0:
            return None
        return (-self.cv / self.cuv, -self.cu / self.cuv)


PHI = Bilinear("Phi", Fraction(0), Fraction(0), Fraction(9, 2), Fraction(-9, 2))
PSI = Bilinear("Psi", Fraction(0), Fraction(1), Fraction(9, 4), Fraction(-9, 4))
FAMILIES = {"phi": PHI, "psi": PSI}


def phi(u, v) -> Fraction:
    return PHI(u, v)


def psi(u, v) -> Fraction:
    return PSI(u, v)


@dataclass(frozen=True)
class RegionTw:
    w: Fraction
    vertices: tuple[Point, Point, Point]

    def contains(self, p: Point) -> bool:
        u, v = p
        return u <= v <= 1 and u + v >= self.w


@dataclass(frozen=True)
class MaxResult:
    which: str
    max_value: Fraction
    argmax: tuple[Point, ...]
    critical_points_in_region: tuple[Point, ...] = ()


def _check_w(w) -> Fraction:
    w = Fraction(w)
    if not 1 <= w <= 2:
        raise ValueError(f"w must lie in [1, 2], got {w}")
    return w


def region_vertices(w) -> list[Point]:
    w = _check_w(w)
    return [(w - 1, Fraction(1)), (Fraction(1), Fraction(1)), (w / 2, w / 2)]


def region(w) -> RegionTw:
    return RegionTw(_check_w(w), tuple(region_vertices(w)))


def _edge_candidates(f: Bilinear, p: Point, q: Point) -> list[Point]:
    """Maximiser candidates of f on the segment p -> q."""
    du, dv = q[0] - p[0], q[1] - p[1]
    # f(p + t(q - p)) = f(p) + b t + a t^2
    a = f.cuv * du * dv
    b = f.cu * du + f.cv * dv + f.cuv * (p[0] * dv + p[1] * du)
    out = [p, q]
    if a < 0:
        t = -b / (2 * a)
        if 0 < t < 1:
            out.append((p[0] + t * du, p[1] + t * dv))
    return out


def maximize_bilinear(which: Union[str, Bilinear], w) -> MaxResult:
    f = FAMILIES[which.lower()] if isinstance(which, str) else which
    reg = region(w)
    crit = f.critical_point()
    inside = (crit,) if crit is not None and reg.contains(crit) else ()
    cands = list(inside)
    verts = reg.vertices
    for i in range(3):
        cands.extend(_edge_candidates(f, verts[i], verts[(i + 1) % 3]))
    best = max(f(*c) for c in cands)
    argmax = tuple(sorted({c for c in cands if f(*c) == best}))
    return MaxResult(f.name, best, argmax, inside)


def grid_max(which: Union[str, Bilinear], w, n: int = 2000) -> float:
    """Oracle: max of f over an n x n grid of the bounding square, points in T_w only."""
    import numpy as np

    f = FAMILIES[which.lower()] if isinstance(which, str) else which
    w = float(_check_w(w))
    u = np.linspace(w - 1, 1, n)[:, None]
    v = np.linspace(w / 2, 1, n)[None, :]
    vals = float(f.c0) + float(f.cu) * u + float(f.cv) * v + float(f.cuv) * u * v
    mask = (u <= v) & (u + v >= w)
    return float(vals[mask].max())


@dataclass(frozen=True)
class ExponentRow:
    name: str
    value: Union[Fraction, float]


@dataclass(frozen=True)
class ExponentTable:
    k: int
    rows: tuple[ExponentRow, ...]
    new_is_smallest: bool
    # improvement over all previously known bounds is claimed only for k >= 6
    improves_literature: bool


def theorem_exponent(k: int) -> ExponentTable:
    if k < 2:
        raise ValueError("k must be at least 2")
    new = Fraction(14, 9 * k)
    rows = [ExponentRow("determinant method 14/(9k)", new), ExponentRow("trivial 2/(k+1)", Fraction(2, k + 1))]
    if k == 2:
        rows.append(ExponentRow("Heath-Brown square sieve 7/11", Fraction(7, 11)))
        rows.append(ExponentRow("Reuss omega(2)", 0.578))
    if k == 3:
        rows.append(ExponentRow("Reuss omega(3)", 0.391))
    smallest = all(new < r.value for r in rows[1:])
    return ExponentTable(k, tuple(rows), smallest, k >= 6)
