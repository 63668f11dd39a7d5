"""Exact counting for a*x^k - b*y^k = sign inside dyadic boxes.

For a coprime pair (x, y) the admissible a form one residue class modulo
y^k, namely a = sign * (x^k)^-1 (mod y^k), so solutions are enumerated by
walking that arithmetic progression over the window a*x^k in (Z+sign, 2Z+sign].
Python integers are unbounded, so no overflow handling is needed for the
modular inverse or the moduli (x*y)^k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .sieve import moebius, moebius_table


def iroot(n: int, k: int) -> int:
    """Largest r >= 0 with r^k <= n."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    # Newton iteration from an upper bound; exact on arbitrary-size integers
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            return r
        r = nxt


@dataclass(frozen=True)
class Box:
    """x in (X, 2X], y in (Y, 2Y], b*y^k in (Z, 2Z] for a*x^k - b*y^k = sign."""

    X: Fraction
    Y: Fraction
    Z: int
    k: int
    sign: int = 1

    def __post_init__(self):
        object.__setattr__(self, "X", Fraction(self.X))
        object.__setattr__(self, "Y", Fraction(self.Y))
        if self.X <= 0 or self.Y <= 0:
            raise ValueError("box sides must be positive")
        if self.Z < 1 or self.k < 2:
            raise ValueError("need Z >= 1 and k >= 2")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def x_range(self) -> range:
        return range(math.floor(self.X) + 1, math.floor(2 * self.X) + 1)

    def y_range(self) -> range:
        return range(math.floor(self.Y) + 1, math.floor(2 * self.Y) + 1)

    def swapped(self) -> "Box":
        """The mirrored box: roles of (a, x) and (b, y) exchanged, sign flipped."""
        return Box(self.Y, self.X, self.Z, self.k, -self.sign)


@dataclass(frozen=True, order=True)
class Quadruple:
    # field order gives the (x, y, a) sort used for all outputs
    x: int
    y: int
    a: int
    b: int
    sign: int = 1

    @property
    def s(self) -> Fraction:
        return Fraction(self.x, self.y)

    @property
    def t(self) -> Fraction:
        return Fraction(self.b, self.a)

    def v(self, k: int) -> Fraction:
        # signed so that t = s^k - v holds for both equations
        return Fraction(self.sign, self.a * self.y**k)

    def residual(self, k: int) -> int:
        return self.a * self.x**k - self.b * self.y**k


def exact_M(x: int, y: int, Z: int, k: int) -> int:
    """Number of n in (Z, 2Z] with x^k | n + 1 and y^k | n."""
    if x < 1 or y < 1:
        raise ValueError("x and y must be positive")
    if math.gcd(x, y) > 1:
        return 0
    xk, yk = x**k, y**k
    if xk > 2 * Z + 1 or yk > 2 * Z:
        return 0
    # n = yk*t with yk*t = -1 (mod xk)
    r = yk * ((-pow(yk, -1, xk)) % xk) if xk > 1 else 0
    m = xk * yk
    return (2 * Z - r) // m - (Z - r) // m


def solutions_for_pair(x: int, y: int, box: Box) -> Iterator[Quadruple]:
    """All (a, b) completing the coprime pair (x, y) to a solution in `box`."""
    k, Z, sign = box.k, box.Z, box.sign
    xk, yk = x**k, y**k
    if yk > 2 * Z:
        return
    a0 = (sign * pow(xk, -1, yk)) % yk if yk > 1 else 0
    a_lo = max((Z + sign) // xk + 1, 1)
    a_hi = (2 * Z + sign) // xk
    a = a_lo + (a0 - a_lo) % yk
    while a <= a_hi:
        b = (a * xk - sign) // yk
        if b >= 1:
            yield Quadruple(x, y, a, b, sign)
        a += yk


def enumerate_solutions(box: Box) -> list[Quadruple]:
    out = []
    for x in box.x_range():
        for y in box.y_range():
            if y**box.k > 2 * box.Z:
                break
            if math.gcd(x, y) == 1:
                out.extend(solutions_for_pair(x, y, box))
    return out


def count_N(box: Box) -> int:
    return len(enumerate_solutions(box))


def brute_force_solutions(box: Box) -> list[Quadruple]:
    """Oracle: scan every (x, y, a) in range and test the equation directly."""
    k, Z, sign = box.k, box.Z, box.sign
    out = []
    for x in box.x_range():
        xk = x**k
        if xk > 2 * Z + 1:
            break
        # a*x^k = b*y^k + sign <= 2Z + 1, which also keeps a*x^k inside int64
        a = np.arange(1, (2 * Z + 1) // xk + 1, dtype=np.int64)
        num = a * xk - sign
        for y in box.y_range():
            yk = y**k
            if yk > 2 * Z:
                break
            b, rem = np.divmod(num, yk)
            hit = (rem == 0) & (b >= 1) & (b * yk > Z) & (b * yk <= 2 * Z)
            for i in np.flatnonzero(hit).tolist():
                out.append(Quadruple(x, y, int(a[i]), int(b[i]), sign))
    return sorted(out)


def dyadic_boxes(P, Z: int, k: int) -> list[Box]:
    """Dyadic boxes covering every (x, y) with x*y > P, x^k <= 2Z+1, y^k <= 2Z.

    X and Y run over 2^j / 2 (j >= 0), so (X, 2X] partitions the positive
    integers; a box is kept when it meets the capped region above x*y = P.
    """
    P = Fraction(P)
    if P <= 0:
        raise ValueError("P must be positive")
    xmax, ymax = iroot(2 * Z + 1, k), iroot(2 * Z, k)
    sides_x = _dyadic_sides(xmax)
    sides_y = _dyadic_sides(ymax)
    boxes = []
    for X in sides_x:
        top_x = min(math.floor(2 * X), xmax)
        for Y in sides_y:
            if top_x * min(math.floor(2 * Y), ymax) > P:
                boxes.append(Box(X, Y, Z, k))
    return boxes


def _dyadic_sides(cap: int) -> list[Fraction]:
    sides = []
    X = Fraction(1, 2)
    while math.floor(X) + 1 <= cap:
        sides.append(X)
        X *= 2
    return sides


def box_tail_contribution(box: Box, P) -> int:
    """sum mu(x) mu(y) M(x, y, Z) over the box pairs with x*y > P (capped region)."""
    P = Fraction(P)
    Z, k = box.Z, box.k
    xmax, ymax = iroot(2 * Z + 1, k), iroot(2 * Z, k)
    total = 0
    for x in box.x_range():
        if x > xmax:
            break
        mx = moebius(x)
        if not mx:
            continue
        for y in box.y_range():
            if y > ymax:
                break
            if x * y > P:
                my = moebius(y)
                if my:
                    total += mx * my * exact_M(x, y, Z, k)
    return total


@lru_cache(maxsize=16)
def _pair_table(xmax: int, ymax: int, k: int):
    """Residues r, moduli (xy)^k and weights mu(x)mu(y) for coprime squarefree pairs."""
    mu = moebius_table(max(xmax, ymax, 1))
    rs, ms, ws = [], [], []
    for x in range(1, xmax + 1):
        if not mu[x]:
            continue
        xk = x**k
        for y in range(1, ymax + 1):
            if not mu[y] or math.gcd(x, y) > 1:
                continue
            yk = y**k
            rs.append(yk * ((-pow(yk, -1, xk)) % xk) if xk > 1 else 0)
            ms.append(xk * yk)
            ws.append(int(mu[x]) * int(mu[y]))
    if ms and max(ms) >= 1 << 62:
        return None
    return np.array(rs, dtype=np.int64), np.array(ms, dtype=np.int64), np.array(ws, dtype=np.int64)


def inclusion_exclusion_Astar(Z: int, k: int) -> int:
    """sum_{x,y} mu(x) mu(y) M(x, y, Z) over x^k <= 2Z+1, y^k <= 2Z."""
    xmax, ymax = iroot(2 * Z + 1, k), iroot(2 * Z, k)
    table = _pair_table(xmax, ymax, k)
    if table is None:
        return sum(
            moebius(x) * moebius(y) * exact_M(x, y, Z, k)
            for x in range(1, xmax + 1)
            for y in range(1, ymax + 1)
        )
    r, m, w = table
    counts = (2 * Z - r) // m - (Z - r) // m
    return int(np.dot(w, counts))


def main_term(P, Z: int, k: int) -> int:
    """sum mu(x) mu(y) M(x, y, Z) over coprime x*y <= P (an exact integer)."""
    P = Fraction(P)
    if P <= 0:
        raise ValueError("P must be positive")
    xmax, ymax = iroot(2 * Z + 1, k), iroot(2 * Z, k)
    total = 0
    for x in range(1, min(math.floor(P), xmax) + 1):
        mx = moebius(x)
        if not mx:
            continue
        for y in range(1, min(math.floor(P / x), ymax) + 1):
            my = moebius(y)
            if my and math.gcd(x, y) == 1:
                total += mx * my * exact_M(x, y, Z, k)
    return total
