"""Rigorous decimal enclosures of c_k = prod_p (1 - 2/p^k) and zeta(k).

Every operation is evaluated twice, once in a context rounding toward -inf
and once toward +inf, so the returned interval contains the exact value
regardless of the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Context, Decimal

from .sieve import divisor_count_table, moebius_table, primes_upto

DEFAULT_DIGITS = 50


@dataclass(frozen=True)
class Enclosure:
    lower: Decimal
    upper: Decimal
    cutoff: int

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"empty enclosure [{self.lower}, {self.upper}]")

    @property
    def width(self) -> Decimal:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Decimal:
        return (self.lower + self.upper) / 2

    def __contains__(self, value) -> bool:
        return self.lower <= Decimal(value) <= self.upper

    def distance(self, value) -> Decimal:
        value = Decimal(value)
        if value < self.lower:
            return self.lower - value
        if value > self.upper:
            return value - self.upper
        return Decimal(0)


def _contexts(digits: int) -> tuple[Context, Context]:
    if digits < 40:
        raise ValueError("at least 40 digits are required")
    return Context(prec=digits, rounding=ROUND_FLOOR), Context(prec=digits, rounding=ROUND_CEILING)


def euler_product_ck(k: int, P: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Enclose c_k using the primes p <= P and the tail bound 2/((k-1) P^(k-1))."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if P < 1:
        raise ValueError("cutoff P must be positive")
    dn, up = _contexts(digits)
    two = Decimal(2)
    lo = hi = Decimal(1)
    for p in primes_upto(P).tolist():
        pk = Decimal(p**k)
        # 1 - 2/p^k lies in [1/2, 1), so products of the directed factors stay ordered
        lo = dn.multiply(lo, dn.subtract(1, up.divide(two, pk)))
        hi = up.multiply(hi, up.subtract(1, dn.divide(two, pk)))
    tail = up.divide(two, Decimal((k - 1) * P ** (k - 1)))
    lo = max(Decimal(0), dn.multiply(lo, dn.subtract(1, tail)))
    return Enclosure(lo, hi, P)


def zeta_enclosure(k: int, N: int, digits: int = DEFAULT_DIGITS) -> Enclosure:
    """Enclose zeta(k) by sum_{n<=N} n^-k plus integral bounds on the tail."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if N < 1:
        raise ValueError("N must be positive")
    dn, up = _contexts(digits)
    lo = hi = Decimal(0)
    for n in range(1, N + 1):
        nk = Decimal(n**k)
        lo = dn.add(lo, dn.divide(1, nk))
        hi = up.add(hi, up.divide(1, nk))
    # (N+1)^(1-k)/(k-1) <= sum_{n>N} n^-k <= N^(1-k)/(k-1)
    lo = dn.add(lo, dn.divide(1, Decimal((k - 1) * (N + 1) ** (k - 1))))
    hi = up.add(hi, up.divide(1, Decimal((k - 1) * N ** (k - 1))))
    return Enclosure(lo, hi, N)


def dirichlet_partial(k: int, N: int, digits: int = DEFAULT_DIGITS) -> Decimal:
    """sum_{n<=N} mu(n) d(n) / n^k, rounded to `digits` significant digits."""
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    ctx = Context(prec=digits + 10, rounding=ROUND_HALF_EVEN)
    mu = moebius_table(N)
    d = divisor_count_table(N)
    total = Decimal(0)
    for n in range(1, N + 1):
        m = int(mu[n])
        if m:
            total = ctx.add(total, ctx.divide(m * int(d[n]), Decimal(n**k)))
    return Context(prec=digits).plus(total)
