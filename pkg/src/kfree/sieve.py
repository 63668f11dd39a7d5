"""Segmented sieve for k-free integers and the pair counts A_k(Z), A*_k(Z).

A segment [lo, hi) is represented by a boolean array whose entry i says
whether lo + i is k-free.  Only primes p with p^k < hi are needed to strike
the non-k-free entries, so the prime table is tiny compared to the range.

Pair counts are accumulated segment by segment.  Every segment is sieved one
element past its right end so the pair (n, n + 1) straddling a boundary is
evaluated inside the segment owning n; segments are therefore independent and
can be processed in any order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_SEGMENT_SIZE = 1 << 22
MAX_SEGMENT_SIZE = 1 << 28
# 2Z + 1 must stay below this so every p^k and index fits in a signed 64-bit word.
INPUT_LIMIT = 1 << 63


@dataclass(frozen=True)
class SieveSegment:
    lo: int
    hi: int
    k: int
    flags: np.ndarray

    def __len__(self) -> int:
        return self.hi - self.lo

    def kfree_values(self) -> np.ndarray:
        return self.lo + np.flatnonzero(self.flags)


@dataclass(frozen=True)
class PairCount:
    Z: int
    k: int
    count: int

    def __int__(self) -> int:
        return self.count


def _check_k(k: int) -> None:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")


def _check_Z(Z: int) -> None:
    if Z < 1:
        raise ValueError(f"Z must be positive, got {Z}")
    if 2 * Z + 1 >= INPUT_LIMIT:
        raise OverflowError(f"Z={Z} too large: 2Z+1 must be below 2^63")


@lru_cache(maxsize=8)
def _primes_cached(n: int) -> np.ndarray:
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    primes = np.flatnonzero(sieve).astype(np.int64)
    primes.setflags(write=False)
    return primes


def primes_upto(n: int) -> np.ndarray:
    """All primes p <= n as an int64 array (cached for repeated calls)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    # round up so nearby requests share one cached table
    size = 1 << max(10, (n - 1).bit_length())
    primes = _primes_cached(size)
    return primes[: np.searchsorted(primes, n, side="right")]


def kth_powers_below(limit: int, k: int) -> list[int]:
    """p^k for every prime p with p^k < limit, ascending."""
    root = math.isqrt(limit) if k == 2 else int(round(limit ** (1.0 / k))) + 1
    out = []
    for p in primes_upto(root + 1).tolist():
        q = p**k
        if q >= limit:
            break
        out.append(q)
    return out


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for n >= 1")
    sign = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            sign = -sign
        p += 1 if p == 2 else 2
    if n > 1:
        sign = -sign
    return sign


def is_kfree(n: int, k: int) -> bool:
    """True iff no prime power p^k divides n (trial division)."""
    _check_k(k)
    if n < 1:
        raise ValueError("is_kfree is defined for n >= 1")
    p = 2
    while p**k <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e >= k:
                return False
        p += 1 if p == 2 else 2
    return True


def _strike(flags: np.ndarray, lo: int, hi: int, powers: list[int]) -> None:
    flags[:] = True
    for q in powers:
        if q >= hi:
            break
        flags[(-lo) % q :: q] = False


def sieve_segment(lo: int, hi: int, k: int, max_size: int = MAX_SEGMENT_SIZE) -> SieveSegment:
    _check_k(k)
    if not 1 <= lo < hi:
        raise ValueError(f"need 1 <= lo < hi, got lo={lo}, hi={hi}")
    if hi - lo > max_size:
        raise ValueError(f"segment length {hi - lo} exceeds configured maximum {max_size}")
    if hi >= INPUT_LIMIT:
        raise OverflowError("segment end must be below 2^63")
    flags = np.empty(hi - lo, dtype=bool)
    _strike(flags, lo, hi, kth_powers_below(hi, k))
    return SieveSegment(lo, hi, k, flags)


def _segments(start: int, stop: int, size: int):
    lo = start
    while lo < stop:
        hi = min(lo + size, stop)
        yield lo, hi
        lo = hi


def _run(func, jobs, threads: int):
    if threads <= 1:
        return sum(func(lo, hi) for lo, hi in jobs)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(lambda job: func(*job), jobs))


def count_kfree(Z: int, k: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> int:
    """Number of k-free n <= Z."""
    _check_k(k)
    _check_Z(Z)
    powers = kth_powers_below(Z + 1, k)

    def work(lo: int, hi: int) -> int:
        flags = np.empty(hi - lo, dtype=bool)
        _strike(flags, lo, hi, powers)
        return int(np.count_nonzero(flags))

    return _run(work, list(_segments(1, Z + 1, segment_size)), threads)


def count_consecutive_kfree(
    Z: int, k: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1
) -> PairCount:
    """A_k(Z): the number of n <= Z with both n and n + 1 k-free."""
    _check_k(k)
    _check_Z(Z)
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    # n + 1 reaches Z + 1, so strike with every p^k <= Z + 1
    powers = kth_powers_below(Z + 2, k)

    def work(lo: int, hi: int) -> int:
        # sieve [lo, hi] inclusive: one element of overlap with the next segment
        flags = np.empty(hi - lo + 1, dtype=bool)
        _strike(flags, lo, hi + 1, powers)
        return int(np.count_nonzero(flags[:-1] & flags[1:]))

    count = _run(work, list(_segments(1, Z + 1, segment_size)), threads)
    return PairCount(Z, k, count)


def count_star(Z: int, k: int, segment_size: int = DEFAULT_SEGMENT_SIZE, threads: int = 1) -> int:
    """A*_k(Z) = A_k(2Z) - A_k(Z)."""
    _check_Z(Z)
    big = count_consecutive_kfree(2 * Z, k, segment_size, threads).count
    return big - count_consecutive_kfree(Z, k, segment_size, threads).count


def pair_prefix_counts(Z_max: int, k: int) -> np.ndarray:
    """Array P with P[Z] = A_k(Z) for 0 <= Z <= Z_max (P[0] = 0), one sieve pass."""
    _check_k(k)
    _check_Z(Z_max)
    flags = np.empty(Z_max + 1, dtype=bool)
    _strike(flags, 1, Z_max + 2, kth_powers_below(Z_max + 2, k))
    out = np.zeros(Z_max + 1, dtype=np.int64)
    np.cumsum(flags[:-1] & flags[1:], out=out[1:])
    return out


def moebius_table(n: int) -> np.ndarray:
    """mu[0..n] as int8 (mu[0] = 0) via a linear pass over the primes."""
    mu = np.ones(n + 1, dtype=np.int8)
    mu[0] = 0
    for p in primes_upto(n).tolist():
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    return mu


def divisor_count_table(n: int) -> np.ndarray:
    """d[0..n], the number of divisors (d[0] = 0)."""
    d = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        d[i::i] += 1
    return d


def consecutive_counts_at(Zs, k: int, segment_size: int = DEFAULT_SEGMENT_SIZE) -> list[int]:
    """A_k(Z) for every Z in `Zs` from a single segmented pass up to max(Zs)."""
    _check_k(k)
    order = sorted(set(int(Z) for Z in Zs))
    if not order:
        return []
    for Z in order:
        _check_Z(Z)
    top = order[-1]
    powers = kth_powers_below(top + 2, k)
    found: dict[int, int] = {}
    running = 0
    idx = 0
    for lo, hi in _segments(1, top + 1, segment_size):
        flags = np.empty(hi - lo + 1, dtype=bool)
        _strike(flags, lo, hi + 1, powers)
        pairs = flags[:-1] & flags[1:]
        while idx < len(order) and order[idx] < hi:
            found[order[idx]] = running + int(np.count_nonzero(pairs[: order[idx] - lo + 1]))
            idx += 1
        running += int(np.count_nonzero(pairs))
    return [found[int(Z)] for Z in Zs]
