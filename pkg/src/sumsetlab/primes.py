"""Prime sieving helpers."""
from __future__ import annotations

import math

from .errors import NoPrimeInInterval, PreconditionError

_CHUNK = 1 << 16


def primes_upto(n: int) -> list[int]:
    """Sieve of Eratosthenes: all primes <= n."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for q in range(2, math.isqrt(n) + 1):
        if sieve[q]:
            sieve[q * q::q] = bytes(len(range(q * q, n + 1, q)))
    return [i for i, v in enumerate(sieve) if v]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    return all(n % q for q in primes_upto(math.isqrt(n)))


def smallest_prime_in(lo: int, hi: int) -> int:
    """Least prime p with lo < p < hi, found by a segmented sieve."""
    if lo >= hi:
        raise PreconditionError(f"empty interval ({lo}, {hi})")
    start = max(lo + 1, 2)
    base = primes_upto(math.isqrt(max(hi - 1, 0)))
    while start < hi:
        stop = min(start + _CHUNK, hi)  # window [start, stop)
        seg = bytearray([1]) * (stop - start)
        for q in base:
            first = max(q * q, -(-start // q) * q)
            if first >= stop:
                continue
            seg[first - start::q] = bytes(len(range(first, stop, q)))
        for i, v in enumerate(seg):
            if v:
                return start + i
        start = stop
    raise NoPrimeInInterval(f"no prime strictly between {lo} and {hi}")
