"""Segmented sieve kernels.

Every integer in a window ``[start, start + length)`` gets its least prime
factor, its number of prime factors counted with multiplicity (Omega), its
Liouville value and a primality flag.  Windows are sieved with the primes up
to the square root of the window end; whatever cofactor survives division by
those primes is itself prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .config import MAX_INT, SEGMENT_LENGTH, check_allocation
from .errors import InputError, PreconditionError

__all__ = [
    "FactorSegment",
    "sieve_primes",
    "factor_segment",
    "iter_segments",
    "least_prime_factor_exceeds",
    "liouville_values",
    "mobius_up_to",
    "iter_prime_blocks",
]

# Base primes up to this bound are sieved in one piece and kept; beyond it
# they are streamed block by block (needed only for windows near 2^63).
BASE_PRIME_LIMIT = 1 << 26
PRIME_BLOCK = 1 << 24


@lru_cache(maxsize=8)
def _sieve_cached(limit: int) -> np.ndarray:
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if is_p[p]:
            is_p[p * p :: 2 * p] = False
    primes = np.flatnonzero(is_p).astype(np.int64)
    primes.setflags(write=False)
    return primes


def sieve_primes(limit: int) -> np.ndarray:
    """Return the primes ``<= limit`` in ascending order (read-only int64 array)."""
    limit = int(limit)
    if limit < 0:
        raise InputError(f"limit must be >= 0, got {limit}")
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    # bool sieve plus the int64 prime list (~ limit / log limit entries)
    check_allocation(limit + 1 + 8 * int(1.3 * limit / math.log(limit)) + 64, "prime sieve")
    return _sieve_cached(limit)


@dataclass(frozen=True)
class FactorSegment:
    """Per-integer multiplicative data for ``start <= n < start + length``.

    Arrays are read-only and indexed by ``n - start``.
    """

    start: int
    length: int
    lpf: np.ndarray
    big_omega: np.ndarray
    lam: np.ndarray
    is_prime: np.ndarray
    base_primes: np.ndarray
    # index -> streamed primes above BASE_PRIME_LIMIT dividing start + index
    large_factors: dict = field(default_factory=dict, repr=False)

    @property
    def stop(self) -> int:
        return self.start + self.length

    def __contains__(self, n: int) -> bool:
        return self.start <= n < self.stop

    def _idx(self, n: int) -> int:
        if not self.start <= n < self.stop:
            raise PreconditionError(
                f"{n} outside factored window [{self.start}, {self.stop})"
            )
        return n - self.start

    def least_prime_factor(self, n: int) -> int:
        return int(self.lpf[self._idx(n)])

    def liouville(self, n: int) -> int:
        return int(self.lam[self._idx(n)])

    def omega(self, n: int) -> int:
        return int(self.big_omega[self._idx(n)])

    def factorize(self, n: int) -> list[tuple[int, int]]:
        """Prime factorization ``[(p, e), ...]`` of ``n`` starting from its lpf.

        The cofactor left after removing the least prime factor is finished by
        trial division with the segment's base primes, which reach the square
        root of every integer in the window.
        """
        if n == 1:
            return []
        p = self.least_prime_factor(n)
        out: list[tuple[int, int]] = []
        m = n
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        out.append((p, e))
        if m == 1:
            return out
        i = int(np.searchsorted(self.base_primes, p, side="right"))
        for q in self.base_primes[i:]:
            q = int(q)
            if q * q > m:
                break
            if m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        for q in self.large_factors.get(n - self.start, ()):
            if q > p and m % q == 0:
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                out.append((q, e))
        if m > 1:
            out.append((m, 1))
        return out

    def distinct_prime_factors(self, n: int) -> list[int]:
        return [p for p, _ in self.factorize(n)]


def factor_segment(start: int, length: int) -> FactorSegment:
    """Sieve ``[start, start + length)`` and return its :class:`FactorSegment`."""
    start, length = int(start), int(length)
    if start < 2:
        raise InputError(f"start must be >= 2, got {start}")
    if length < 1:
        raise InputError(f"length must be >= 1, got {length}")
    stop = start + length
    if stop - 1 > MAX_INT:
        raise InputError(f"window end {stop - 1} exceeds int64 range")
    # n, rem, lpf (int64) + omega (int16) + lam (int8) + is_prime (bool)
    check_allocation(length * 28, "factor segment")

    root = math.isqrt(stop - 1)
    base = sieve_primes(min(root, BASE_PRIME_LIMIT))
    n = np.arange(start, stop, dtype=np.int64)
    rem = n.copy()
    lpf = np.zeros(length, dtype=np.int64)
    omega = np.zeros(length, dtype=np.int16)

    def mark(p: int) -> None:
        first = (-start) % p
        if first >= length:
            return
        view = lpf[first::p]
        view[view == 0] = p
        pk = p
        while pk <= stop - 1:
            first = (-start) % pk
            if first >= length:
                break
            rem[first::pk] //= p
            omega[first::pk] += 1
            pk *= p

    for p in base.tolist():
        mark(p)

    large: dict[int, list[int]] = {}
    if root > BASE_PRIME_LIMIT:
        for block in iter_prime_blocks(BASE_PRIME_LIMIT + 1, root + 1):
            hit = block[((-start) % block) < length]
            for p in hit.tolist():
                mark(p)
                lo = (-start) % p
                for i in range(lo, length, p):
                    large.setdefault(i, []).append(p)

    omega += rem > 1
    untouched = lpf == 0
    lpf[untouched] = n[untouched]
    is_prime = lpf == n
    lam = np.where(omega % 2 == 0, 1, -1).astype(np.int8)

    for arr in (lpf, omega, lam, is_prime):
        arr.setflags(write=False)
    return FactorSegment(start, length, lpf, omega, lam, is_prime, base, large)


def iter_prime_blocks(lo: int, hi: int, block: int = PRIME_BLOCK) -> Iterator[np.ndarray]:
    """Yield the primes in ``[lo, hi)`` as consecutive int64 arrays."""
    lo, hi = max(int(lo), 2), int(hi)
    small = sieve_primes(math.isqrt(max(hi - 1, 1)))
    a = lo
    while a < hi:
        b = min(a + block, hi)
        flags = np.ones(b - a, dtype=bool)
        for p in small.tolist():
            if p * p >= b:
                break
            first = max(p * p, -(-a // p) * p) - a
            flags[first::p] = False
        yield np.flatnonzero(flags).astype(np.int64) + a
        a = b


def iter_segments(
    start: int, stop: int, segment_length: int = SEGMENT_LENGTH
) -> Iterator[FactorSegment]:
    """Stream consecutive segments covering ``[start, stop)``."""
    if segment_length < 1:
        raise InputError("segment_length must be >= 1")
    lo = start
    while lo < stop:
        hi = min(lo + segment_length, stop)
        yield factor_segment(lo, hi - lo)
        lo = hi


def least_prime_factor_exceeds(
    n: int, bound: float, seg: FactorSegment | None = None
) -> bool:
    """True iff every prime factor of ``n`` is strictly greater than ``bound``."""
    n = int(n)
    if n < 2:
        raise InputError(f"n must be >= 2, got {n}")
    if bound < 1:
        raise InputError(f"bound must be >= 1, got {bound}")
    if seg is not None and n in seg:
        return seg.least_prime_factor(n) > bound
    if n > MAX_INT:
        raise InputError(f"{n} exceeds int64 range")
    limit = min(math.isqrt(n), math.floor(bound))
    for p in sieve_primes(limit).tolist():
        if n % p == 0:
            return False
    # no prime <= min(sqrt n, bound) divides n
    if bound >= math.isqrt(n):
        return n > bound  # n is prime here
    return True


@lru_cache(maxsize=4)
def _liouville_cached(M: int) -> np.ndarray:
    out = np.empty(M, dtype=np.int8)
    out[0] = 1
    if M > 1:
        pos = 0
        for seg in iter_segments(2, M + 1):
            out[1 + pos : 1 + pos + seg.length] = seg.lam
            pos += seg.length
    out.setflags(write=False)
    return out


def liouville_values(M: int) -> np.ndarray:
    """``lambda(1), ..., lambda(M)`` as an int8 array (index ``n - 1``)."""
    if M < 1:
        raise InputError(f"M must be >= 1, got {M}")
    return _liouville_cached(int(M))


def mobius_up_to(limit: int) -> np.ndarray:
    """Array ``mu[0..limit]`` of Moebius values (``mu[0] = 0``)."""
    limit = int(limit)
    if limit < 0:
        raise InputError("limit must be >= 0")
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    for p in sieve_primes(limit).tolist():
        mu[p::p] *= -1
        mu[p * p :: p * p] = 0
    return mu

