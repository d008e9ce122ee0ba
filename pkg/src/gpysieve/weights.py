"""Truncated divisor-sum weights.

``Lambda_R(n; H, l) = 1/(k+l)! * sum_{d | P_H(n), d <= R} mu(d) log(R/d)^(k+l)``
with ``P_H(n) = prod_i (n + h_i)``, and the combined weight

``a_n = (Lambda_R(n; H, 0) + u (k+1) / log R * Lambda_R(n; H, 1))^2``.

Two evaluation routes are provided.  :func:`lambda_R` works on one ``n`` by
enumerating the squarefree divisors of ``P_H(n)`` built from its distinct
primes.  :func:`batch_lambda_window` loops over ``d`` instead and adds each
term to every ``n`` in the residue classes where ``d | P_H(n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import FactorSegment, mobius_up_to
from .config import check_allocation
from .errors import InputError, PreconditionError
from .tuples import KTuple, _as_tuple, roots_mod

__all__ = [
    "WeightParams",
    "lambda_R",
    "weight_a",
    "batch_lambda_window",
    "batch_lambda_R",
    "batch_weight_a",
    "squarefree_terms",
]

MAX_L = 8


@dataclass(frozen=True)
class WeightParams:
    H: KTuple
    R: float
    u: float = 0.0
    l: int = 0

    def __post_init__(self):
        object.__setattr__(self, "H", _as_tuple(self.H))
        if not self.R > 1:
            raise InputError(f"R must be > 1, got {self.R}")
        if not 0 <= self.l <= MAX_L:
            raise InputError(f"l must be in [0, {MAX_L}], got {self.l}")
        if not math.isfinite(self.u):
            raise InputError("u must be finite")

    @property
    def k(self) -> int:
        return self.H.k

    @property
    def cross_coefficient(self) -> float:
        """Factor ``u (k+1) / log R`` in front of the ``l = 1`` weight."""
        return self.u * (self.k + 1) / math.log(self.R)


def _check(H: KTuple, l: int, R: float) -> None:
    if not R > 1:
        raise InputError(f"R must be > 1, got {R}")
    if not 0 <= l <= MAX_L:
        raise InputError(f"l must be in [0, {MAX_L}], got {l}")


def _distinct_small_primes(n: int, H: KTuple, R: float, seg: FactorSegment) -> list[int]:
    primes: set[int] = set()
    for h in H.elements:
        m = n + h
        if m == 1:
            continue
        if m not in seg:
            raise PreconditionError(
                f"n + h = {m} is outside the factored window [{seg.start}, {seg.stop})"
            )
        for p in seg.distinct_prime_factors(m):
            if p <= R:
                primes.add(p)
    return sorted(primes)


def lambda_R(n: int, H, l: int, R: float, seg: FactorSegment) -> float:
    """Per-``n`` evaluation by depth-first divisor enumeration."""
    H = _as_tuple(H)
    _check(H, l, R)
    if n < 1:
        raise InputError(f"n must be >= 1, got {n}")
    primes = _distinct_small_primes(n, H, R, seg)
    e = H.k + l
    logR = math.log(R)
    terms: list[float] = []

    def walk(i: int, d: int, sign: int) -> None:
        terms.append(sign * (logR - math.log(d)) ** e)
        for j in range(i, len(primes)):
            nd = d * primes[j]
            if nd > R:
                break  # primes are ascending
            walk(j + 1, nd, -sign)

    walk(0, 1, 1)
    return math.fsum(terms) / math.factorial(e)


def weight_a(n: int, params: WeightParams, seg: FactorSegment) -> float:
    lam0 = lambda_R(n, params.H, 0, params.R, seg)
    if params.u == 0:
        return lam0 * lam0
    lam1 = lambda_R(n, params.H, 1, params.R, seg)
    v = lam0 + params.cross_coefficient * lam1
    return v * v


@lru_cache(maxsize=64)
def squarefree_terms(H: KTuple, R: float) -> tuple[tuple[int, int, tuple[int, ...]], ...]:
    """``(d, mu(d), roots of P_H mod d)`` for every squarefree ``d <= R``."""
    D = math.floor(R)
    mu = mobius_up_to(D)
    out = []
    for d in range(1, D + 1):
        if mu[d] != 0:
            out.append((d, int(mu[d]), tuple(roots_mod(H, d))))
    return tuple(out)


def batch_lambda_window(
    start: int, length: int, H, l: int, R: float, compensated: bool = True
) -> np.ndarray:
    """``Lambda_R(n; H, l)`` for every ``n`` in ``[start, start + length)``.

    Each squarefree ``d <= R`` contributes ``mu(d) log(R/d)^(k+l)/(k+l)!`` to
    the ``n`` with ``n = a (mod d)`` for a root ``a`` of ``P_H`` mod ``d``.
    With ``compensated`` the strided additions use Kahan summation.
    """
    H = _as_tuple(H)
    _check(H, l, R)
    start, length = int(start), int(length)
    if start < 1 or length < 1:
        raise InputError("start and length must be >= 1")
    check_allocation(length * 8 * (2 if compensated else 1), "weight accumulator")
    e = H.k + l
    logR = math.log(R)
    fact = math.factorial(e)
    acc = np.zeros(length, dtype=np.float64)
    comp = np.zeros(length, dtype=np.float64) if compensated else None
    for d, mu, roots in squarefree_terms(H, float(R)):
        term = mu * (logR - math.log(d)) ** e / fact
        if term == 0.0:
            continue
        for a in roots:
            off = (a - start) % d
            if off >= length:
                continue
            if comp is None:
                acc[off::d] += term
            else:
                s = acc[off::d]
                c = comp[off::d]
                y = term - c
                t = s + y
                comp[off::d] = (t - s) - y
                acc[off::d] = t
    return acc


def batch_lambda_R(N: int, H, l: int, R: float) -> np.ndarray:
    """``Lambda_R(n; H, l)`` for ``n`` in ``[N, 2N)``."""
    return batch_lambda_window(N, N, H, l, R)


def batch_weight_a(start: int, length: int, params: WeightParams) -> np.ndarray:
    lam0 = batch_lambda_window(start, length, params.H, 0, params.R)
    if params.u == 0:
        return lam0 * lam0
    lam1 = batch_lambda_window(start, length, params.H, 1, params.R)
    v = lam0 + params.cross_coefficient * lam1
    return v * v
