"""Exact lower-density bounds for the sets of good shifts ``d``.

Choosing every tuple inside ``{m <= U : (m, P) = 1}``, ``P`` the product of
the primes up to ``k``, keeps it admissible.  Counting how often one shift can
be produced gives

    d(D1) >= phi(P) / (P k (k-1)),
    d(D0) >= 1 / (4k + k (k-1) P / phi(P)).

Everything here is exact :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import sieve_primes
from .errors import InputError

__all__ = [
    "DensityReport",
    "AuditReport",
    "primorial",
    "density_bounds",
    "density_table",
    "multiplicity_audit",
    "tstar_inequality_holds",
    "STATED_D0",
    "STATED_D1",
]

STATED_D0 = {2: Fraction(1, 12), 3: Fraction(1, 30), 4: Fraction(1, 52), 5: Fraction(1, 95), 6: Fraction(2, 273)}
STATED_D1 = {4: Fraction(1, 36), 5: Fraction(1, 75), 6: Fraction(2, 225), 7: Fraction(4, 735),
             8: Fraction(1, 245), 9: Fraction(1, 315)}

MAX_SUBSETS = 10**7


def primorial(k: int) -> tuple[int, int]:
    """``(P, phi(P))`` for ``P`` the product of the primes ``<= k``."""
    P, phi = 1, 1
    for p in sieve_primes(k).tolist():
        P *= p
        phi *= p - 1
    return P, phi


@dataclass(frozen=True)
class DensityReport:
    k: int
    P: int
    phi_P: int
    d0_bound: Fraction
    d1_bound: Fraction


def density_bounds(k: int) -> DensityReport:
    k = int(k)
    if not 2 <= k <= 16:
        raise InputError(f"k must be in [2, 16], got {k}")
    P, phi = primorial(k)
    d0 = 1 / (4 * k + Fraction(k * (k - 1) * P, phi))
    d1 = Fraction(phi, P * k * (k - 1))
    return DensityReport(k, P, phi, d0, d1)


def density_table() -> list[dict]:
    """Rows ``k, P, phi_P, d0_bound, d1_bound, paper_value, match`` for every k
    with a stated value (the stated value is for D0 when k <= 6, else D1;
    k = 4..6 appear once per set)."""
    rows = []
    for k in range(2, 10):
        rep = density_bounds(k)
        for which, table, val in (("d0", STATED_D0, rep.d0_bound), ("d1", STATED_D1, rep.d1_bound)):
            if k in table:
                rows.append({
                    "k": k, "P": rep.P, "phi_P": rep.phi_P,
                    "d0_bound": rep.d0_bound, "d1_bound": rep.d1_bound,
                    "set": which, "paper_value": table[k], "match": val == table[k],
                })
    return rows


@dataclass
class AuditReport:
    k: int
    U: int
    M: int
    subsets: int
    distinct_d1: int
    predicted_d1: Fraction
    max_multiplicity_d1: int
    multiplicity_bound_d1: int
    pairs_d0: int
    distinct_d0: int
    max_multiplicity_d0: int
    Z: int
    multiplicity: dict = field(default_factory=dict, repr=False)

    @property
    def ok(self) -> bool:
        return (
            self.distinct_d1 >= self.predicted_d1
            and self.max_multiplicity_d1 <= self.multiplicity_bound_d1
            and self.max_multiplicity_d0 <= self.Z
            and self.distinct_d0 * self.Z >= self.pairs_d0
        )


def multiplicity_audit(k: int, U: int) -> AuditReport:
    """Brute-force check of the counting behind the density bounds.

    ``U`` is padded up to a multiple of ``P``.  Every k-subset of
    ``M = {m <= U : (m, P) = 1}`` is enumerated.  For the D1 count each
    (subset, pair) incidence adds one to the multiplicity of the pair's
    difference.  For the D0 count each subset is combined with every even
    ``r`` in ``[1, U]`` outside it, contributing its differences and the
    values ``|r - h_i|``.
    """
    k, U = int(k), int(U)
    if k < 2:
        raise InputError("k must be >= 2")
    P, _ = primorial(k)
    if U < 1:
        raise InputError("U must be >= 1")
    U = -(-U // P) * P
    pool = [m for m in range(1, U + 1) if math.gcd(m, P) == 1]
    M = len(pool)
    n_sub = math.comb(M, k)
    if n_sub > MAX_SUBSETS:
        raise InputError(f"C({M}, {k}) = {n_sub} subsets exceeds the guard {MAX_SUBSETS}")
    evens = [r for r in range(2, U + 1, 2)]

    mult1: Counter = Counter()
    mult0: Counter = Counter()
    pairs0 = 0
    for H in itertools.combinations(pool, k):
        diffs = [H[j] - H[i] for i in range(k) for j in range(i + 1, k)]
        mult1.update(diffs)
        rs = [r for r in evens if r not in H]
        pairs0 += len(rs)
        for d, c in Counter(diffs).items():
            mult0[d] += c * len(rs)
        for r in rs:
            mult0.update(abs(r - h) for h in H)

    bound1 = (M - 1) * math.comb(M - 2, k - 2)
    Z = (U // 2) * (M - 1) * math.comb(M - 2, k - 2) + 2 * k * n_sub
    return AuditReport(
        k=k, U=U, M=M, subsets=n_sub,
        distinct_d1=len(mult1), predicted_d1=Fraction(M, k * (k - 1)),
        max_multiplicity_d1=max(mult1.values(), default=0), multiplicity_bound_d1=bound1,
        pairs_d0=pairs0, distinct_d0=len(mult0), max_multiplicity_d0=max(mult0.values(), default=0),
        Z=Z, multiplicity=dict(mult1),
    )


def tstar_inequality_holds(t_max: int = 10**4) -> bool:
    """``floor(6t/4) >= t`` for ``0 <= t <= t_max``, which is what lets the
    ``{0, 2s, 6t}`` family cover a sixth of the multiples of 6."""
    return all((6 * t) // 4 >= t for t in range(t_max + 1))
