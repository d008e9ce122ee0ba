"""Direct searches for the configurations the sieve argument produces.

* :func:`hunt_window` counts ``n`` in ``[N, 2N)`` with two primes in
  ``n + H``, and ``n`` with a prime in ``n + H`` together with
  ``lambda(n + r) = -1``.
* :func:`tally_lambda_shifts` counts primes ``p <= N`` with
  ``lambda(p + d) = -1`` for each shift ``d``, optionally requiring
  ``P^-(p + d) > p^c`` and splitting the hits by ``b = Omega(p + d)``.
* :func:`shape_check` normalises restricted hit counts by ``N / log^k N``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .arith import factor_segment, sieve_primes
from .config import SEGMENT_LENGTH
from .errors import InputError
from .parallel import chunk_ranges, ordered_map
from .tuples import KTuple, _as_tuple, is_admissible

__all__ = [
    "WitnessReport",
    "ShiftTally",
    "ShapeReport",
    "hunt_window",
    "tally_lambda_shifts",
    "shape_check",
    "shape_count",
    "DEFAULT_C_EXPONENT",
]

DEFAULT_C_EXPONENT = 0.05


@dataclass
class ShiftTally:
    d: int
    N: int
    count: int
    c_exponent: float | None = None
    conditioned: int | None = None
    by_b: dict[int, int] = field(default_factory=dict)

    def rows(self) -> list[dict]:
        out = [{"d": self.d, "N": self.N, "condition": "lambda=-1", "b": "", "count": self.count}]
        if self.c_exponent is not None:
            cond = f"lambda=-1;lpf>p^{self.c_exponent:g}"
            out.append({"d": self.d, "N": self.N, "condition": cond, "b": "", "count": self.conditioned})
            for b in sorted(self.by_b):
                out.append({"d": self.d, "N": self.N, "condition": cond, "b": b, "count": self.by_b[b]})
        return out


@dataclass
class WitnessReport:
    N: int
    H: str
    r: int | None = None
    c_exponent: float | None = None
    two_prime_count: int = 0
    prime_plus_lambda_count: int = 0
    either_count: int = 0
    per_d_tallies: dict[int, ShiftTally] = field(default_factory=dict)
    shape_ratios: list[tuple[int, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "H": self.H,
            "r": self.r,
            "c_exponent": self.c_exponent,
            "two_prime_count": self.two_prime_count,
            "prime_plus_lambda_count": self.prime_plus_lambda_count,
            "either_count": self.either_count,
            "per_d_tallies": {
                str(d): {
                    "count": t.count,
                    "conditioned": t.conditioned,
                    "by_b": {str(b): c for b, c in sorted(t.by_b.items())},
                }
                for d, t in sorted(self.per_d_tallies.items())
            },
            "shape_ratios": [list(x) for x in self.shape_ratios],
        }


# ------------------------------------------------------------------ windows


def _hunt_chunk(job):
    lo, hi, elements, r = job
    offs = list(elements) + [r]
    m = min(0, min(offs))
    base = lo + m
    seg = factor_segment(base, hi - lo + max(offs) - m)
    length = hi - lo
    sP = np.zeros(length, dtype=np.int64)
    for h in elements:
        sP += seg.is_prime[lo + h - base : hi + h - base]
    neg = seg.lam[lo + r - base : hi + r - base] == -1
    two = sP >= 2
    one = (sP >= 1) & neg
    return int(two.sum()), int(one.sum()), int((two | one).sum())


def hunt_window(
    N: int, H, r: int, *, segment_length: int = SEGMENT_LENGTH, workers: int = 1
) -> WitnessReport:
    """Counts over ``n`` in ``[N, 2N)`` of (i) at least two primes among
    ``n + h_i`` and (ii) some prime ``n + h_i`` with ``lambda(n + r) = -1``."""
    H = _as_tuple(H)
    N, r = int(N), int(r)
    if not is_admissible(H):
        raise InputError(f"{H} is not admissible")
    if r in H.elements:
        raise InputError(f"r = {r} must not belong to H")
    if N < 2 or N + min(0, r) < 2:
        raise InputError("every n + h and n + r must be >= 2")
    jobs = [(lo, hi, H.elements, r) for lo, hi in chunk_ranges(N, 2 * N, segment_length)]
    parts = ordered_map(_hunt_chunk, jobs, workers)
    two, one, either = (sum(p[i] for p in parts) for i in range(3))
    return WitnessReport(N, str(H), r, None, two, one, either)


# ------------------------------------------------------------------ tallies


def tally_lambda_shifts(
    N: int,
    d_set,
    c_exponent: float | None = None,
) -> dict[int, ShiftTally]:
    """Per shift ``d``: primes ``p <= N`` (with ``p + d >= 2``) such that
    ``lambda(p + d) = -1``.

    With ``c_exponent`` the hits with ``P^-(p + d) > p^c`` are counted too and
    broken down by the (necessarily odd) value ``b = Omega(p + d)``.
    """
    N = int(N)
    ds = sorted({int(d) for d in d_set})
    if not ds:
        raise InputError("d_set must be non-empty")
    if any(d == 0 or d % 2 for d in ds):
        raise InputError("shifts must be non-zero even integers")
    if c_exponent is not None and not 0 < c_exponent < 0.2:
        raise InputError(f"c_exponent must be in (0, 0.2), got {c_exponent}")
    primes = sieve_primes(N)
    out: dict[int, ShiftTally] = {}
    if primes.size == 0:
        return {d: ShiftTally(d, N, 0, c_exponent, 0 if c_exponent else None) for d in ds}
    lo = max(2, int(primes[0]) + min(ds))
    hi = int(primes[-1]) + max(ds) + 1
    seg = factor_segment(lo, hi - lo)
    for d in ds:
        ps = primes[primes + d >= 2]
        idx = ps + d - lo
        neg = seg.lam[idx] == -1
        t = ShiftTally(d, N, int(neg.sum()), c_exponent)
        if c_exponent is not None:
            lp = seg.lpf[idx].astype(np.float64)
            ok = neg & (lp > ps.astype(np.float64) ** c_exponent)
            t.conditioned = int(ok.sum())
            t.by_b = dict(sorted(Counter(seg.big_omega[idx][ok].tolist()).items()))
        out[d] = t
    return out


# ------------------------------------------------------------------ shape


@dataclass
class ShapeReport:
    H: str
    k: int
    rho: float
    eta: float
    j: int
    restricted: bool
    counts: list[int]
    N_grid: list[int]
    ratios: list[float]
    min_over_max: float
    threshold: float = 0.2

    @property
    def bounded_away(self) -> bool:
        return all(x > 0 for x in self.ratios) and self.min_over_max >= self.threshold


def _shape_chunk(job):
    lo, hi, elements, j, zbound, restrict = job
    base = lo
    seg = factor_segment(base, hi - lo + elements[-1])
    length = hi - lo
    total = np.zeros(length, dtype=np.int64)
    ok = np.ones(length, dtype=bool)
    for i, h in enumerate(elements):
        sl = slice(lo + h - base, hi + h - base)
        if i == j:
            total += seg.lam[sl] == -1
        else:
            total += seg.is_prime[sl]
        if restrict:
            ok &= seg.lpf[sl] > zbound
    return int(((total > 1) & ok).sum())


def shape_count(
    N: int,
    H,
    *,
    j: int | None = None,
    rho: float = 0.25,
    eta: float = 0.2,
    restrict: bool = True,
    segment_length: int = SEGMENT_LENGTH,
    workers: int = 1,
) -> int:
    """Number of ``n`` in ``[N, 2N)`` with
    ``sum_{i != j} chi_P(n + h_i) + chi_lambda(n + h_j) > 1`` and, when
    ``restrict``, ``P^-(P_H(n)) > R^eta`` where ``R = N^rho``."""
    H = _as_tuple(H)
    j = H.k - 1 if j is None else int(j)
    if not 0 <= j < H.k:
        raise InputError(f"j must index H, got {j}")
    z = (float(N) ** rho) ** eta
    jobs = [(lo, hi, H.elements, j, z, restrict) for lo, hi in chunk_ranges(N, 2 * N, segment_length)]
    return sum(ordered_map(_shape_chunk, jobs, workers))


def shape_check(
    H,
    N_grid,
    *,
    j: int | None = None,
    rho: float = 0.25,
    eta: float = 0.2,
    restrict: bool = True,
    threshold: float = 0.2,
    segment_length: int = SEGMENT_LENGTH,
    workers: int = 1,
) -> ShapeReport:
    """Normalised counts ``count * (log N)^k / N`` over an increasing grid."""
    H = _as_tuple(H)
    grid = [int(N) for N in N_grid]
    if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
        raise InputError("N_grid must be non-empty and strictly increasing")
    j = H.k - 1 if j is None else int(j)
    counts = [
        shape_count(N, H, j=j, rho=rho, eta=eta, restrict=restrict,
                    segment_length=segment_length, workers=workers)
        for N in grid
    ]
    ratios = [c * math.log(N) ** H.k / N for c, N in zip(counts, grid)]
    mom = min(ratios) / max(ratios) if max(ratios) > 0 else 0.0
    return ShapeReport(str(H), H.k, rho, eta, j, restrict, counts, grid, ratios, mom, threshold)
