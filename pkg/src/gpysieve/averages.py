"""Weighted averages over ``n`` in ``[N, 2N)`` and discrepancy sums.

The scan over ``[N, 2N)`` is a map-reduce over fixed chunks: each chunk is
factored, its weights built with the batch route, and a handful of partial
sums returned.  Chunks are merged in order with ``math.fsum``, so results do
not depend on the number of workers.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .arith import factor_segment, liouville_values, sieve_primes
from .config import SEGMENT_LENGTH
from .errors import InputError
from .parallel import chunk_ranges, ordered_map
from .tuples import KTuple, _as_tuple, singular_series
from .weights import WeightParams, batch_lambda_window

__all__ = [
    "AverageReport",
    "compute_B",
    "predicted_A",
    "predicted_S_P",
    "empirical_averages",
    "discarded_mass",
    "discarded_mass_curve",
    "fit_discard_slope",
    "discard_slope",
    "DiscardSlope",
    "second_moment_ratio",
    "prime_moment_ratio",
    "lambda_discrepancy",
    "lambda_discrepancies",
    "averaged_discrepancy",
    "prime_discrepancy",
]

CSV_COLUMNS = (
    "N", "k", "tuple", "R_exponent", "u", "eta", "r",
    "A_emp", "A_pred", "S_P_emp", "S_P_pred", "S_lambda_emp", "S_lambda_pred",
    "S_star_emp", "discarded_mass_ratio", "B",
)


def compute_B(H, R: float) -> float:
    """``B = S(H) (log R)^k / k!``; zero for inadmissible ``H``."""
    H = _as_tuple(H)
    if not R > 1:
        raise InputError(f"R must be > 1, got {R}")
    S = singular_series(H).value
    return S * math.log(R) ** H.k / math.factorial(H.k)


def predicted_A(k: int, u: float) -> float:
    """Asymptotic ``A / B``."""
    return 1 + 2 * u + 2 * u * u * (k + 1) / (k + 2)


def predicted_S_P(k: int, u: float, log_ratio: float) -> float:
    """Asymptotic ``S_P / B`` with ``log_ratio = log R / log N``."""
    return k * log_ratio * (
        2 / (k + 1) + 6 * u / (k + 2) + 6 * u * u * (k + 1) / ((k + 2) * (k + 3))
    )


@dataclass
class AverageReport:
    N: int
    H: str
    k: int
    R: float
    u: float
    eta: float
    r: int
    A_emp: float
    S_P_emp: float
    S_lambda_emp: float
    S_star_emp: float
    A_pred: float
    S_P_pred: float
    S_lambda_pred: float
    B: float
    discarded_mass_ratio: float
    extras: dict = field(default_factory=dict)

    @property
    def R_exponent(self) -> float:
        return math.log(self.R) / math.log(self.N)

    @property
    def S_emp(self) -> float:
        return self.S_P_emp + self.S_lambda_emp

    def to_dict(self) -> dict:
        d = asdict(self)
        d["R_exponent"] = self.R_exponent
        d["S_emp"] = self.S_emp
        d["S_minus_A_sign"] = int(np.sign(self.S_emp - self.A_emp))
        return d

    def csv_row(self) -> dict:
        d = self.to_dict()
        d["tuple"] = self.H
        return {c: d[c] for c in CSV_COLUMNS}


# ---------------------------------------------------------------- scanning


def _scan_chunk(job):
    lo, hi, elements, R, u, r, thresholds = job
    H = KTuple(elements)
    k = H.k
    offs = list(elements) + ([r] if r is not None else [])
    base = lo + min(0, min(offs))
    seg = factor_segment(base, hi - lo + max(offs) - min(0, min(offs)))
    length = hi - lo
    lam0 = batch_lambda_window(lo, length, H, 0, R)
    lam1 = batch_lambda_window(lo, length, H, 1, R)
    c = u * (k + 1) / math.log(R)
    a = (lam0 + c * lam1) ** 2

    sP = np.zeros(length, dtype=np.int64)
    minlpf = np.full(length, np.iinfo(np.int64).max, dtype=np.int64)
    cross = {}
    prime_cross = {}
    for h in elements:
        sl = slice(lo + h - base, hi + h - base)
        pr = seg.is_prime[sl]
        sP += pr
        np.minimum(minlpf, seg.lpf[sl], out=minlpf)
    for l1, l2, w in ((0, 0, lam0 * lam0), (0, 1, lam0 * lam1), (1, 1, lam1 * lam1)):
        cross[(l1, l2)] = float(np.sum(w))
        prime_cross[(l1, l2)] = float(np.sum(w * sP))

    out = {
        "A": float(np.sum(a)),
        "S_P": float(np.sum(a * sP)),
        "cross": cross,
        "prime_cross": prime_cross,
    }
    if r is not None:
        lam_r = seg.lam[lo + r - base : hi + r - base]
        chi = (1 - lam_r.astype(np.int64)) // 2
        out["S_lambda"] = float(np.sum(a * chi))
        out["lambda_cross"] = {
            (0, 0): float(np.sum(lam0 * lam0 * lam_r)),
            (1, 1): float(np.sum(lam1 * lam1 * lam_r)),
        }
        s = sP + chi
    else:
        s = sP
    discarded = []
    star = []
    for z in thresholds:
        bad = minlpf <= z
        discarded.append(float(np.sum(a[bad])))
        star.append(float(np.sum((a * s)[~bad])))
    out["discarded"] = discarded
    out["star"] = star
    return out


def _merge(parts: list[dict]) -> dict:
    def fs(key):
        return math.fsum(p[key] for p in parts)

    out = {"A": fs("A"), "S_P": fs("S_P")}
    if "S_lambda" in parts[0]:
        out["S_lambda"] = fs("S_lambda")
        out["lambda_cross"] = {
            key: math.fsum(p["lambda_cross"][key] for p in parts) for key in parts[0]["lambda_cross"]
        }
    for name in ("cross", "prime_cross"):
        out[name] = {key: math.fsum(p[name][key] for p in parts) for key in parts[0][name]}
    nz = len(parts[0]["discarded"])
    out["discarded"] = [math.fsum(p["discarded"][i] for p in parts) for i in range(nz)]
    out["star"] = [math.fsum(p["star"][i] for p in parts) for i in range(nz)]
    return out


def _scan(N, H: KTuple, R, u, r, thresholds, segment_length, workers) -> dict:
    N = int(N)
    if N < 2:
        raise InputError(f"N must be >= 2, got {N}")
    if r is not None and N + r < 2:
        raise InputError(f"n + r must stay >= 2 on [N, 2N); got r = {r}")
    jobs = [
        (lo, hi, H.elements, float(R), float(u), r, tuple(thresholds))
        for lo, hi in chunk_ranges(N, 2 * N, segment_length)
    ]
    return _merge(ordered_map(_scan_chunk, jobs, workers))


# ---------------------------------------------------------------- averages


def empirical_averages(
    N: int,
    params: WeightParams,
    r: int,
    eta: float,
    *,
    segment_length: int = SEGMENT_LENGTH,
    workers: int = 1,
) -> AverageReport:
    """``A``, ``S_P``, ``S_lambda`` and ``S*`` at ``N`` together with their
    predicted values.

    ``S*`` keeps only the ``n`` for which ``P_H(n)`` has no prime factor up
    to ``R^eta``; the complementary share of the ``a_n``-mass is returned as
    ``discarded_mass_ratio``.
    """
    if not 0 < eta < 1:
        raise InputError(f"eta must be in (0, 1), got {eta}")
    H, R, u = params.H, params.R, params.u
    k = H.k
    z = R**eta
    tot = _scan(N, H, R, u, r, [z], segment_length, workers)
    A = tot["A"] / N
    B = compute_B(H, R)
    log_ratio = math.log(R) / math.log(N)
    A_pred = B * predicted_A(k, u)
    return AverageReport(
        N=int(N),
        H=str(H),
        k=k,
        R=float(R),
        u=float(u),
        eta=float(eta),
        r=int(r),
        A_emp=A,
        S_P_emp=tot["S_P"] / N,
        S_lambda_emp=tot["S_lambda"] / N,
        S_star_emp=tot["star"][0] / N,
        A_pred=A_pred,
        S_P_pred=B * predicted_S_P(k, u, log_ratio),
        S_lambda_pred=A_pred / 2,
        B=B,
        discarded_mass_ratio=tot["discarded"][0] / tot["A"],
    )


def discarded_mass_curve(
    N: int,
    params: WeightParams,
    etas,
    *,
    segment_length: int = SEGMENT_LENGTH,
    workers: int = 1,
) -> np.ndarray:
    """Share of the ``a_n``-mass on ``n`` where ``P_H(n)`` has a prime factor
    ``<= R^eta``, for each ``eta`` in ``etas``."""
    etas = [float(e) for e in etas]
    if any(not 0 < e < 1 for e in etas):
        raise InputError("every eta must lie in (0, 1)")
    zs = [params.R**e for e in etas]
    tot = _scan(N, params.H, params.R, params.u, None, zs, segment_length, workers)
    return np.array(tot["discarded"]) / tot["A"]


def discarded_mass(N: int, params: WeightParams, eta: float, **kw) -> float:
    return float(discarded_mass_curve(N, params, [eta], **kw)[0])


def fit_discard_slope(etas, ratios) -> float:
    """Smallest ``C`` with ``ratio(eta) <= C * eta`` on the sampled points."""
    etas = np.asarray(etas, dtype=float)
    ratios = np.asarray(ratios, dtype=float)
    return float(np.max(ratios / etas))


@dataclass
class DiscardSlope:
    N: int
    R: float
    C: float
    jump_etas: list
    jump_ratios: list

    def bound(self, eta: float) -> float:
        return self.C * eta


def discard_slope(
    N: int, params: WeightParams, *, segment_length: int = SEGMENT_LENGTH, workers: int = 1
) -> DiscardSlope:
    """Exact ``sup_{0 < eta < 1} ratio(eta) / eta`` for the discarded mass.

    ``ratio(eta)`` is a right-continuous step function that only jumps where
    ``R^eta`` reaches a prime ``p``, so the supremum is attained at one of the
    points ``eta = log p / log R``.
    """
    R = params.R
    ps = [p for p in sieve_primes(math.floor(R)).tolist() if p < R]
    if not ps:
        raise InputError(f"R = {R} has no prime below it")
    tot = _scan(N, params.H, R, params.u, None, ps, segment_length, workers)
    ratios = [d / tot["A"] for d in tot["discarded"]]
    etas = [math.log(p) / math.log(R) for p in ps]
    return DiscardSlope(int(N), float(R), fit_discard_slope(etas, ratios), etas, ratios)


def second_moment_ratio(N: int, H, R: float, l1: int = 0, l2: int = 0, **kw) -> float:
    """Empirical mean of ``Lambda_R(l1) Lambda_R(l2)`` over its main term
    ``S(H) C(l1+l2, l1) (log R)^(k+l1+l2) / (k+l1+l2)!``."""
    if (l1, l2) not in ((0, 0), (0, 1), (1, 0), (1, 1)):
        raise InputError("only l1, l2 in {0, 1} are scanned")
    H = _as_tuple(H)
    tot = _scan(N, H, R, 0.0, None, [], kw.get("segment_length", SEGMENT_LENGTH), kw.get("workers", 1))
    key = tuple(sorted((l1, l2)))
    emp = tot["cross"][key] / N
    e = H.k + l1 + l2
    main = singular_series(H).value * math.comb(l1 + l2, l1) * math.log(R) ** e / math.factorial(e)
    return emp / main


def prime_moment_ratio(N: int, H, R: float, l1: int = 0, l2: int = 0, **kw) -> float:
    """Empirical mean of ``Lambda_R(l1) Lambda_R(l2) chi_P(n + h)``, averaged
    over ``h`` in ``H``, over its main term
    ``S(H) C(l1+l2+2, l1+1) (log R)^(k+l1+l2+1) / ((k+l1+l2+1)! log N)``."""
    if (l1, l2) not in ((0, 0), (0, 1), (1, 0), (1, 1)):
        raise InputError("only l1, l2 in {0, 1} are scanned")
    H = _as_tuple(H)
    tot = _scan(N, H, R, 0.0, None, [], kw.get("segment_length", SEGMENT_LENGTH), kw.get("workers", 1))
    key = tuple(sorted((l1, l2)))
    emp = tot["prime_cross"][key] / (N * H.k)
    e = H.k + l1 + l2 + 1
    main = (
        singular_series(H).value
        * math.comb(l1 + l2 + 2, l1 + 1)
        * math.log(R) ** e
        / (math.factorial(e) * math.log(N))
    )
    return emp / main


# ---------------------------------------------------------------- discrepancy


def _class_max(values: np.ndarray, q: int) -> np.ndarray:
    """Per residue class ``a`` of ``n = 1..M`` (``values[n-1]``), the max over
    prefixes of ``|sum_{n = a mod q, n <= y} values[n]|``."""
    M = values.shape[0]
    rows = -(-M // q)
    dtype = np.int32 if M < 2**31 else np.int64
    padded = np.zeros(rows * q, dtype=dtype)
    padded[:M] = values
    # column j holds n = j + 1, j + 1 + q, ... i.e. class (j + 1) mod q
    cums = np.cumsum(padded.reshape(rows, q), axis=0, dtype=dtype)
    return np.maximum(cums.max(axis=0), -cums.min(axis=0)).astype(np.int64)


def lambda_discrepancy(M: int, q: int) -> int:
    """``E_M(q) = max_{y <= M} max_a |sum_{n = a (q), n <= y} lambda(n)|``."""
    M, q = int(M), int(q)
    if not 1 <= q <= M:
        raise InputError(f"need 1 <= q <= M, got q={q}, M={M}")
    return int(np.max(_class_max(liouville_values(M), q)))


def lambda_discrepancies(M: int, qs) -> np.ndarray:
    lam = liouville_values(int(M))
    out = []
    for q in qs:
        q = int(q)
        if not 1 <= q <= M:
            raise InputError(f"need 1 <= q <= M, got q={q}, M={M}")
        out.append(int(np.max(_class_max(lam, q))))
    return np.array(out, dtype=np.int64)


def prime_discrepancy(N: int, q: int) -> float:
    """``max_{(a,q)=1} max_{y <= N} |sum_{p = a (q), p <= y} log p - y/phi(q)|``.

    Between consecutive primes of a class the deviation decreases linearly in
    ``y``, so the extremes sit at a prime (after its jump), just before the
    next prime of the class, or at ``y = N``.
    """
    N, q = int(N), int(q)
    if not 1 <= q <= N:
        raise InputError(f"need 1 <= q <= N, got q={q}, N={N}")
    primes = sieve_primes(N)
    phi = _totient(q)
    p_all = primes.astype(np.float64)
    logs = np.log(p_all)
    classes = primes % q
    best = 0.0
    for a in range(q):
        if math.gcd(a, q) != 1:
            continue
        sel = classes == a
        ps = p_all[sel]
        theta = np.cumsum(logs[sel])
        # just before each prime: previous theta minus p/phi; after: theta - p/phi
        before = np.concatenate(([0.0], theta[:-1])) - ps / phi if ps.size else np.empty(0)
        after = theta - ps / phi
        end = (theta[-1] if ps.size else 0.0) - N / phi
        cands = [abs(end)]
        if ps.size:
            cands.append(float(np.max(np.abs(before))))
            cands.append(float(np.max(np.abs(after))))
        best = max(best, max(cands))
    return best


def averaged_discrepancy(N: int, Q: int, target: str = "liouville") -> float:
    """``sum_{q <= Q}`` of the per-modulus discrepancy for ``lambda`` or primes."""
    N, Q = int(N), int(Q)
    if not 1 <= Q <= N:
        raise InputError(f"need 1 <= Q <= N, got Q={Q}, N={N}")
    if target == "liouville":
        return float(np.sum(lambda_discrepancies(N, range(1, Q + 1))))
    if target == "primes":
        return math.fsum(prime_discrepancy(N, q) for q in range(1, Q + 1))
    raise InputError(f"unknown target {target!r}")


def _totient(q: int) -> int:
    result = q
    m = q
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
