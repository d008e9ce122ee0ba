"""Feasibility of the weighted-sieve inequality in the mixing parameter ``u``.

With ``c = k`` (all components may be prime) or ``c = k - 1`` (one component
is reserved for the parity condition) the argument needs some ``u`` with

    c * theta * L(u) > Q(u),
    L(u) = 2/(k+1) + 6u/(k+2) + 6u^2 (k+1) / ((k+2)(k+3)),
    Q(u) = 1 + 2u + 2u^2 (k+1) / (k+2).

All coefficients are kept as :class:`fractions.Fraction`.  Irrational
endpoints are located by bisection on the exact polynomial.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from scipy.optimize import minimize_scalar

from .errors import InputError
from .tuples import CATALOG, KTuple, _as_tuple

__all__ = [
    "Interval",
    "FeasibleSet",
    "ThresholdReport",
    "inequality_coefficients",
    "feasible_u_range",
    "theta_discriminant",
    "theta_threshold",
    "ratio_threshold",
    "threshold_report",
    "gap_constant",
    "constants_table",
    "STATED_C1",
    "STATED_C2",
    "STATED_C3",
    "STATED_C4",
    "STATED_C5",
    "STATED_C6",
]

Number = Union[Fraction, float]
VARIANTS = ("all-k", "k-minus-1")

# Levels of distribution at which each k is claimed to work.
STATED_C1 = {2: 0.729, 3: 0.616, 4: 0.554, 5: 0.515}
STATED_C2 = {3: 0.924, 4: 0.739, 5: 0.643, 6: 0.584, 7: 0.544, 8: 0.516}
# Gap bounds deduced from the tuples, keyed by k.
STATED_C3 = {2: 2, 3: 6, 4: 8, 5: 12}
STATED_C4 = {2: 1, 3: 3, 4: 4, 5: 7}
STATED_C5 = {3: 6, 4: 8, 5: 12, 6: 16, 7: 20, 8: 26, 9: 30}
STATED_C6 = {3: 4, 4: 6, 5: 6, 6: 10, 7: 12, 8: 14, 9: 18}


def _multiplier(k: int, variant: str) -> int:
    if variant not in VARIANTS:
        raise InputError(f"variant must be one of {VARIANTS}, got {variant!r}")
    if k < 2:
        raise InputError(f"k must be >= 2, got {k}")
    return k if variant == "all-k" else k - 1


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def inequality_coefficients(k: int, theta, variant: str = "all-k") -> tuple[Fraction, Fraction, Fraction]:
    """``(a, b, c)`` with ``c*theta*L(u) - Q(u) = a u^2 + b u + c``."""
    t = _multiplier(k, variant) * _frac(theta)
    a = 6 * t * (k + 1) / Fraction((k + 2) * (k + 3)) - Fraction(2 * (k + 1), k + 2)
    b = 6 * t / Fraction(k + 2) - 2
    c = 2 * t / Fraction(k + 1) - 1
    return a, b, c


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True)
class Interval:
    """Open interval; ``lo``/``hi`` may be ``-inf``/``inf``."""

    lo: Number
    hi: Number

    def __contains__(self, u) -> bool:
        return self.lo < u < self.hi

    def __str__(self):
        return f"({_fmt(self.lo)}, {_fmt(self.hi)})"


def _fmt(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


@dataclass(frozen=True)
class FeasibleSet:
    """Union of disjoint open intervals (ascending)."""

    intervals: tuple[Interval, ...]
    excluded: tuple[Number, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def lower(self) -> Number | None:
        return self.intervals[0].lo if self.intervals else None

    def __contains__(self, u) -> bool:
        return any(u in iv for iv in self.intervals)

    def __str__(self):
        if not self.intervals:
            return "empty"
        return " U ".join(map(str, self.intervals))


def _is_square(f: Fraction) -> Fraction | None:
    if f < 0:
        return None
    n, d = f.numerator, f.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _poly(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _bisect(coeffs, lo: float, hi: float, tol: float = 1e-13) -> float:
    """Root of the exact polynomial (highest degree first) bracketed by
    ``[lo, hi]``; signs are evaluated exactly."""
    flo, fhi = _poly(coeffs, Fraction(lo)), _poly(coeffs, Fraction(hi))
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("root not bracketed")
    while hi - lo > tol * max(1.0, abs(lo)):
        mid = (lo + hi) / 2
        if mid in (lo, hi):
            break
        fm = _poly(coeffs, Fraction(mid))
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def _quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> tuple[Number, Number]:
    """Real roots ``r1 < r2`` of ``a x^2 + b x + c`` given a positive discriminant."""
    disc = b * b - 4 * a * c
    s = _is_square(disc)
    if s is not None:
        r1, r2 = (-b - s) / (2 * a), (-b + s) / (2 * a)
        return (r1, r2) if r1 < r2 else (r2, r1)
    sq = math.sqrt(float(disc))
    approx = sorted(((-float(b) - sq) / (2 * float(a)), (-float(b) + sq) / (2 * float(a))))
    gap = approx[1] - approx[0]
    roots = []
    for x in approx:
        w = max(gap / 4, 1e-9 * max(1.0, abs(x)))
        roots.append(_bisect((a, b, c), x - w, x + w))
    return roots[0], roots[1]


def feasible_u_range(k: int, theta, variant: str = "all-k") -> FeasibleSet:
    """Exact solution set in ``u`` of ``c*theta*L(u) > Q(u)``."""
    k = int(k)
    th = _frac(theta)
    if not 0 < th <= 1:
        raise InputError(f"theta must be in (0, 1], got {theta}")
    a, b, c = inequality_coefficients(k, th, variant)
    inf = math.inf
    if a == 0:
        if b == 0:
            return FeasibleSet((Interval(-inf, inf),) if c > 0 else ())
        root = -c / b
        return FeasibleSet((Interval(root, inf),) if b > 0 else (Interval(-inf, root),))
    disc = b * b - 4 * a * c
    if a < 0:
        if disc <= 0:
            return FeasibleSet(())
        r1, r2 = _quadratic_roots(a, b, c)
        return FeasibleSet((Interval(r1, r2),))
    if disc < 0:
        return FeasibleSet((Interval(-inf, inf),))
    if disc == 0:
        v = -b / (2 * a)
        return FeasibleSet((Interval(-inf, v), Interval(v, inf)), excluded=(v,))
    r1, r2 = _quadratic_roots(a, b, c)
    return FeasibleSet((Interval(-inf, r1), Interval(r2, inf)))


# ---------------------------------------------------------------- thresholds


def theta_discriminant(k: int, variant: str = "all-k") -> tuple[Fraction, Fraction, Fraction]:
    """Coefficients of ``disc(theta) = b(theta)^2 - 4 a(theta) c(theta)``
    as a quadratic in ``theta`` (highest degree first)."""
    m = _multiplier(k, variant)
    # a, b, c are affine in t = m * theta
    a1, a0 = Fraction(6 * (k + 1), (k + 2) * (k + 3)), -Fraction(2 * (k + 1), k + 2)
    b1, b0 = Fraction(6, k + 2), Fraction(-2)
    c1, c0 = Fraction(2, k + 1), Fraction(-1)
    q2 = b1 * b1 - 4 * a1 * c1
    q1 = 2 * b1 * b0 - 4 * (a1 * c0 + a0 * c1)
    q0 = b0 * b0 - 4 * a0 * c0
    return q2 * m * m, q1 * m, q0


def theta_threshold(k: int, variant: str = "all-k") -> float:
    """Smallest ``theta`` at which the discriminant in ``u`` vanishes."""
    q2, q1, q0 = theta_discriminant(int(k), variant)
    if q2 == 0:
        if q1 == 0:
            raise InputError("degenerate discriminant")
        return float(-q0 / q1)
    disc = q1 * q1 - 4 * q2 * q0
    if disc < 0:
        raise InputError(f"no real threshold for k={k}, {variant}")
    r1, _ = _quadratic_roots(q2, q1, q0)
    return float(r1)


def ratio_threshold(k: int, variant: str = "all-k") -> tuple[float, float]:
    """``min_u Q(u) / (c L(u))`` by numerical minimisation; returns
    ``(theta, u_at_min)``."""
    m = _multiplier(int(k), variant)

    def g(u: float) -> float:
        L = 2 / (k + 1) + 6 * u / (k + 2) + 6 * u * u * (k + 1) / ((k + 2) * (k + 3))
        Q = 1 + 2 * u + 2 * u * u * (k + 1) / (k + 2)
        return Q / (m * L)

    res = minimize_scalar(g, bounds=(-50.0, 50.0), method="bounded", options={"xatol": 1e-12})
    return float(res.fun), float(res.x)


@dataclass
class ThresholdReport:
    k: int
    variant: str
    theta: Fraction | float
    u_interval: FeasibleSet
    theta_root: float
    stated_constant: float | None = None

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "variant": self.variant,
            "theta": str(self.theta),
            "u_interval": str(self.u_interval),
            "theta_root": self.theta_root,
            "stated_constant": self.stated_constant,
        }


def threshold_report(k: int, theta, variant: str = "all-k") -> ThresholdReport:
    stated = (STATED_C1 if variant == "all-k" else STATED_C2).get(int(k))
    return ThresholdReport(
        int(k), variant, _frac(theta), feasible_u_range(k, theta, variant),
        theta_threshold(k, variant), stated,
    )


# ---------------------------------------------------------------- gap constants


def _parity_ok(r: int, parity: str) -> bool:
    if parity == "even":
        return r % 2 == 0
    if parity == "odd":
        return r % 2 == 1
    if parity == "any":
        return True
    raise InputError(f"parity must be 'even', 'odd' or 'any', got {parity!r}")


def gap_constant(rule: str, H, parity: str = "even") -> tuple[int, int]:
    """Gap bound obtained from tuple ``H`` and the witness achieving it.

    ``C3``  min over ``0 < r < h_k``, ``r`` not in ``H``, of
            ``max(diameter, max_i |r - h_i|)``
    ``C4``  min over ``r`` not in ``H`` of ``max_i |r - h_i|``
    ``C5``  the diameter (witness ``h_k``)
    ``C6``  min over ``h_j`` in ``H`` of ``max_i |h_j - h_i|``

    Ties prefer the witness closest to the midpoint of ``H``, then the
    smaller one.  ``parity`` restricts ``r`` for C3/C4.
    """
    H = _as_tuple(H)
    els = H.elements
    lo, hi = els[0], els[-1]
    mid2 = lo + hi  # twice the midpoint

    def spread(x: int) -> int:
        return max(abs(x - h) for h in els)

    def pick(cands):
        if not cands:
            raise InputError(f"no admissible witness for {rule} on {H} with parity {parity!r}")
        return min(cands, key=lambda t: (t[0], abs(2 * t[1] - mid2), t[1]))

    if rule == "C3":
        cands = [
            (max(H.diameter, spread(r)), r)
            for r in range(lo + 1, hi)
            if r not in els and r != 0 and _parity_ok(r, parity)
        ]
        return pick(cands)
    if rule == "C4":
        cands = [
            (spread(r), r)
            for r in range(lo - H.diameter - 1, hi + H.diameter + 2)
            if r not in els and r != 0 and _parity_ok(r, parity)
        ]
        return pick(cands)
    if rule == "C5":
        return H.diameter, hi
    if rule == "C6":
        return pick([(spread(h), h) for h in els])
    raise InputError(f"unknown rule {rule!r}")


def constants_table(catalog: dict[int, KTuple] | None = None) -> list[dict]:
    """Rows ``constant, k, variant, derived_value, paper_value, witness, theta, u_min``."""
    cat = CATALOG if catalog is None else catalog
    rows: list[dict] = []

    def add(constant, k, variant, derived, paper, witness="", theta="", u_min=""):
        rows.append({
            "constant": constant, "k": k, "variant": variant,
            "derived_value": derived, "paper_value": paper,
            "witness": witness, "theta": theta, "u_min": u_min,
        })

    for (k, th) in sorted(STATED_C1.items()):
        fs = feasible_u_range(k, _frac(str(th)), "all-k")
        add("C1", k, "all-k", theta_threshold(k, "all-k"), th, str(cat[k]), str(th), fs.lower)
    fs = feasible_u_range(6, Fraction(1, 2), "all-k")
    add("C1", 6, "all-k", theta_threshold(6, "all-k"), 0.5, str(cat[6]), "0.5", fs.lower)
    for (k, th) in sorted(STATED_C2.items()):
        fs = feasible_u_range(k, _frac(str(th)), "k-minus-1")
        add("C2", k, "k-minus-1", theta_threshold(k, "k-minus-1"), th, str(cat[k]), str(th), fs.lower)
    fs = feasible_u_range(9, Fraction(1, 2), "k-minus-1")
    add("C2", 9, "k-minus-1", theta_threshold(9, "k-minus-1"), 0.5, str(cat[9]), "0.5", fs.lower)

    for k, v in sorted(STATED_C3.items()):
        val, w = gap_constant("C3", cat[k], "any" if k == 2 else "even")
        add("C3", k, "all-k", val, v, f"r={w}", str(STATED_C1[k]))
    for k, v in sorted(STATED_C4.items()):
        val, w = gap_constant("C4", cat[k], "any")
        add("C4", k, "all-k", val, v, f"r={w}", str(STATED_C1[k]))
    for k, v in sorted(STATED_C5.items()):
        val, w = gap_constant("C5", cat[k])
        add("C5", k, "k-minus-1", val, v, f"h_j={w}", str(STATED_C2.get(k, "1/2")))
    for k, v in sorted(STATED_C6.items()):
        val, w = gap_constant("C6", cat[k])
        add("C6", k, "k-minus-1", val, v, f"h_j={w}", str(STATED_C2.get(k, "1/2")))
    return rows
