"""Admissible tuples, residue counts and the singular series.

A tuple ``H = {h_1 < ... < h_k}`` is admissible when it misses at least one
residue class modulo every prime.  Only primes ``p <= k`` can be fully
covered, so admissibility is a finite check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .arith import sieve_primes
from .errors import InputError

__all__ = [
    "KTuple",
    "SingularSeriesValue",
    "CATALOG",
    "H0",
    "H1",
    "residue_count",
    "is_admissible",
    "singular_series",
    "min_diameter_search",
    "roots_mod",
    "family_tuple",
    "squarefree_factor",
]

MAX_K = 64
DEFAULT_TRUNCATION = 10**7


@dataclass(frozen=True)
class KTuple:
    """Strictly increasing non-negative integers ``h_1 < ... < h_k``."""

    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(h) for h in self.elements)
        object.__setattr__(self, "elements", els)
        if not els:
            raise InputError("a tuple needs at least one element")
        if len(els) > MAX_K:
            raise InputError(f"k = {len(els)} exceeds the supported maximum {MAX_K}")
        if els[0] < 0:
            raise InputError(f"elements must be >= 0, got {els[0]}")
        if any(b <= a for a, b in zip(els, els[1:])):
            raise InputError(f"elements must be strictly increasing: {els}")

    @classmethod
    def of(cls, values: Iterable[int]) -> "KTuple":
        """Build from any iterable, sorting it and shifting so the minimum is 0
        when negatives are present."""
        vals = sorted(set(int(v) for v in values))
        if vals and vals[0] < 0:
            vals = [v - vals[0] for v in vals]
        return cls(tuple(vals))

    @classmethod
    def parse(cls, text: str) -> "KTuple":
        """Parse the text form ``"{0,4,6,10,12,16}"``."""
        s = text.strip()
        if s.startswith("{") and s.endswith("}"):
            s = s[1:-1]
        elif s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        try:
            vals = [int(tok) for tok in s.replace(" ", "").split(",") if tok != ""]
        except ValueError as exc:
            raise InputError(f"malformed tuple {text!r}") from exc
        return cls(tuple(vals))

    @property
    def k(self) -> int:
        return len(self.elements)

    @property
    def diameter(self) -> int:
        return self.elements[-1] - self.elements[0]

    def differences(self) -> set[int]:
        e = self.elements
        return {e[j] - e[i] for i in range(len(e)) for j in range(i + 1, len(e))}

    def reflect(self) -> "KTuple":
        top = self.elements[-1]
        return KTuple(tuple(sorted(top - h for h in self.elements)))

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return "{" + ",".join(map(str, self.elements)) + "}"


def _as_tuple(H) -> KTuple:
    if isinstance(H, KTuple):
        return H
    if isinstance(H, str):
        return KTuple.parse(H)
    return KTuple.of(H)


H0 = KTuple((0, 4, 6, 10, 12, 16))
H1 = KTuple((0, 2, 6, 8, 12, 18, 20, 26, 30))

#: Admissible k-tuples of minimal diameter for 2 <= k <= 8, plus the 9-tuple H1.
CATALOG: dict[int, KTuple] = {
    2: KTuple((0, 2)),
    3: KTuple((0, 2, 6)),
    4: KTuple((0, 2, 6, 8)),
    5: KTuple((0, 4, 6, 10, 12)),
    6: H0,
    7: KTuple((0, 2, 6, 8, 12, 18, 20)),
    8: KTuple((0, 2, 6, 8, 12, 18, 20, 26)),
    9: H1,
}


def residue_count(H, p: int) -> int:
    """Number of residue classes mod ``p`` occupied by ``H``."""
    H = _as_tuple(H)
    return len({h % p for h in H.elements})


def is_admissible(H) -> bool:
    H = _as_tuple(H)
    return all(residue_count(H, p) < p for p in sieve_primes(H.k).tolist())


@dataclass(frozen=True)
class SingularSeriesValue:
    value: float
    relative_error_bound: float
    truncation_prime: int

    def __float__(self):
        return self.value


def _tail_prime_for(k: int, target_rel_err: float) -> int:
    # |log local factor| <= k(k-1)/p^2 once p >= 4k, so the tail past P is
    # bounded by k(k-1) * sum_{n > P} n^-2 < k(k-1)/P.
    if k == 1:
        return 4
    return math.ceil(k * (k - 1) / math.log1p(target_rel_err))


def singular_series(
    H, target_rel_err: float = 1e-6, truncation: int | None = None
) -> SingularSeriesValue:
    """Euler product ``prod_p (1 - nu_p/p)(1 - 1/p)^-k``.

    Primes up to ``max(k, diameter)`` use their exact residue counts; every
    larger prime has ``nu_p = k``.  The product is cut at a prime ``P`` large
    enough that the proven tail bound ``expm1(k(k-1)/P)`` meets
    ``target_rel_err``.  ``truncation`` (default ``DEFAULT_TRUNCATION``) only
    ever raises ``P``.
    """
    H = _as_tuple(H)
    if not target_rel_err > 0:
        raise InputError("target_rel_err must be > 0")
    if not is_admissible(H):
        return SingularSeriesValue(0.0, 0.0, 0)
    k = H.k
    exact_limit = max(k, H.diameter)
    need = max(_tail_prime_for(k, target_rel_err), 4 * k, exact_limit + 1)
    P = max(need, DEFAULT_TRUNCATION if truncation is None else int(truncation))
    primes = sieve_primes(P)
    split = int(np.searchsorted(primes, exact_limit, side="right"))

    logs = []
    for p in primes[:split].tolist():
        nu = residue_count(H, p)
        logs.append(math.log1p(-nu / p) - k * math.log1p(-1.0 / p))
    generic = primes[split:].astype(np.float64)
    if generic.size:
        tail = np.log1p(-k / generic) - k * np.log1p(-1.0 / generic)
        logs.append(math.fsum(tail.tolist()))
    value = math.exp(math.fsum(logs))
    bound = 0.0 if k == 1 else math.expm1(k * (k - 1) / P)
    return SingularSeriesValue(value, bound, int(primes[-1]))


def min_diameter_search(k: int) -> tuple[int, KTuple]:
    """Smallest diameter of an admissible k-tuple, with the lexicographically
    least witness normalised to ``h_1 = 0``.

    Every diameter from ``k - 1`` upward is searched exhaustively; branches are
    cut as soon as the partial tuple covers every class modulo some prime
    ``p <= k``.
    """
    k = int(k)
    if not 2 <= k <= 9:
        raise InputError(f"k must be in [2, 9], got {k}")
    small = sieve_primes(k).tolist()
    counts = [[0] * p for p in small]
    used = [0] * len(small)

    def add(h: int) -> bool:
        ok = True
        for i, p in enumerate(small):
            c = counts[i]
            c[h % p] += 1
            if c[h % p] == 1:
                used[i] += 1
                ok = ok and used[i] < p
        return ok

    def remove(h: int) -> None:
        for i, p in enumerate(small):
            c = counts[i]
            c[h % p] -= 1
            if c[h % p] == 0:
                used[i] -= 1

    def extend(chosen: list[int], start: int, D: int) -> bool:
        need = k - 2 - len(chosen)
        if need == 0:
            return True
        for h in range(start, D - need + 1):
            if add(h):
                chosen.append(h)
                if extend(chosen, h + 1, D):
                    return True
                chosen.pop()
            remove(h)
        return False

    D = k - 1
    while True:
        chosen: list[int] = []
        ok = add(0)
        if add(D) and ok and extend(chosen, 1, D):
            return D, KTuple((0, *chosen, D))
        remove(D)
        remove(0)
        D += 1


def squarefree_factor(d: int) -> list[int]:
    """Distinct primes of a squarefree ``d``; raises for non-squarefree input."""
    d = int(d)
    if d < 1:
        raise InputError(f"d must be >= 1, got {d}")
    out = []
    m = d
    p = 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                raise InputError(f"{d} is not squarefree")
            out.append(p)
        p += 1 if p == 2 else 2
    if m > 1:
        out.append(m)
    return out


@lru_cache(maxsize=4096)
def _roots_cached(elements: tuple[int, ...], d: int) -> tuple[int, ...]:
    roots = [0]
    mod = 1
    for p in squarefree_factor(d):
        local = sorted({(-h) % p for h in elements})
        # CRT: x = r (mod mod), x = s (mod p)
        inv = pow(mod, -1, p) if mod > 1 else 1
        nxt = []
        for r in roots:
            for s in local:
                t = ((s - r) * inv) % p
                nxt.append(r + mod * t)
        roots = nxt
        mod *= p
    return tuple(sorted(roots))


def roots_mod(H, d: int) -> list[int]:
    """All residues ``a mod d`` with ``P_H(a) = prod (a + h_i) = 0 (mod d)``."""
    H = _as_tuple(H)
    return list(_roots_cached(H.elements, int(d)))


def family_tuple(kind: str, param: int) -> KTuple:
    """``generalized-pair`` gives ``{0, 2d}``; ``triple-6m`` gives ``{0, 6m, 12m}``."""
    param = int(param)
    if param == 0:
        raise InputError("param must be non-zero")
    if kind == "generalized-pair":
        return KTuple.of((0, 2 * param))
    if kind == "triple-6m":
        return KTuple.of((0, 6 * param, 12 * param))
    raise InputError(f"unknown tuple family {kind!r}")
