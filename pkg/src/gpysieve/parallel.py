"""Ordered map over work items, serial or with a process pool.

Results always come back in input order, so reductions over them are
independent of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def chunk_ranges(start: int, stop: int, size: int) -> Sequence[tuple[int, int]]:
    """Split ``[start, stop)`` into consecutive ``[lo, hi)`` pieces of ``size``."""
    out = []
    lo = start
    while lo < stop:
        hi = min(lo + size, stop)
        out.append((lo, hi))
        lo = hi
    return out
