"""Runtime tunables.

The memory budget is read from ``GPYSIEVE_MEMORY_MIB`` (default 2048) every
time it is queried, so tests can change it with ``monkeypatch.setenv``.
"""

from __future__ import annotations

import os

from .errors import ResourceError

MEMORY_ENV_VAR = "GPYSIEVE_MEMORY_MIB"
DEFAULT_MEMORY_MIB = 2048

#: Default number of integers per factored segment.
SEGMENT_LENGTH = 1 << 20

#: Largest integer the kernels accept (int64 arithmetic).
MAX_INT = 2**63 - 1


def memory_budget_bytes() -> int:
    raw = os.environ.get(MEMORY_ENV_VAR)
    if raw is None or raw == "":
        return DEFAULT_MEMORY_MIB * 2**20
    try:
        mib = float(raw)
    except ValueError as exc:
        raise ResourceError(f"{MEMORY_ENV_VAR}={raw!r} is not a number") from exc
    return int(mib * 2**20)


def check_allocation(nbytes: int, what: str) -> None:
    budget = memory_budget_bytes()
    if nbytes > budget:
        raise ResourceError(
            f"{what} needs ~{nbytes / 2**20:.1f} MiB, budget is "
            f"{budget / 2**20:.1f} MiB (set {MEMORY_ENV_VAR})"
        )
