import math

import pytest


def trial_factor(n: int) -> list[int]:
    """Prime factors of ``n`` with multiplicity, by plain trial division."""
    out = []
    p = 2
    while p * p <= n:
        while n % p == 0:
            out.append(p)
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def trial_is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, math.isqrt(n) + 1))


@pytest.fixture(scope="session")
def primes_to_million():
    """Trial-division prime list up to 10^6, built once for the session."""
    primes = [2]
    for n in range(3, 10**6 + 1, 2):
        r = math.isqrt(n)
        for p in primes:
            if p > r:
                primes.append(n)
                break
            if n % p == 0:
                break
        else:
            primes.append(n)
    return primes


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
