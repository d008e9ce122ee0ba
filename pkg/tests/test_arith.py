import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpysieve import arith
from gpysieve.arith import (
    factor_segment,
    iter_segments,
    least_prime_factor_exceeds,
    liouville_values,
    mobius_up_to,
    sieve_primes,
)
from gpysieve.config import MEMORY_ENV_VAR
from gpysieve.errors import InputError, ResourceError

from conftest import trial_factor, trial_is_prime


def test_small_sieves():
    assert sieve_primes(10).tolist() == [2, 3, 5, 7]
    assert sieve_primes(1).tolist() == []
    assert sieve_primes(2).tolist() == [2]


def test_prime_count_matches_trial_division(primes_to_million):
    ps = sieve_primes(10**6)
    assert ps.size == len(primes_to_million) == 78498
    assert ps.tolist() == primes_to_million


def test_factor_examples():
    seg = factor_segment(2, 100)
    assert (seg.omega(12), seg.liouville(12), seg.least_prime_factor(12)) == (3, -1, 2)
    assert (seg.omega(49), seg.liouville(49), seg.least_prime_factor(49)) == (2, 1, 7)
    assert seg.factorize(12) == [(2, 2), (3, 1)]
    assert seg.factorize(1) == []
    assert least_prime_factor_exceeds(35, 4)
    assert not least_prime_factor_exceeds(35, 5)
    assert least_prime_factor_exceeds(97, 96)


def test_window_matches_oracle():
    start, length = 10**6, 10**3
    seg = factor_segment(start, length)
    for n in range(start, start + length):
        fs = trial_factor(n)
        i = n - start
        assert seg.big_omega[i] == len(fs)
        assert seg.lam[i] == (-1) ** len(fs)
        assert seg.lpf[i] == fs[0]
        assert bool(seg.is_prime[i]) == (len(fs) == 1)


def test_segment_invariants():
    seg = factor_segment(2, 50_000)
    n = np.arange(2, 50_002)
    assert np.all(seg.lam == np.where(seg.big_omega % 2 == 0, 1, -1))
    assert np.all(seg.is_prime == (seg.lpf == n))
    assert np.all(seg.big_omega >= 1)
    assert np.all((seg.big_omega == 1) == seg.is_prime)


def test_factor_reconstruction():
    seg = factor_segment(999_000, 5_000)
    for n in range(999_000, 1_004_000, 7):
        fs = seg.factorize(n)
        assert math.prod(p**e for p, e in fs) == n
        assert [p for p, _ in fs] == sorted(p for p, _ in fs)
        assert sum(e for _, e in fs) == seg.omega(n)


def test_segment_split_independence():
    whole = factor_segment(500_000, 20_000)
    a = factor_segment(500_000, 7_777)
    b = factor_segment(507_777, 12_223)
    for field in ("lpf", "big_omega", "lam", "is_prime"):
        joined = np.concatenate([getattr(a, field), getattr(b, field)])
        assert np.array_equal(getattr(whole, field), joined)
    pieces = list(iter_segments(500_000, 520_000, 3_000))
    assert np.array_equal(np.concatenate([p.lam for p in pieces]), whole.lam)


def test_complete_multiplicativity():
    lam = liouville_values(200_000)
    rng = np.random.default_rng(0)
    for _ in range(2000):
        a = int(rng.integers(1, 400))
        b = int(rng.integers(1, 200_000 // a + 1))
        assert lam[a * b - 1] == lam[a - 1] * lam[b - 1]


def test_liouville_partial_sums():
    assert np.cumsum(liouville_values(10)).tolist() == [1, 0, -1, 0, -1, 0, -1, -2, -1, 0]


def test_mobius():
    mu = mobius_up_to(30)
    expected = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0, -1, 0, -1, 0]
    assert mu[1:21].tolist() == expected


def test_large_integers_window():
    start = 2**50
    seg = factor_segment(start, 256)
    for n in range(start, start + 256, 5):
        assert math.prod(p**e for p, e in seg.factorize(n)) == n


def test_streamed_base_primes_match(monkeypatch):
    start = 10**12 + 39
    ref = factor_segment(start, 2000)
    monkeypatch.setattr(arith, "BASE_PRIME_LIMIT", 5000)
    monkeypatch.setattr(arith, "PRIME_BLOCK", 1 << 14)
    streamed = factor_segment(start, 2000)
    assert streamed.large_factors
    for name in ("lpf", "big_omega", "lam", "is_prime"):
        assert np.array_equal(getattr(ref, name), getattr(streamed, name))
    for n in range(start, start + 2000, 3):
        assert streamed.factorize(n) == ref.factorize(n)


def test_prime_blocks():
    got = np.concatenate(list(arith.iter_prime_blocks(10, 10_000, block=333)))
    assert got.tolist() == [p for p in sieve_primes(10_000).tolist() if p >= 10]


def test_input_errors():
    with pytest.raises(InputError):
        factor_segment(1, 10)
    with pytest.raises(InputError):
        factor_segment(10, 0)


def test_memory_budget(monkeypatch):
    monkeypatch.setenv(MEMORY_ENV_VAR, "1")
    with pytest.raises(ResourceError):
        factor_segment(2, 50_000_000)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=10**12), st.integers(min_value=1, max_value=300))
def test_property_window_matches_trial_division(start, length):
    seg = factor_segment(start, length)
    for n in range(start, start + length, max(1, length // 10)):
        fs = trial_factor(n)
        i = n - start
        assert seg.lpf[i] == fs[0]
        assert seg.big_omega[i] == len(fs)
        assert bool(seg.is_prime[i]) == trial_is_prime(n)
