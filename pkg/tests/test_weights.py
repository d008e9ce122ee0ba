import math

import numpy as np
import pytest

from gpysieve.arith import factor_segment, mobius_up_to
from gpysieve.errors import InputError, PreconditionError
from gpysieve.tuples import KTuple
from gpysieve.weights import (
    WeightParams,
    batch_lambda_R,
    batch_lambda_window,
    batch_weight_a,
    lambda_R,
    squarefree_terms,
    weight_a,
)

H2 = KTuple.parse("{0,2}")
H3 = KTuple.parse("{0,2,6}")


def naive_lambda(n, H, l, R, mu):
    """Test every d <= R for d | P_H(n)."""
    P = math.prod(n + h for h in H.elements)
    e = H.k + l
    total = math.fsum(
        mu[d] * math.log(R / d) ** e for d in range(1, math.floor(R) + 1) if mu[d] and P % d == 0
    )
    return total / math.factorial(e)


@pytest.mark.parametrize("H", [H2, H3], ids=str)
@pytest.mark.parametrize("R", [10, 50, 100])
def test_per_n_matches_naive_oracle(H, R):
    mu = mobius_up_to(100)
    seg = factor_segment(2, 10**4 + H.diameter)
    for l in (0, 1):
        for n in range(1, 10**4 + 1):
            got = lambda_R(n, H, l, R, seg)
            want = naive_lambda(n, H, l, R, mu)
            assert got == pytest.approx(want, rel=1e-9, abs=1e-9 * math.log(R) ** (H.k + l))


def test_n_equals_one_example():
    seg = factor_segment(2, 10)
    assert lambda_R(1, H2, 0, 3, seg) == pytest.approx(math.log(3) ** 2 / 2)


def test_rough_polynomial_gives_top_term():
    R = 20.0
    seg = factor_segment(10**6, 200)
    for n in range(10**6, 10**6 + 150):
        if all(seg.least_prime_factor(n + h) > R for h in H3.elements):
            assert lambda_R(n, H3, 1, R, seg) == pytest.approx(math.log(R) ** 4 / 24)


def test_dual_path_window():
    R, N, w = 50, 10**5, 10**4
    batch = batch_lambda_window(N, w, H2, 0, R)
    seg = factor_segment(N, w + 2)
    per_n = np.array([lambda_R(n, H2, 0, R, seg) for n in range(N, N + w)])
    assert np.max(np.abs(batch - per_n)) < 1e-6
    scale = np.maximum(np.abs(per_n), 1.0)
    assert np.max(np.abs(batch - per_n) / scale) < 1e-9


def test_dual_path_l1_and_plain_summation():
    R = 100
    seg = factor_segment(5000, 2000 + H3.diameter)
    per_n = np.array([lambda_R(n, H3, 1, R, seg) for n in range(5000, 7000)])
    for comp in (True, False):
        batch = batch_lambda_window(5000, 2000, H3, 1, R, compensated=comp)
        assert np.max(np.abs(batch - per_n)) < 1e-8


def test_small_R_is_constant():
    R = 1.7
    vals = batch_lambda_window(100, 500, H3, 0, R)
    assert np.allclose(vals, math.log(R) ** 3 / 6, rtol=0, atol=1e-15)


def test_batch_full_range_helper():
    out = batch_lambda_R(1000, H2, 0, 30)
    assert out.shape == (1000,)
    assert np.allclose(out, batch_lambda_window(1000, 1000, H2, 0, 30))


def test_terms_visit_squarefree_with_roots():
    terms = squarefree_terms(H2, 60.0)
    mu = mobius_up_to(60)
    ds = [d for d, _, _ in terms]
    assert ds == [d for d in range(1, 61) if mu[d] != 0]
    for d, m, roots in terms:
        assert m == mu[d]
        assert list(roots) == [a for a in range(d) if (a * (a + 2)) % d == 0]


def test_depends_only_on_small_prime_set():
    R = 30
    seg = factor_segment(10**5, 5000)
    seen = {}
    for n in range(10**5, 10**5 + 4990):
        key = frozenset(p for h in H2.elements for p in seg.distinct_prime_factors(n + h) if p <= R)
        v = lambda_R(n, H2, 0, R, seg)
        if key in seen:
            assert v == seen[key]
        seen[key] = v


def test_weight_a_recomposition():
    params = WeightParams(H2, 40.0, u=0.7)
    rng = np.random.default_rng(1)
    ns = rng.integers(10**5, 2 * 10**5, size=10)
    seg = factor_segment(10**5, 10**5 + 3)
    batch = batch_weight_a(10**5, 10**5, params)
    for n in ns.tolist():
        l0 = lambda_R(n, H2, 0, 40.0, seg)
        l1 = lambda_R(n, H2, 1, 40.0, seg)
        want = (l0 + 0.7 * 3 / math.log(40.0) * l1) ** 2
        assert weight_a(n, params, seg) == pytest.approx(want, rel=1e-12)
        assert batch[n - 10**5] == pytest.approx(want, rel=1e-9, abs=1e-9)
    assert np.all(batch >= 0)
    zero = WeightParams(H2, 40.0, u=0.0)
    n = int(ns[0])
    assert weight_a(n, zero, seg) == lambda_R(n, H2, 0, 40.0, seg) ** 2


def test_input_validation():
    seg = factor_segment(2, 100)
    with pytest.raises(InputError):
        lambda_R(5, H2, 0, 1.0, seg)
    with pytest.raises(InputError):
        lambda_R(5, H2, 9, 10, seg)
    with pytest.raises(PreconditionError):
        lambda_R(500, H2, 0, 10, seg)
    with pytest.raises(InputError):
        WeightParams(H2, 10.0, u=float("inf"))
