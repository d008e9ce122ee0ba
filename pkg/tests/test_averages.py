import math

import numpy as np
import pytest

from gpysieve.arith import factor_segment, liouville_values, sieve_primes
from gpysieve.averages import (
    averaged_discrepancy,
    compute_B,
    discard_slope,
    discarded_mass,
    discarded_mass_curve,
    empirical_averages,
    fit_discard_slope,
    lambda_discrepancies,
    lambda_discrepancy,
    second_moment_ratio,
    prime_moment_ratio,
    predicted_A,
    predicted_S_P,
    prime_discrepancy,
)
from gpysieve.errors import InputError
from gpysieve.tuples import H0, KTuple
from gpysieve.weights import WeightParams, lambda_R

H2 = KTuple.parse("{0,2}")
H3 = KTuple.parse("{0,2,6}")


def test_B_examples():
    assert compute_B("{0}", math.e) == pytest.approx(1.0)
    assert compute_B(H2, math.e) == pytest.approx(1.3203236 / 2, abs=1e-6)
    assert compute_B("{0,2,4}", 10.0) == 0.0


def test_predictions():
    assert predicted_A(6, 0.0) == 1.0
    for k in (2, 6, 9):
        for u in (0.5, 1.0, 2.0):
            assert predicted_A(k, u) == pytest.approx(1 + 2 * u + 2 * u * u * (k + 1) / (k + 2))
    # at u = 0 only the leading term survives
    assert predicted_S_P(3, 0.0, 0.25) == pytest.approx(3 * 0.25 * 2 / 4)


def test_averages_against_direct_loop():
    N, R, u, r = 3000, 12.0, 0.8, 4
    params = WeightParams(H3, R, u)
    rep = empirical_averages(N, params, r, 0.5, segment_length=701)
    seg = factor_segment(N, N + 10)
    z = R**0.5
    A = SP = SL = star = disc = 0.0
    for n in range(N, 2 * N):
        l0 = lambda_R(n, H3, 0, R, seg)
        l1 = lambda_R(n, H3, 1, R, seg)
        a = (l0 + u * 4 / math.log(R) * l1) ** 2
        sp = sum(bool(seg.is_prime[n + h - N]) for h in H3.elements)
        chi = 1 if seg.liouville(n + r) == -1 else 0
        A += a
        SP += a * sp
        SL += a * chi
        if min(seg.least_prime_factor(n + h) for h in H3.elements) <= z:
            disc += a
        else:
            star += a * (sp + chi)
    assert rep.A_emp == pytest.approx(A / N, rel=1e-9)
    assert rep.S_P_emp == pytest.approx(SP / N, rel=1e-9)
    assert rep.S_lambda_emp == pytest.approx(SL / N, rel=1e-9)
    assert rep.S_star_emp == pytest.approx(star / N, rel=1e-9)
    assert rep.discarded_mass_ratio == pytest.approx(disc / A, rel=1e-9)


def test_average_invariants():
    params = WeightParams(H0, (10**5) ** 0.25, 1.0)
    rep = empirical_averages(10**5, params, 8, 0.2)
    assert rep.A_emp >= 0 and rep.S_P_emp >= 0 and rep.S_lambda_emp >= 0
    assert rep.S_lambda_emp <= rep.A_emp
    assert rep.S_P_emp <= rep.k * rep.A_emp
    assert rep.S_star_emp <= rep.S_emp + 1e-12
    d = rep.to_dict()
    assert d["S_minus_A_sign"] in (-1, 0, 1)
    assert set(rep.csv_row()) >= {"N", "A_emp", "A_pred", "B"}


def test_worker_count_does_not_change_results():
    params = WeightParams(H2, 20.0, 1.0)
    one = empirical_averages(40_000, params, 4, 0.3, segment_length=5000, workers=1)
    two = empirical_averages(40_000, params, 4, 0.3, segment_length=5000, workers=2)
    assert one.to_dict() == two.to_dict()


def test_discarded_mass_curve():
    params = WeightParams(H3, 100.0, 1.0)
    etas = [0.1, 0.14, 0.2, 0.4, 0.6, 0.9]
    curve = discarded_mass_curve(20_000, params, etas)
    assert curve[0] == 0.0  # 100^0.1 < 2
    assert np.all(np.diff(curve) >= 0)
    assert discarded_mass(20_000, params, 0.4) == curve[3]
    assert fit_discard_slope(etas[1:], curve[1:]) == pytest.approx(max(curve[1:] / np.array(etas[1:])))
    slope = discard_slope(20_000, params)
    for e, c in zip(etas, curve):
        assert c <= slope.bound(e) * (1 + 1e-12)
    with pytest.raises(InputError):
        discarded_mass(20_000, params, 1.5)


def test_moment_ratios_reasonable():
    N = 10**5
    R = N**0.25
    assert 0.5 < second_moment_ratio(N, H2, R) < 1.5
    assert 0.5 < prime_moment_ratio(N, H2, R) < 1.5
    assert 0.3 < second_moment_ratio(N, H2, R, 0, 1) < 2.0


def test_lambda_discrepancy_examples():
    assert lambda_discrepancy(10, 1) == 2
    lam = liouville_values(1000).astype(int)
    for q in (1, 2, 3, 7, 30, 999):
        brute = 0
        for a in range(q):
            s = 0
            for n in range(1, 1001):
                if n % q == a % q:
                    s += lam[n - 1]
                    brute = max(brute, abs(s))
        assert lambda_discrepancy(1000, q) == brute
        assert 1 <= brute <= -(-1000 // q)
    Es = lambda_discrepancies(1000, [1, 2, 3])
    assert Es.tolist() == [lambda_discrepancy(1000, q) for q in (1, 2, 3)]
    assert averaged_discrepancy(1000, 1) == np.max(np.abs(np.cumsum(lam)))


def test_prime_discrepancy_against_grid():
    N = 300
    ps = sieve_primes(N).tolist()
    for q in (1, 2, 3, 4, 6):
        phi = sum(1 for a in range(1, q + 1) if math.gcd(a, q) == 1)
        ys = np.arange(2, N + 1e-9, 1e-3)
        best = 0.0
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            cls = np.array([p for p in ps if p % q == a], dtype=float)
            theta = np.concatenate(([0.0], np.cumsum(np.log(cls))))
            idx = np.searchsorted(cls, ys, side="right")
            best = max(best, float(np.max(np.abs(theta[idx] - ys / phi))))
        got = prime_discrepancy(N, q)
        assert best <= got + 1e-9
        assert got - best < 2e-3


def test_discrepancy_errors():
    with pytest.raises(InputError):
        lambda_discrepancy(10, 11)
    with pytest.raises(InputError):
        averaged_discrepancy(100, 5, "bogus")
