import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpysieve.errors import InputError
from gpysieve.thresholds import (
    STATED_C1,
    STATED_C2,
    constants_table,
    gap_constant,
    feasible_u_range,
    inequality_coefficients,
    ratio_threshold,
    theta_threshold,
    threshold_report,
)
from gpysieve.tuples import CATALOG, KTuple


def brute_feasible(k, theta, variant, u):
    m = k if variant == "all-k" else k - 1
    L = Fraction(2, k + 1) + Fraction(6, k + 2) * u + Fraction(6 * (k + 1), (k + 2) * (k + 3)) * u * u
    Q = 1 + 2 * u + Fraction(2 * (k + 1), k + 2) * u * u
    return m * theta * L > Q


def test_exact_rational_endpoints():
    s = feasible_u_range(6, Fraction(1, 2), "all-k")
    assert len(s.intervals) == 1
    assert s.intervals[0].lo == Fraction(4, 7) and isinstance(s.intervals[0].lo, Fraction)
    assert s.intervals[0].hi == math.inf
    s = feasible_u_range(9, Fraction(1, 2), "k-minus-1")
    assert s.intervals[0].lo == Fraction(11, 10) and s.intervals[0].hi == math.inf
    assert str(s) == "(11/10, inf)"


def test_empty_set_for_pairs():
    assert feasible_u_range(2, Fraction(1, 2), "all-k").is_empty


def test_discriminant_roots_closed_form():
    assert theta_threshold(2, "all-k") == pytest.approx((16 - math.sqrt(136)) / 6, abs=1e-12)
    assert theta_threshold(5, "all-k") == pytest.approx((35 - math.sqrt(385)) / 30, abs=1e-12)
    assert theta_threshold(3, "k-minus-1") == pytest.approx((5 - math.sqrt(10)) / 3 * 1.5, abs=1e-12)


@pytest.mark.parametrize(
    "k,variant,stated",
    [(k, "all-k", v) for k, v in STATED_C1.items()] + [(k, "k-minus-1", v) for k, v in STATED_C2.items()],
)
def test_thresholds_below_stated(k, variant, stated):
    th = theta_threshold(k, variant)
    assert th < stated and stated - th <= 0.01
    assert ratio_threshold(k, variant)[0] == pytest.approx(th, abs=1e-9)


@pytest.mark.parametrize("k", range(2, 10))
def test_threshold_below_one(k):
    assert theta_threshold(k, "all-k") < 1
    if k >= 3:
        assert theta_threshold(k, "k-minus-1") < 1


@settings(max_examples=150, deadline=None)
@given(
    st.integers(min_value=2, max_value=9),
    st.sampled_from(["all-k", "k-minus-1"]),
    st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=200),
    st.fractions(min_value=-5, max_value=5, max_denominator=50),
)
def test_feasible_set_matches_pointwise(k, variant, theta, u):
    if variant == "k-minus-1" and k < 3:
        return
    s = feasible_u_range(k, theta, variant)
    if u in s.excluded:
        return
    on_boundary = any(u == iv.lo or u == iv.hi for iv in s.intervals)
    if not on_boundary:
        assert (u in s) == brute_feasible(k, theta, variant, u)


@settings(max_examples=100, deadline=None)
@given(
    st.integers(min_value=2, max_value=9),
    st.fractions(min_value=Fraction(1, 10), max_value=1, max_denominator=100),
    st.fractions(min_value=Fraction(1, 100), max_value=Fraction(1, 5), max_denominator=100),
    st.fractions(min_value=-4, max_value=6, max_denominator=40),
)
def test_monotone_in_theta(k, theta, step, u):
    hi = min(theta + step, Fraction(1))
    lo_set = feasible_u_range(k, theta, "all-k")
    hi_set = feasible_u_range(k, hi, "all-k")
    if u in lo_set:
        assert u in hi_set


@pytest.mark.parametrize("k", range(2, 10))
def test_vertex_inside_just_above_threshold(k):
    for variant in ("all-k", "k-minus-1"):
        if variant == "k-minus-1" and k < 3:
            continue
        th = Fraction(theta_threshold(k, variant)) + Fraction(1, 10**6)
        a, b, _ = inequality_coefficients(k, th, variant)
        vertex = -b / (2 * a)
        s = feasible_u_range(k, th, variant)
        assert not s.is_empty and vertex in s


@pytest.mark.parametrize("k", range(2, 10))
def test_zero_u_never_works_at_half(k):
    for theta in (Fraction(1, 2), Fraction(11, 20)):
        assert 0 not in feasible_u_range(k, theta, "all-k")


def test_report_and_validation():
    rep = threshold_report(6, "1/2")
    assert rep.u_interval.lower == Fraction(4, 7)
    assert rep.to_dict()["u_interval"] == "(4/7, inf)"
    with pytest.raises(InputError):
        feasible_u_range(6, 0, "all-k")
    with pytest.raises(InputError):
        feasible_u_range(6, Fraction(1, 2), "nope")


def test_gap_constant_examples():
    assert gap_constant("C3", KTuple.parse("{0,2,6,8}"), "even") == (8, 4)
    assert gap_constant("C5", KTuple.parse("{0,2,6}")) == (6, 6)
    assert gap_constant("C6", CATALOG[8]) == (14, 12)


def test_constants_table_matches():
    rows = constants_table()
    exact = [r for r in rows if r["constant"] in ("C3", "C4", "C5", "C6")]
    assert exact and all(r["derived_value"] == r["paper_value"] for r in exact)
    derived = {(r["constant"], r["k"]): r["derived_value"] for r in exact}
    assert [derived[("C3", k)] for k in range(2, 6)] == [2, 6, 8, 12]
    assert [derived[("C4", k)] for k in range(2, 6)] == [1, 3, 4, 7]
    assert [derived[("C5", k)] for k in range(3, 10)] == [6, 8, 12, 16, 20, 26, 30]
    assert [derived[("C6", k)] for k in range(3, 10)] == [4, 6, 6, 10, 12, 14, 18]
    half = [r for r in rows if r["constant"] == "C1" and r["k"] == 6]
    assert half and half[0]["u_min"] == Fraction(4, 7)
