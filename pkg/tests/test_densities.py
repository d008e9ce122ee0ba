import itertools
from fractions import Fraction

import pytest

from gpysieve.densities import (
    STATED_D0,
    STATED_D1,
    density_bounds,
    density_table,
    multiplicity_audit,
    primorial,
    tstar_inequality_holds,
)
from gpysieve.errors import InputError


def test_primorial():
    assert primorial(2) == (2, 1)
    assert primorial(6) == (30, 8)
    assert primorial(9) == (210, 48)


def test_stated_values_exact():
    assert density_bounds(9).d1_bound == Fraction(1, 315)
    assert density_bounds(6).d0_bound == Fraction(2, 273)
    assert density_bounds(2).d0_bound == Fraction(1, 12)
    for k, v in STATED_D0.items():
        assert density_bounds(k).d0_bound == v
    for k, v in STATED_D1.items():
        assert density_bounds(k).d1_bound == v


@pytest.mark.parametrize("k", range(2, 17))
def test_closed_forms(k):
    rep = density_bounds(k)
    assert rep.d1_bound * k * (k - 1) * Fraction(rep.P, rep.phi_P) == 1
    assert rep.d0_bound == 1 / (4 * k + Fraction(k * (k - 1) * rep.P, rep.phi_P))
    assert 0 < rep.d0_bound < 1 and 0 < rep.d1_bound < 1
    assert isinstance(rep.d0_bound, Fraction)


def test_table_rows():
    rows = density_table()
    assert all(r["match"] for r in rows)
    assert any(r["k"] == 9 and r["d1_bound"] == Fraction(1, 315) for r in rows)
    assert len(rows) == len(STATED_D0) + len(STATED_D1)


def test_audit_pairs():
    a = multiplicity_audit(2, 12)
    assert a.M == 6
    assert a.distinct_d1 >= 3
    assert a.max_multiplicity_d1 <= a.M - 1
    assert a.ok


def test_audit_against_direct_enumeration():
    a = multiplicity_audit(3, 30)
    pool = [m for m in range(1, 31) if m % 2 and m % 3]
    diffs = {y - x for H in itertools.combinations(pool, 3) for x, y in itertools.combinations(H, 2)}
    assert a.distinct_d1 == len(diffs)
    assert a.distinct_d1 >= -(-a.M // 6)
    assert a.ok
    assert multiplicity_audit(4, 30).ok


def test_audit_guard():
    with pytest.raises(InputError):
        multiplicity_audit(9, 2000)
    with pytest.raises(InputError):
        density_bounds(1)


def test_tstar():
    assert tstar_inequality_holds()
