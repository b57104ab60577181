import csv
import io
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delannoy import congruence as cg
from delannoy.families import d_at_r
from delannoy.multipoly import eval_int


def row(scan, **kw):
    hits = [r for r in scan.rows if all(getattr(r, k) == v for k, v in kw.items())]
    assert len(hits) == 1
    return hits[0]


def test_weighted_square_scan_examples():
    scan = cg.check_thm2_5(3, 1, (0, 2))
    r = row(scan, n=2, r=0, x=1)
    assert (r.value, r.modulus, r.divisible) == (56, 8, True)
    r = row(scan, n=1, r=0, x=0)
    assert r.value == 0 and r.modulus == 2 and r.divisible
    r = row(scan, n=3, r=1, x=2)
    assert r.modulus == 2 * 3**2 * 4**2 * 5**2 and r.divisible
    assert scan.passed


def test_r0_square_scan_examples():
    scan = cg.check_sun_1_4(5, (-3, 3))
    assert row(scan, n=2, x=1).value == 56
    assert all(row(scan, n=1, x=x).divisible for x in range(-3, 4))
    r = row(scan, n=5, x=3)
    assert r.modulus == 50 and r.divisible
    assert scan.passed


def test_power_sum_scan_examples():
    scan = cg.check_sun_1_5(3, 2, (0, 2))
    assert row(scan, n=2, m=1, eps=1, x=1).value == 28
    assert all(r.modulus == 1 for r in scan.rows if r.n == 1)
    r = row(scan, n=3, m=2, eps=-1, x=2)
    assert r.value % 3 == 0
    assert scan.passed


def test_values_against_recurrence_and_integrality():
    assert cg.d_values(3, 0, 1) == [1, 3, 5, 7]
    assert cg.d_values(2, 2, -4) == [1, -7, eval_int(d_at_r(2, 2), {"x": -4})]


def test_small_grids_pass_with_cross_oracle():
    scan = cg.check_thm2_5(12, 2, (-6, 6))
    assert scan.passed and not scan.oracle_mismatches
    assert len(scan.rows) == 12 * 3 * 13


def test_mutated_modulus_is_caught():
    # the weight factor is essential: drop it and divisibility fails somewhere
    rows, _ = cg._row_sun_1_4((6, 2))
    stripped = [cg.ScanRow(r.check, r.n, r.r, r.x, r.m, r.eps, r.value // 6, r.modulus)
                for r in rows]
    assert not all(r.divisible for r in stripped)


def test_csv_format():
    scan = cg.check_sun_1_4(2, (0, 1))
    text = scan.to_csv()
    lines = text.splitlines()
    assert lines[0] == "check,n,r,x,m,eps,value,modulus,divisible"
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 4
    assert parsed[0] == {"check": "sun1.4", "n": "1", "r": "", "x": "0", "m": "", "eps": "",
                         "value": "0", "modulus": "2", "divisible": "true"}


def test_summary_json():
    s = cg.check_sun_1_5(2, 1, (0, 0)).summary()
    assert s["check"] == "sun1.5" and s["failures"] == 0 and s["rows"] == 4
    assert s["grid"] == {"n_max": 2, "m_max": 1, "x_range": [0, 0]}


@pytest.mark.parametrize("text,expect", [("-5..5", (-5, 5)), ("0..0", (0, 0)), ("3..20", (3, 20))])
def test_parse_range(text, expect):
    assert cg.parse_range(text) == expect


@pytest.mark.parametrize("text", ["5", "a..b", "5..-5", "1.5..3", ""])
def test_parse_range_rejects(text):
    with pytest.raises(ValueError):
        cg.parse_range(text)


def test_bad_grids():
    with pytest.raises(ValueError):
        cg.check_thm2_5(0, 1, (0, 1))
    with pytest.raises(ValueError):
        cg.check_sun_1_5(3, 0, (0, 1))
    with pytest.raises(ValueError):
        cg.check_sun_1_4(3, (2, 1))


def test_deterministic_and_parallel_agree():
    a = cg.check_thm2_5(8, 2, (-3, 3))
    b = cg.check_thm2_5(8, 2, (-3, 3))
    c = cg.check_thm2_5(8, 2, (-3, 3), workers=2)
    assert a.to_csv() == b.to_csv() == c.to_csv()
    assert a.failures == b.failures == c.failures


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 25), st.integers(0, 4), st.integers(-20, 20))
def test_closed_form_matches_direct_sum(n, r, x):
    vals = cg.d_values(n, r, x)
    shifted = cg.d_values(n, r + 1, x)
    direct = (2 * r + 1) * sum((2 * k + 2 * r + 1) * vals[k] ** 2 for k in range(n))
    closed = n * n * vals[n] ** 2 - 4 * (x - r) * (x + 1 + r) * shifted[n - 1] ** 2
    assert direct == closed


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 15), st.integers(0, 3), st.integers(-12, 12))
def test_alternating_sum_matches_cleared_form(n, r, x):
    # both sides multiplied by n! to clear (k+1)...n
    vals = cg.d_values(n + 1, r, x)
    lhs = 0
    for k in range(n):
        rising = math.prod(j + 2 * r for j in range(k + 1, n + 1))
        lhs += (-1) ** k * (2 * k + 2 * r + 1) * rising * math.factorial(k) * vals[k] ** 2
    rhs = ((-1) ** n * math.factorial(n) * (n + 2 * r)
           * (n * vals[n] ** 2 - (n + 1) * vals[n - 1] * vals[n + 1]))
    assert lhs == rhs
