from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from delannoy.exact import (
    GaussRational,
    I,
    gauss_ops,
    int_binomial,
    rat_from_str,
    rat_ops,
    rat_to_str,
)

from conftest import gauss, small_fractions


def test_rat_examples():
    assert rat_ops(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    q = Fraction(4, 6)
    assert (q.numerator, q.denominator) == (2, 3)
    assert rat_ops(7, 7, "div") == 1
    assert rat_ops(Fraction(1, 3), Fraction(1, 2), "cmp") == -1
    assert rat_ops(2, 2, "cmp") == 0


def test_rat_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        rat_ops(1, 0, "div")


def test_rat_serialization():
    assert rat_to_str(Fraction(-4, 6)) == "-2/3"
    assert rat_to_str(Fraction(6, 3)) == "2"
    assert rat_from_str("-2/3") == Fraction(-2, 3)
    with pytest.raises(ValueError):
        rat_from_str("0.5")


def test_gauss_examples():
    assert gauss_ops(I, I, "mul") == GaussRational(-1, 0)
    assert gauss_ops(GaussRational(1, 1), None, "conj") == GaussRational(1, -1)
    assert gauss_ops(I, I, "div") == GaussRational(1, 0)
    with pytest.raises(ZeroDivisionError):
        gauss_ops(I, 0, "div")


def test_gauss_json_roundtrip():
    g = GaussRational(Fraction(1, 2), Fraction(-3, 4))
    assert g.to_json() == {"re": "1/2", "im": "-3/4"}
    assert GaussRational.from_json(g.to_json()) == g


def test_gauss_immutable():
    with pytest.raises(AttributeError):
        I.re = 3


def _product_binomial(n, k):
    num = 1
    for j in range(k):
        num *= n - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return Fraction(num, den)


def test_int_binomial_examples():
    assert int_binomial(5, 2) == 10
    assert int_binomial(7, -1) == 0
    assert int_binomial(-3, 2) == _product_binomial(-3, 2) == 6
    assert int_binomial(3, 5) == 0


@pytest.mark.parametrize("n", range(-8, 9))
def test_int_binomial_matches_product_formula(n):
    for k in range(0, 10):
        assert int_binomial(n, k) == _product_binomial(n, k)


def test_int_binomial_pascal_grid():
    for n in range(-10, 12):
        for k in range(-3, 12):
            assert int_binomial(n, k) == int_binomial(n - 1, k - 1) + int_binomial(n - 1, k)


@settings(max_examples=1000, deadline=None)
@given(small_fractions, small_fractions, small_fractions)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if a != 0:
        assert rat_ops(a, a, "div") == 1


@settings(max_examples=1000, deadline=None)
@given(gauss, gauss, gauss)
def test_gauss_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0
    if a:
        assert a * a.inverse() == 1
    assert (a * b).conj() == a.conj() * b.conj()


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_canonical_form_idempotent(p, q):
    once = Fraction(p, q)
    twice = Fraction(once.numerator, once.denominator)
    assert once == twice
    assert (once.numerator, once.denominator) == (twice.numerator, twice.denominator)
