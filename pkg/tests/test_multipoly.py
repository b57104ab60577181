import json
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from delannoy.exact import GaussRational, I
from delannoy.multipoly import (
    R,
    T,
    X,
    Y,
    MultiPoly,
    binom_poly,
    eval_int,
    poly_diff_x,
    poly_eval,
    poly_from_json,
    poly_ops,
    poly_subst_x_affine,
    poly_to_json,
    pretty,
    rename_var,
    substitute,
)

from conftest import polys

sx, sy, sr, st_ = sympy.symbols("x y r t")


def to_sympy(p: MultiPoly):
    out = 0
    for (ex, ey, er, et), c in p.terms.items():
        coef = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
            c.im.numerator, c.im.denominator)
        out += coef * sx**ex * sy**ey * sr**er * st_**et
    return sympy.expand(out)


D2 = 2 * X**2 + 2 * X + R + 1


def test_poly_ops_examples():
    assert poly_ops(X, X, "mul") == X**2
    p = 3 * X * R - 1
    assert poly_ops(p, MultiPoly.zero(), "add") == p
    assert (2 * X + 1) * (2 * X + 1) == 4 * X**2 + 4 * X + 1


def test_zero_is_empty_and_canonical():
    z = X - X
    assert z.is_zero() and len(z) == 0 and z == MultiPoly.zero()
    assert (X * Fraction(2, 4)) == MultiPoly.from_terms({(1, 0, 0, 0): Fraction(1, 2)})


def test_binom_poly_examples():
    assert binom_poly(X + R, 0) == MultiPoly.one()
    assert binom_poly(R + 1, 1) == R + 1
    # falling-factorial oracle for C(-r-1/2, 1)
    assert binom_poly(-R - Fraction(1, 2), 1) == -R - Fraction(1, 2)
    assert binom_poly(X, -1) == MultiPoly.zero()


@pytest.mark.parametrize("k", range(0, 7))
def test_binom_poly_against_sympy(k):
    alpha = X + 2 * R - Fraction(1, 3)
    sa = sx + 2 * sr - sympy.Rational(1, 3)
    expect = sympy.expand(sympy.ff(sa, k) / sympy.factorial(k))
    assert sympy.expand(to_sympy(binom_poly(alpha, k)) - expect) == 0
    assert binom_poly(alpha, k).degree() == k


def test_poly_eval_examples():
    assert poly_eval(D2, {"x": 0}) == R + 1
    assert poly_eval(D2, {"x": Fraction(-1, 2)}) == R + Fraction(1, 2)
    assert poly_eval(D2, {}) == D2


def test_poly_diff_examples():
    assert poly_diff_x(X**2) == 2 * X
    assert poly_diff_x(2 * X + 1) == MultiPoly.const(2)
    D3 = X**3 - (6 * R + 5) * X
    assert poly_diff_x(D3) == 3 * X**2 - (6 * R + 5)


def test_affine_substitution_examples():
    half_i, minus_half = I / 2, Fraction(-1, 2)
    assert poly_subst_x_affine(X, half_i, minus_half) == X * MultiPoly.const(half_i) - Fraction(1, 2)
    got = poly_subst_x_affine(D2, half_i, minus_half) * MultiPoly.const((-I) ** 2 * 2)
    assert got == X**2 - 2 * R - 1
    assert poly_subst_x_affine(D2, 1, 0) == D2


def test_affine_substitution_rejects_y_and_t():
    with pytest.raises(ValueError):
        poly_subst_x_affine(X + Y, 1, 0)
    with pytest.raises(ValueError):
        poly_subst_x_affine(X * T, 1, 0)


def test_json_schema_and_ordering():
    p = 3 * X * R + X**2 - Fraction(1, 2) + R**2 * T + MultiPoly.const(I) * Y
    obj = poly_to_json(p)
    assert obj["vars"] == ["x", "y", "r", "t"]
    exps = [tuple(t["exp"]) for t in obj["terms"]]
    # graded lex, x > y > r > t
    assert exps == [(0, 0, 2, 1), (2, 0, 0, 0), (1, 0, 1, 0), (0, 1, 0, 0), (0, 0, 0, 0)]
    assert obj["terms"][-1] == {"exp": [0, 0, 0, 0], "re": "-1/2", "im": "0"}
    assert poly_from_json(json.loads(json.dumps(obj))) == p


@pytest.mark.parametrize("poly,text", [
    (MultiPoly.one(), "1"),
    (2 * X + 1, "2x+1"),
    (D2, "2x^2+2x+r+1"),
    (Fraction(4, 3) * X**3 + 2 * X**2 + (2 * R + Fraction(8, 3)) * X + R + 1,
     "4/3x^3+2x^2+(2r+8/3)x+r+1"),
    (X, "x"),
    (X**2 - 2 * R - 1, "x^2-2r-1"),
    (X**3 - (6 * R + 5) * X, "x^3-(6r+5)x"),
    (-X, "-x"),
    (MultiPoly.zero(), "0"),
])
def test_pretty(poly, text):
    assert pretty(poly) == text


def test_rename_and_eval_int():
    p = X**2 + R
    assert rename_var(p, "x", "y") == Y**2 + R
    with pytest.raises(ValueError):
        rename_var(X + Y, "x", "y")
    assert eval_int(p, {"x": 3, "r": Fraction(1, 2)}) == Fraction(19, 2)


def test_scalar_division():
    assert (2 * X) / 2 == X
    with pytest.raises(ZeroDivisionError):
        X / 0
    with pytest.raises(TypeError):
        X / X


@settings(max_examples=1000, deadline=None)
@given(polys(complex_coeffs=True), polys(complex_coeffs=True), polys(complex_coeffs=True))
def test_ring_axioms(p, q, s):
    assert (p + q) + s == p + (q + s)
    assert p + q == q + p
    assert (p * q) * s == p * (q * s)
    assert p * q == q * p
    assert p * (q + s) == p * q + p * s
    assert p - p == MultiPoly.zero()


@settings(max_examples=1000, deadline=None)
@given(polys(), polys())
def test_product_degree_additive(p, q):
    if p and q:
        for v in ("x", "r"):
            assert (p * q).degree(v) == p.degree(v) + q.degree(v)
        assert (p * q).degree() == p.degree() + q.degree()


@settings(max_examples=1000, deadline=None)
@given(polys(max_deg=2, max_terms=3), st.integers(1, 6))
def test_binom_poly_pascal(alpha, k):
    assert binom_poly(alpha, k) == binom_poly(alpha - 1, k) + binom_poly(alpha - 1, k - 1)


@settings(max_examples=1000, deadline=None)
@given(polys(), polys())
def test_derivative_product_rule(p, q):
    assert poly_diff_x(p * q) == poly_diff_x(p) * q + p * poly_diff_x(q)
    assert poly_diff_x(p + q) == poly_diff_x(p) + poly_diff_x(q)


@settings(max_examples=300, deadline=None)
@given(polys())
def test_derivative_is_first_order_difference(p):
    # p(x+t) - p(x) = t p'(x) + O(t^2), t playing the role of the step
    shifted = substitute(p, "x", X + T) - p
    assert shifted.coeff_in("t", 0) == MultiPoly.zero()
    assert shifted.coeff_in("t", 1) == poly_diff_x(p)


@settings(max_examples=300, deadline=None)
@given(polys(complex_coeffs=True), st.tuples(*[st.builds(GaussRational,
       st.fractions(-3, 3, max_denominator=4), st.fractions(-3, 3, max_denominator=4))] * 4))
def test_affine_substitutions_compose(p, ab):
    a1, b1, a2, b2 = ab
    lhs = poly_subst_x_affine(poly_subst_x_affine(p, a1, b1), a2, b2)
    rhs = poly_subst_x_affine(p, a1 * a2, a1 * b2 + b1)
    assert lhs == rhs


@settings(max_examples=200, deadline=None)
@given(polys(variables=("x", "y", "r"), complex_coeffs=True),
       polys(variables=("x", "y", "r"), complex_coeffs=True))
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
