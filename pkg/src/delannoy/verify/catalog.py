"""Registry of symbolic identity checks.

Every entry expands both sides of an identity for one parameter instance and
compares the canonical polynomials.  r stays symbolic unless an entry says
otherwise.  Identities whose coefficients have denominators that are
polynomials in r are multiplied through by a nonzero polynomial first, which
makes them identities on the closure (the excluded r values included).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional

from ..exact import I, int_binomial
from ..families import (
    CACHE,
    D_egf,
    D_from_d,
    D_rec,
    D_shift,
    d_at_r,
    d_def,
    d_shift,
)
from ..multipoly import (
    R,
    T,
    X,
    Y,
    MultiPoly,
    binom_poly,
    poly_diff_x,
    poly_eval,
    poly_subst_x_affine,
    rename_var,
    substitute,
)
from .moments import orthogonality_pair, positivity_point, DEFAULT_R_SAMPLES, DEFAULT_X_SAMPLES
from .report import compare

ONE = MultiPoly.one()
ZERO = MultiPoly.zero()
CLOSURE_NOTE = "verified on closure"


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    anchor: str
    param_domain: str
    instances: Callable[[int], List[Dict[str, Any]]]
    evaluator: Callable[..., Optional[dict]]
    note: Optional[str] = None
    warm: Callable[[int], int] = field(default=lambda n: n + 2)


CATALOG: Dict[str, IdentityCheck] = {}


def register(name, anchor, domain, instances, note=None, warm=None):
    def deco(fn):
        CATALOG[name] = IdentityCheck(name, anchor, domain, instances, fn, note,
                                      warm or (lambda n: n + 2))
        return fn
    return deco


# -- parameter grids -------------------------------------------------------

def n_range(lo=0):
    return lambda N: [{"n": n} for n in range(lo, N + 1)]


def n_forms(forms, lo=0):
    return lambda N: [{"n": n, "form": f} for f in forms for n in range(lo, N + 1)
                      if n >= forms[f]]


def mn_pairs(N):
    return [{"m": m, "n": n} for m in range(N + 1) for n in range(N + 1)]


# -- small polynomial helpers ----------------------------------------------

def d(n, s=0):
    """d_n with r shifted by s (s = 0: r itself)."""
    return d_shift(n, s)


def D(n, s=0):
    return D_shift(n, s)


def dc(n):
    """Classical Delannoy polynomial d_n(x) = d_n at r = 0."""
    return d_at_r(n, 0)


def Dc(n):
    return poly_eval(D_rec(n), {"r": 0}) if n >= 0 else ZERO


@lru_cache(maxsize=None)
def rising(a: int, b: int) -> MultiPoly:
    """(2r+a)(2r+a+1)...(2r+b); empty product when a > b."""
    acc = ONE
    for j in range(a, b + 1):
        acc = acc * (2 * R + j)
    return acc


@lru_cache(maxsize=None)
def in_y(p: MultiPoly) -> MultiPoly:
    return rename_var(p, "x", "y")


def sq(p):
    return p * p


def rsum(items):
    acc = ZERO
    for it in items:
        acc = acc + it
    return acc


# ---------------------------------------------------------------------------
# the d family


@register("eq1.1", "binomial transform", "n <= N; identity in x and t", n_range())
def _eq1_1(n):
    lhs = rsum(binom_poly(X, k) * T ** k * math.comb(n, k) for k in range(n + 1))
    rhs = rsum(binom_poly(X + k, n) * (T - 1) ** (n - k) * math.comb(n, k)
               for k in range(n + 1))
    return compare(lhs, rhs)


@register("eq1.6", "squaring formula at r = 0", "n <= N", n_range())
def _eq1_6(n):
    rhs = rsum(binom_poly(X, k) * binom_poly(X + k, k) * (int_binomial(n + k, 2 * k) * 4 ** k)
               for k in range(n + 1))
    return compare(sq(dc(n)), rhs)


_EQ21_FORMS = {"binomial-2^k": 0, "binomial-x+k": 0, "convolution": 0}


@register("eq2.1", "three forms of d_n(x)", "n <= N, form", n_forms(_EQ21_FORMS))
def _eq2_1(n, form):
    if form == "binomial-2^k":
        other = rsum(binom_poly(X, k) * (math.comb(n, k) * 2 ** k) for k in range(n + 1))
    elif form == "binomial-x+k":
        other = rsum(binom_poly(X + k, n) * math.comb(n, k) for k in range(n + 1))
    else:
        other = rsum(binom_poly(X + k, k) * binom_poly(X, n - k) for k in range(n + 1))
    return compare(dc(n), other)


_EQ22_FORMS = {"left": 0, "right": 0}


@register("eq2.2", "negated-upper forms", "n <= N, form", n_forms(_EQ22_FORMS))
def _eq2_2(n, form):
    if form == "left":
        other = rsum(binom_poly(-1 - X - R, k) * binom_poly(X - R, n - k) * (-1) ** k
                     for k in range(n + 1))
    else:
        other = rsum(binom_poly(-1 - X - R, n - k) * binom_poly(X - R, k) * (-1) ** (n - k)
                     for k in range(n + 1))
    return compare(d_def(n), other)


@register("eq2.3", "reflection d_n(-1-x) = (-1)^n d_n(x)", "n <= N", n_range())
def _eq2_3(n):
    return compare(substitute(d(n), "x", -1 - X), d(n) * (-1) ** n)


@register("cor2.1", "value at x = -1/2", "n <= N", n_range())
def _cor2_1(n):
    val = poly_eval(d(n), {"x": Fraction(-1, 2)})
    if n % 2:
        return compare(val, ZERO)
    return compare(val, binom_poly(Fraction(-1, 2) - R, n // 2) * (-1) ** (n // 2))


@register("cor2.2", "value at x = 0", "n <= N", n_range())
def _cor2_2(n):
    return compare(poly_eval(d(n), {"x": 0}), binom_poly(R + n // 2, n // 2))


@register("thm2.2", "three-term recurrence", "1 <= n <= N; d_n from the direct sum",
          n_range(1))
def _thm2_2(n):
    lhs = d_def(n + 1) * (n + 1)
    rhs = (1 + 2 * X) * d_def(n) + (n + 2 * R) * d_def(n - 1)
    return compare(lhs, rhs)


_THM23_FORMS = {"from-classical": 0, "from-classical-x-r": 0, "to-classical": 0, "to-classical-x+r": 0}


@register("thm2.3", "connection formulas", "n <= N, form",
          n_forms(_THM23_FORMS))
def _thm2_3(n, form):
    if form == "from-classical":
        rhs = rsum(binom_poly(R - 1 + k, k) * dc(n - 2 * k) for k in range(n // 2 + 1))
        return compare(d(n), rhs)
    if form == "from-classical-x-r":
        rhs = rsum(binom_poly(2 * R - 1 + k, k) * substitute(dc(n - k), "x", X - R)
                   for k in range(n + 1))
        return compare(d(n), rhs)
    if form == "to-classical":
        rhs = rsum(binom_poly(R, k) * d(n - 2 * k) * (-1) ** k for k in range(n // 2 + 1))
        return compare(dc(n), rhs)
    rhs = rsum(binom_poly(2 * R, k) * substitute(d(n - k), "x", X + R) * (-1) ** k
               for k in range(n + 1))
    return compare(dc(n), rhs)


@register("thm2.4.i", "d_n = d_n^(r+1) - d_{n-2}^(r+1)", "1 <= n <= N", n_range(1))
def _thm2_4_i(n):
    return compare(d(n), d(n, 1) - d(n - 2, 1))


@register("thm2.4.ii", "d_n^(r+1) = sum d_{n-2k}", "1 <= n <= N", n_range(1))
def _thm2_4_ii(n):
    return compare(d(n, 1), rsum(d(n - 2 * k) for k in range(n // 2 + 1)))


def _q(p):
    return 4 * (X - R) * (X + 1 + R) * p


@register("thm2.4.iii", "difference of squares", "1 <= n <= N", n_range(1))
def _thm2_4_iii(n):
    lhs = sq(d(n + 1)) * (n + 1) ** 2 - sq(d(n)) * sq(n + 2 * R + 1)
    return compare(lhs, _q(sq(d(n, 1)) - sq(d(n - 1, 1))))


@register("thm2.4.iv", "weighted sum of squares", "1 <= n <= N", n_range(1))
def _thm2_4_iv(n):
    lhs = (2 * R + 1) * rsum((2 * k + 2 * R + 1) * sq(d(k)) for k in range(n))
    rhs = sq(d(n)) * n ** 2 - _q(sq(d(n - 1, 1)))
    return compare(lhs, rhs)


def _eq28_instances(N):
    r_max = min(N, 4)
    return [{"n": n, "r": r} for r in range(r_max + 1) for n in range(N + 1)]


@register("eq2.8", "integer-r binomial form", "n <= N, integer 0 <= r <= min(N, 4)",
          _eq28_instances)
def _eq2_8(n, r):
    lhs = binom_poly(X + r, 2 * r) * d_at_r(n, r)
    rhs = rsum(binom_poly(X + r + k, n + 2 * r) * math.comb(n, k) for k in range(n + 1))
    return compare(lhs, rhs * math.comb(n + 2 * r, 2 * r))


# -- squares of d_n -----------------------------------------------------------

@lru_cache(maxsize=None)
def _b2r(m: int) -> MultiPoly:
    """C(m+2r, m)"""
    return binom_poly(2 * R + m, m)


@lru_cache(maxsize=None)
def _clear_except(top: int, skip: int) -> MultiPoly:
    """prod_{j=1..top, j != skip} C(j+2r, j)"""
    acc = ONE
    for j in range(1, top + 1):
        if j != skip:
            acc = acc * _b2r(j)
    return acc


def _sq_numer(k: int, m: int) -> MultiPoly:
    return (binom_poly(X - R, m) * binom_poly(X + R + m, m)
            * binom_poly(2 * R + k + m, k - m) * 4 ** m)


def _S_cleared(k: int, top: int) -> MultiPoly:
    """S(k) multiplied by prod_{j<=top} C(j+2r, j), as a polynomial."""
    return rsum(_sq_numer(k, m) * _clear_except(top, m) for m in range(k + 1))


@register("thm2.6", "square of d_n, denominators cleared", "n <= N, form",
          n_forms({"square": 0, "S-recurrence": 1}), note=CLOSURE_NOTE)
def _thm2_6(n, form):
    if form == "square":
        lhs = sq(d(n)) * _clear_except(n, -1)
        rhs = binom_poly(2 * R + n, n) * _S_cleared(n, n)
        return compare(lhs, rhs)
    top = n + 2
    q = sq(2 * X + 1) + (n + 1) * (n + 1 + 2 * R)
    lhs = ((n + 2) * (n + 2 + 2 * R) * _S_cleared(n + 2, top)
           - q * (_S_cleared(n + 1, top) + _S_cleared(n, top))
           + n * (n + 2 * R) * _S_cleared(n - 1, top))
    return compare(lhs, ZERO)


# -- products d_m d_n and their certificate ---------------------------------------

@register("thm2.7", "product formula for d_m d_n", "0 <= m, n <= N", mn_pairs,
          warm=lambda N: 2 * N + 2)
def _thm2_7(m, n):
    rhs = rsum(binom_poly(2 * R + m + n - k, k) * d(m + n - 2 * k)
               * (int_binomial(m + n - 2 * k, m - k) * (-1) ** k)
               for k in range(min(m, n) + 1))
    return compare(d(m) * d(n), rhs)


@lru_cache(maxsize=None)
def _pair(l: int, j: int, shift: int = 0) -> MultiPoly:
    """C(x+r+l, l) C(x+shift-r, j)"""
    if l < 0 or j < 0:
        return ZERO
    return binom_poly(X + R + l, l) * binom_poly(X + shift - R, j)


@lru_cache(maxsize=1 << 16)
def G(m, n, k, l):
    c = int_binomial(m + n - 2 * k, m - k)
    if c == 0 or k < 0:
        return ZERO
    p = _pair(l, m + n - 2 * k - l)
    if p.is_zero():
        return ZERO
    return binom_poly(2 * R + m + n - k, k) * p * (c * (-1) ** k)


@lru_cache(maxsize=1 << 16)
def F1(m, n, k, l):
    c = int_binomial(m + n + 2 - 2 * k, m + 2 - k)
    if c == 0:
        return ZERO
    p = _pair(l, m + 2 + n - 2 * k - l)
    b = binom_poly(2 * R + m + 1 + n - k, k - 1)
    if p.is_zero() or b.is_zero():
        return ZERO
    return (2 * m + n + 4 - 2 * k + 2 * R) * b * p * (c * (-1) ** k)


@lru_cache(maxsize=1 << 16)
def F2(m, n, k, l):
    c = int_binomial(m + 1 + n - 2 * k, m + 1 - k)
    if c == 0 or l == 0:
        return ZERO
    p = _pair(l, m + 2 + n - 2 * k - l, shift=1)
    if p.is_zero():
        return ZERO
    return binom_poly(2 * R + m + n + 1 - k, k) * p * (c * l * (-1) ** k)


def certificate_lhs(m, n, k, l):
    return ((m + 1 + 2 * R) * G(m, n, k, l) + (2 * X + 1) * G(m + 1, n, k, l)
            - (m + 2) * G(m + 2, n, k, l))


def certificate_rhs(m, n, k, l):
    return F1(m, n, k + 1, l) - F1(m, n, k, l) + F2(m, n, k, l + 1) - F2(m, n, k, l)


def _cert_instances(N):
    return [{"m": m, "n": n, "k": k, "l": l}
            for m in range(N + 1) for n in range(N + 1)
            for k in range(m + 3) for l in range(m + n + 3)]


@register("thm2.7.certificate", "telescoping certificate for the product formula",
          "0 <= m, n <= N; 0 <= k <= m+2; 0 <= l <= m+n+2", _cert_instances)
def _thm2_7_certificate(m, n, k, l):
    return compare(certificate_lhs(m, n, k, l), certificate_rhs(m, n, k, l))


def R_sum(m, n):
    return rsum(G(m, n, k, l) for k in range(m + 1) for l in range(m + n - 2 * k + 1))


_TELESCOPE_FORMS = {"double-sum": 0, "F1-boundary": 0, "F2-boundary": 0, "R-recurrence": 0}


def _telescope_instances(N):
    return [{"m": m, "n": n, "form": f} for f in _TELESCOPE_FORMS
            for m in range(N + 1) for n in range(N + 1)]


@register("thm2.7.telescoping", "summed certificate vanishes; R satisfies the recurrence",
          "0 <= m, n <= N, form", _telescope_instances, warm=lambda N: 2 * N + 4)
def _thm2_7_telescoping(m, n, form):
    ks, ls = range(m + 3), range(m + n + 3)
    if form == "double-sum":
        total = rsum(certificate_lhs(m, n, k, l) for k in ks for l in ls)
    elif form == "F1-boundary":
        total = rsum(F1(m, n, m + 3, l) - F1(m, n, 0, l) for l in ls)
    elif form == "F2-boundary":
        total = rsum(F2(m, n, k, m + n + 3) - F2(m, n, k, 0) for k in ks)
    else:
        total = ((m + 1 + 2 * R) * R_sum(m, n) + (2 * X + 1) * R_sum(m + 1, n)
                 - (m + 2) * R_sum(m + 2, n))
    return compare(total, ZERO)


# -- bilinear sums -------------------------------------------------------------

@register("thm2.8", "bilinear sum in x and y, times n!", "1 <= n <= N", n_range(1))
def _thm2_8(n):
    acc = rsum(d(k) * in_y(d(k)) * rising(k + 1, n) * math.factorial(k) for k in range(n))
    lhs = 2 * (1 + X + Y) * acc
    rhs = (n + 2 * R) * (d(n) * in_y(d(n - 1)) + d(n - 1) * in_y(d(n))) * math.factorial(n)
    return compare(lhs, rhs)


@register("rem2.1", "bilinear sum at r = 0", "1 <= n <= N", n_range(1))
def _rem2_1(n):
    lhs = 2 * (1 + X + Y) * rsum(dc(k) * in_y(dc(k)) for k in range(n))
    rhs = n * (dc(n) * in_y(dc(n - 1)) + dc(n - 1) * in_y(dc(n)))
    return compare(lhs, rhs)


# ---------------------------------------------------------------------------
# the monic family D


@register("eq3.1.orthogonality", "L[D_m D_n] = delta_mn n!(2r+1)...(2r+n)",
          "0 <= m, n <= N", mn_pairs, warm=lambda N: 2 * N + 2)
def _eq3_1(m, n):
    return orthogonality_pair(m, n)


@register("lemma3.1", "the two families are related by x -> (ix-1)/2",
          "n <= N, direction", n_forms({"d-from-D": 0, "D-from-d": 0}))
def _lemma3_1(n, form):
    if form == "D-from-d":
        return compare(D_from_d(n, d_def(n)), D(n))
    sub = poly_subst_x_affine(D(n), -2 * I, -I) * MultiPoly.const(I ** n)
    return compare(sub, d_def(n) * math.factorial(n))


def _prod_s(k, n):
    """prod_{s=k+1..n} s(s+2r)"""
    return rising(k + 1, n) * (math.factorial(n) // math.factorial(k))


@register("thm3.1", "weighted sum of D_k^2", "1 <= n <= N", n_range(1))
def _thm3_1(n):
    lhs = rsum((2 * k + 2 * R + 1) * _prod_s(k, n) * sq(D(k)) for k in range(n))
    rhs = n * (n + 2 * R) * (sq(D(n)) - D(n - 1) * D(n + 1))
    return compare(lhs, rhs)


def _delta(n):
    return sq(D(n)) - D(n + 1) * D(n - 1)


@register("thm3.1.delta", "Delta_{n+1} - n(n+2r) Delta_n = (2n+2r+1) D_n^2",
          "1 <= n <= N", n_range(1))
def _thm3_1_delta(n):
    return compare(_delta(n + 1) - n * (n + 2 * R) * _delta(n),
                   (2 * n + 2 * R + 1) * sq(D(n)))


def _positivity_instances(N):
    return [{"n": n, "r": str(r), "x": str(x)} for n in range(1, N + 1)
            for r in DEFAULT_R_SAMPLES for x in DEFAULT_X_SAMPLES]


@register("thm3.1.positivity", "D_n^2 - D_{n+1} D_{n-1} > 0 with the k = 0 lower bound",
          "1 <= n <= N at sampled r > -1/2 and x", _positivity_instances)
def _thm3_1_positivity(n, r, x):
    return positivity_point(n, Fraction(r), Fraction(x))


@register("cor3.1", "alternating weighted sum of d_k^2, times n!", "1 <= n <= N",
          n_range(1))
def _cor3_1(n):
    lhs = rsum((2 * k + 2 * R + 1) * rising(k + 1, n) * sq(d(k))
               * (math.factorial(k) * (-1) ** k) for k in range(n))
    rhs = (n + 2 * R) * (n * sq(d(n)) - (n + 1) * d(n - 1) * d(n + 1)) \
        * ((-1) ** n * math.factorial(n))
    return compare(lhs, rhs)


def _wronskian(p_prev, p):
    return p_prev * poly_diff_x(p) - p * poly_diff_x(p_prev)


@register("thm3.2", "sums of squares as Wronskians", "1 <= n <= N, form",
          n_forms({"D-wronskian": 1, "d-wronskian": 1}, lo=1))
def _thm3_2(n, form):
    if form == "D-wronskian":
        lhs = rsum(_prod_s(k, n) * sq(D(k)) for k in range(n))
        return compare(lhs, n * (n + 2 * R) * _wronskian(D(n - 1), D(n)))
    lhs = rsum(rising(k + 1, n) * sq(d(k)) * (math.factorial(k) * (-1) ** k)
               for k in range(n))
    rhs = (n + 2 * R) * _wronskian(d(n - 1), d(n)) \
        * Fraction((-1) ** (n - 1) * math.factorial(n), 2)
    return compare(lhs, rhs)


@register("rem3.1", "r = 0 alternating sums", "1 <= n <= N, form",
          n_forms({"alternating": 1, "alternating-weighted": 1}, lo=1))
def _rem3_1(n, form):
    if form == "alternating":
        lhs = rsum(sq(dc(k)) * (-1) ** k for k in range(n))
        rhs = _wronskian(dc(n - 1), dc(n)) * Fraction((-1) ** (n - 1) * n, 2)
        return compare(lhs, rhs)
    lhs = rsum(sq(dc(k)) * ((-1) ** k * (2 * k + 1)) for k in range(n))
    rhs = (sq(dc(n)) * n * n - dc(n - 1) * dc(n + 1) * (n * (n + 1))) * (-1) ** n
    return compare(lhs, rhs)


@register("thm3.3", "square of D_n as a product expansion", "n <= N", n_range())
def _thm3_3(n):
    rhs = ZERO
    prod = ONE
    for m in range(n + 1):
        if m >= 1:
            prod = prod * (X * X + sq(2 * R + 2 * m - 1))
        coef = binom_poly(2 * R + n + m, n - m) * _prod_s(m, n) * (-1) ** (n - m)
        rhs = rhs + coef * prod
    return compare(sq(D(n)), rhs)


@register("thm3.4", "exponential generating function", "n <= N", n_range())
def _thm3_4(n):
    return compare(D_egf(n), D_rec(n))


@register("cor3.2", "parity and value at 0", "n <= N, form",
          n_forms({"parity": 0, "at-zero": 0}))
def _cor3_2(n, form):
    if form == "parity":
        return compare(substitute(D(n), "x", -X), D(n) * (-1) ** n)
    val = poly_eval(D(n), {"x": 0})
    if n % 2:
        return compare(val, ZERO)
    return compare(val, binom_poly(-R - Fraction(1, 2), n // 2) * math.factorial(n))


@register("thm3.5", "expansions in powers of x and 1+2x", "n <= N, form",
          n_forms({"D-in-x": 0, "d-in-1+2x": 0}))
def _thm3_5(n, form):
    if form == "D-in-x":
        rhs = X ** n - rsum(k * (k + 2 * R) * D(k - 1) * X ** (n - 1 - k)
                            for k in range(1, n))
        return compare(D(n), rhs)
    u = 1 + 2 * X
    rhs = u ** n + rsum((k + 2 * R) * d(k - 1) * u ** (n - 1 - k) * math.factorial(k)
                        for k in range(1, n))
    return compare(d(n) * math.factorial(n), rhs)


_COR33_FORMS = {"d:n": 1, "d:n-1": 1, "d:n-2": 2, "D:n": 1, "D:n-2": 2}


@register("cor3.3", "leading coefficients", "1 <= n <= N, coefficient",
          n_forms(_COR33_FORMS, lo=1))
def _cor3_3(n, form):
    fam, _, which = form.partition(":")
    j = n - {"n": 0, "n-1": 1, "n-2": 2}[which]
    got = (d(n) if fam == "d" else D(n)).coeff_in("x", j)
    if form == "d:n":
        want = MultiPoly.const(Fraction(2 ** n, math.factorial(n)))
    elif form == "d:n-1":
        want = MultiPoly.const(Fraction(2 ** (n - 1), math.factorial(n - 1)))
    elif form == "d:n-2":
        want = (R + Fraction(n + 1, 3)) * Fraction(2 ** (n - 2), math.factorial(n - 2))
    elif form == "D:n":
        want = ONE
    else:
        want = (2 * n - 1 + 6 * R) * Fraction(-(n - 1) * n, 6)
    return compare(got, want)


@register("thm3.6", "parameter shifts of D_n", "n <= N, form",
          n_forms({"r+1": 0, "r=0": 0}))
def _thm3_6(n, form):
    if form == "r+1":
        return compare(D(n), D(n, 1) + D(n - 2, 1) * (n * (n - 1)))
    rhs = rsum(binom_poly(-R, k) * Dc(n - 2 * k) * (math.comb(n, 2 * k) * math.factorial(2 * k))
               for k in range(n // 2 + 1))
    return compare(D(n), rhs)


@register("thm3.7", "product formula for D_m D_n", "0 <= m, n <= N", mn_pairs,
          warm=lambda N: 2 * N + 2)
def _thm3_7(m, n):
    rhs = rsum(binom_poly(2 * R + m + n - k, k) * D(m + n - 2 * k)
               * (math.comb(m, k) * math.comb(n, k) * math.factorial(k) ** 2)
               for k in range(min(m, n) + 1))
    return compare(D(m) * D(n), rhs)


def names() -> List[str]:
    return sorted(CATALOG)
