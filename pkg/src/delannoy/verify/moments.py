"""The moment functional of the monic family and the Turan-type positivity check.

With x D_k = D_{k+1} + k(k+2r) D_{k-1} every monomial x^n expands in the D
basis.  The functional L with L[D_0] = 1 and L[D_k] = 0 (k >= 1) then has
moments mu_n = L[x^n] equal to the D_0 coordinate of x^n.  Orthogonality of the
family is exactly L[D_m D_n] = 0 for m != n.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Iterable, List, Sequence

from ..exact import as_rational
from ..families import CACHE, D_rec
from ..multipoly import R, MultiPoly, binom_poly, eval_int
from .report import CheckReport, compare

_basis: List[List[MultiPoly]] = [[MultiPoly.one()]]


def monomial_to_D_basis(n: int) -> List[MultiPoly]:
    """Coefficients c_0..c_n (polynomials in r) with x^n = sum_k c_k D_k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    while len(_basis) <= n:
        prev = _basis[-1]
        nxt = [MultiPoly.zero()] * (len(prev) + 1)
        for k, c in enumerate(prev):
            if c.is_zero():
                continue
            nxt[k + 1] = nxt[k + 1] + c
            if k >= 1:
                nxt[k - 1] = nxt[k - 1] + c * (k * (k + 2 * R))
        _basis.append(nxt)
    return list(_basis[n])


def moment(n: int) -> MultiPoly:
    return monomial_to_D_basis(n)[0]


def functional(p: MultiPoly) -> MultiPoly:
    """L applied to a polynomial in x (coefficients may involve r)."""
    acc = MultiPoly.zero()
    for j in range(p.degree("x") + 1):
        c = p.coeff_in("x", j)
        if not c.is_zero():
            acc = acc + c * moment(j)
    return acc


def rising_2r(n: int) -> MultiPoly:
    """(2r+1)(2r+2)...(2r+n)"""
    acc = MultiPoly.one()
    for j in range(1, n + 1):
        acc = acc * (2 * R + j)
    return acc


def squared_norm(n: int) -> MultiPoly:
    """L[D_n^2] = 1/v_n = n! (2r+1)...(2r+n)."""
    return rising_2r(n) * math.factorial(n)


def linearization_constant_term(m: int, n: int) -> MultiPoly:
    """Coefficient of D_0 in the product formula for D_m D_n."""
    if m != n:
        return MultiPoly.zero()
    k = n
    return binom_poly(2 * R + m + n - k, k) * (math.comb(m, k) * math.comb(n, k)
                                               * math.factorial(k) ** 2)


def orthogonality_pair(m: int, n: int):
    """Witness (or None) for L[D_m D_n] against both predicted values."""
    value = functional(D_rec(m) * D_rec(n))
    expected = squared_norm(n) if m == n else MultiPoly.zero()
    w = compare(value, expected)
    if w is None:
        w = compare(value, linearization_constant_term(m, n))
        if w is not None:
            w["against"] = "product-formula"
    return w


def check_orthogonality(max_n: int) -> List[CheckReport]:
    CACHE.warm(2 * max_n + 1)
    out = []
    for m in range(max_n + 1):
        for n in range(max_n + 1):
            t0 = time.perf_counter()
            w = orthogonality_pair(m, n)
            out.append(CheckReport("eq3.1.orthogonality", {"m": m, "n": n},
                                   "pass" if w is None else "fail", w,
                                   time.perf_counter() - t0))
    return out


# ---------------------------------------------------------------------------
# positivity

DEFAULT_R_SAMPLES = (Fraction(-1, 4), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3))
DEFAULT_X_SAMPLES = (Fraction(-3), Fraction(-1), Fraction(-1, 2), Fraction(0),
                     Fraction(1, 2), Fraction(2))


def delta_value(n: int, r, x) -> Fraction:
    """D_n^2 - D_{n+1} D_{n-1} at the point (r, x), exactly."""
    pt = {"r": as_rational(r), "x": as_rational(x)}
    Dn = eval_int(D_rec(n), pt)
    return Dn * Dn - eval_int(D_rec(n + 1), pt) * eval_int(D_rec(n - 1), pt)


def delta_lower_bound(n: int, r) -> Fraction:
    """(2r+1) n! (2r+1)...(2r+n) / (n(n+2r)), the k = 0 term of the sum form."""
    r = as_rational(r)
    prod = Fraction(math.factorial(n))
    for j in range(1, n + 1):
        prod *= 2 * r + j
    return (2 * r + 1) * prod / (n * (n + 2 * r))


def positivity_point(n: int, r, x):
    r, x = as_rational(r), as_rational(x)
    if r <= Fraction(-1, 2):
        raise ValueError(f"positivity needs r > -1/2, got {r}")
    delta = delta_value(n, r, x)
    bound = delta_lower_bound(n, r)
    if delta > 0 and delta >= bound:
        return None
    return {"delta": str(delta), "bound": str(bound)}


def check_positivity(max_n: int, r_samples: Sequence = DEFAULT_R_SAMPLES,
                     x_samples: Sequence = DEFAULT_X_SAMPLES) -> List[CheckReport]:
    r_samples = [as_rational(r) for r in r_samples]
    bad = [r for r in r_samples if r <= Fraction(-1, 2)]
    if bad:
        raise ValueError(f"positivity needs every r sample > -1/2, got {bad}")
    CACHE.warm(max_n + 1)
    out = []
    for n in range(1, max_n + 1):
        for r in r_samples:
            for x in x_samples:
                t0 = time.perf_counter()
                w = positivity_point(n, r, x)
                out.append(CheckReport(
                    "thm3.1.positivity",
                    {"n": n, "r": str(r), "x": str(as_rational(x))},
                    "pass" if w is None else "fail", w, time.perf_counter() - t0))
    return out
