"""The two polynomial families, each built along several independent routes.

``d_n(x)`` below always means the r-deformed Delannoy polynomial with r kept
symbolic:

    d_n = sum_k C(x+r+k, k) C(x-r, n-k),
    (n+1) d_{n+1} = (1+2x) d_n + (n+2r) d_{n-1},
    sum_n d_n t^n = (1+t)^(x-r) (1-t)^(-x-r-1).

``D_n(x)`` is the monic family D_{n+1} = x D_n - n(n+2r) D_{n-1}, related to the
first by D_n(x) = (-i)^n n! d_n((ix-1)/2) and with exponential generating
function (1+t^2)^(-r-1/2) exp(x arctan t).
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from .exact import GaussRational, I, int_binomial
from .multipoly import (
    R,
    T,
    X,
    MultiPoly,
    binom_poly,
    eval_int,
    poly_eval,
    poly_subst_x_affine,
    shift_var,
)
from .series import TruncSeries, series_arctan, series_binpow, series_exp_scaled, series_mul

ROUTES_d = ("def", "rec", "gf")
ROUTES_D = ("rec", "from-d", "egf")


class FamilyCache:
    """Monotone cache of d_n and D_n filled by the three-term recurrences.

    Reads are lock-free; extensions take a lock.  Warm it to the largest index
    before fanning work out to other threads or forked processes.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self.d_list: List[MultiPoly] = [MultiPoly.one(), 2 * X + 1]
        self.D_list: List[MultiPoly] = [MultiPoly.one(), X]
        self.d_routes: List[str] = ["seed", "seed"]
        self.D_routes: List[str] = ["seed", "seed"]

    def d(self, n: int) -> MultiPoly:
        if n < 0:
            return MultiPoly.zero()
        if n >= len(self.d_list):
            self._extend_d(n)
        return self.d_list[n]

    def D(self, n: int) -> MultiPoly:
        if n < 0:
            return MultiPoly.zero()
        if n >= len(self.D_list):
            self._extend_D(n)
        return self.D_list[n]

    def _extend_d(self, n: int) -> None:
        with self._lock:
            lst = self.d_list
            while len(lst) <= n:
                k = len(lst) - 1
                nxt = ((1 + 2 * X) * lst[k] + (k + 2 * R) * lst[k - 1]) * Fraction(1, k + 1)
                lst.append(nxt)
                self.d_routes.append("rec")

    def _extend_D(self, n: int) -> None:
        with self._lock:
            lst = self.D_list
            while len(lst) <= n:
                k = len(lst) - 1
                lst.append(X * lst[k] - (k * (k + 2 * R)) * lst[k - 1])
                self.D_routes.append("rec")

    def warm(self, n: int) -> "FamilyCache":
        self.d(n)
        self.D(n)
        return self

    def route_of(self, family: str, n: int) -> str:
        tags = self.d_routes if family == "d" else self.D_routes
        return tags[n]


CACHE = FamilyCache()


# ---------------------------------------------------------------------------
# d_n routes


@lru_cache(maxsize=None)
def d_def(n: int) -> MultiPoly:
    """Direct sum of products of binomials."""
    if n < 0:
        return MultiPoly.zero()
    acc = MultiPoly.zero()
    for k in range(n + 1):
        acc = acc + binom_poly(X + R + k, k) * binom_poly(X - R, n - k)
    return acc


def d_rec(n: int) -> MultiPoly:
    return CACHE.d(n)


@lru_cache(maxsize=4)
def _d_ogf(order: int) -> TruncSeries:
    up = series_binpow(X - R, TruncSeries.t(order))
    down = series_binpow(-X - R - 1, TruncSeries.t(order, scale=-1))
    return series_mul(up, down)


_built_orders = {"d": 0, "D": 0}


def _series_order(kind: str, n: int) -> int:
    # Reuse the largest series built so far; grow geometrically otherwise.
    have = _built_orders[kind]
    if n + 1 > have:
        have = max(n + 1, 2 * have)
        _built_orders[kind] = have
    return have


def d_gf(n: int, order: int = None) -> MultiPoly:
    """Coefficient of t^n in the ordinary generating function."""
    if n < 0:
        return MultiPoly.zero()
    return _d_ogf(order if order is not None else _series_order("d", n)).coeffs[n]


def d_gf_list(max_n: int) -> List[MultiPoly]:
    s = _d_ogf(max_n + 1)
    return list(s.coeffs[: max_n + 1])


# ---------------------------------------------------------------------------
# D_n routes


def D_rec(n: int) -> MultiPoly:
    return CACHE.D(n)


class ImaginaryResidueError(ArithmeticError):
    """A result that must be real kept an imaginary part."""


def D_from_d(n: int, d_poly: MultiPoly = None) -> MultiPoly:
    """(-i)^n n! d_n((ix-1)/2), from the direct-sum d_n unless one is given."""
    if n < 0:
        return MultiPoly.zero()
    d = d_poly if d_poly is not None else d_def(n)
    sub = poly_subst_x_affine(d, I / 2, Fraction(-1, 2))
    scale = (-I) ** n * math.factorial(n)
    out = sub * MultiPoly.const(scale)
    if not out.is_real():
        raise ImaginaryResidueError(
            f"D_from_d({n}) has imaginary residue {out.imag_part()}")
    return out


@lru_cache(maxsize=4)
def _D_egf(order: int) -> TruncSeries:
    weight = series_binpow(-R - Fraction(1, 2), TruncSeries.t(order, power=2))
    return series_mul(weight, series_exp_scaled(X, series_arctan(order)))


def D_egf(n: int, order: int = None) -> MultiPoly:
    """n! times the coefficient of t^n in the exponential generating function."""
    if n < 0:
        return MultiPoly.zero()
    s = _D_egf(order if order is not None else _series_order("D", n))
    return s.coeffs[n] * math.factorial(n)


def D_egf_list(max_n: int) -> List[MultiPoly]:
    s = _D_egf(max_n + 1)
    return [s.coeffs[n] * math.factorial(n) for n in range(max_n + 1)]


def build(family: str, n: int, route: str) -> MultiPoly:
    """Dispatch used by the CLI: ``family`` is ``d`` or ``D``."""
    table = {
        ("d", "def"): d_def,
        ("d", "rec"): d_rec,
        ("d", "gf"): d_gf,
        ("D", "rec"): D_rec,
        ("D", "from-d"): D_from_d,
        ("D", "egf"): D_egf,
    }
    try:
        fn = table[(family, route)]
    except KeyError:
        valid = ROUTES_d if family == "d" else ROUTES_D
        raise ValueError(
            f"route {route!r} is not valid for family {family!r}; choose from {valid}"
        ) from None
    return fn(n)


# ---------------------------------------------------------------------------
# variants used by the identity checks


@lru_cache(maxsize=None)
def d_shift(n: int, s: int) -> MultiPoly:
    """d_n with r replaced by r + s."""
    if n < 0:
        return MultiPoly.zero()
    p = CACHE.d(n)
    return p if s == 0 else shift_var(p, "r", s)


@lru_cache(maxsize=None)
def D_shift(n: int, s: int) -> MultiPoly:
    if n < 0:
        return MultiPoly.zero()
    p = CACHE.D(n)
    return p if s == 0 else shift_var(p, "r", s)


@lru_cache(maxsize=None)
def d_at_r(n: int, r) -> MultiPoly:
    """d_n with r specialized (r = 0 gives the classical Delannoy polynomial)."""
    if n < 0:
        return MultiPoly.zero()
    return poly_eval(CACHE.d(n), {"r": r})


@lru_cache(maxsize=None)
def D_at_r(n: int, r) -> MultiPoly:
    if n < 0:
        return MultiPoly.zero()
    return poly_eval(CACHE.D(n), {"r": r})


def d_classical(n: int) -> MultiPoly:
    return d_at_r(n, 0)


# ---------------------------------------------------------------------------
# Delannoy numbers


def delannoy_number(m: int, n: int) -> int:
    """Lattice paths (0,0) -> (m,n) with steps (1,0), (0,1), (1,1)."""
    if m < 0 or n < 0:
        raise ValueError("Delannoy numbers need m, n >= 0")
    return sum(int_binomial(n, k) * int_binomial(m, k) << k for k in range(min(m, n) + 1))


def delannoy_table_dp(m_max: int, n_max: int) -> Dict[Tuple[int, int], int]:
    """D(m,n) = D(m-1,n) + D(m,n-1) + D(m-1,n-1) with D(0,n) = D(m,0) = 1."""
    tab: Dict[Tuple[int, int], int] = {}
    for m in range(m_max + 1):
        for n in range(n_max + 1):
            if m == 0 or n == 0:
                tab[m, n] = 1
            else:
                tab[m, n] = tab[m - 1, n] + tab[m, n - 1] + tab[m - 1, n - 1]
    return tab


def delannoy_from_poly(m: int, n: int) -> int:
    v = eval_int(d_def(n), {"x": m, "r": 0})
    if v.denominator != 1:
        raise ArithmeticError(f"d_{n}({m}) evaluated to non-integer {v}")
    return v.numerator
