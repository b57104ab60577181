"""Truncated power series in t with t-free polynomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence

from .multipoly import MultiPoly, binom_poly, poly_from_json, poly_to_json


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients of t^0 .. t^order.  Dense, since GF coefficients rarely vanish."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 0:
            raise SeriesError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise SeriesError(
                f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")
        for c in self.coeffs:
            if not isinstance(c, MultiPoly):
                raise TypeError("series coefficients must be MultiPoly values")
            if c.degree("t") > 0:
                raise SeriesError("series coefficients must not involve t")

    @classmethod
    def from_list(cls, coeffs: Sequence, order: int) -> "TruncSeries":
        cs = [MultiPoly.const(c) for c in list(coeffs)[: order + 1]]
        cs += [MultiPoly.zero()] * (order + 1 - len(cs))
        return cls(order, tuple(cs))

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.from_list([1], order)

    @classmethod
    def t(cls, order: int, power: int = 1, scale=1) -> "TruncSeries":
        """scale * t**power"""
        cs = [0] * (order + 1)
        if power <= order:
            cs[power] = scale
        return cls.from_list(cs, order)

    def __getitem__(self, n: int) -> MultiPoly:
        return series_coeff(self, n)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        _same_order(self, other)
        return TruncSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        _same_order(self, other)
        return TruncSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return series_mul(self, other)
        return self.scale(other)

    def scale(self, c) -> "TruncSeries":
        c = MultiPoly.const(c)
        return TruncSeries(self.order, tuple(a * c for a in self.coeffs))

    def derivative(self) -> "TruncSeries":
        """d/dt; the result has order - 1 (order 0 stays 0)."""
        if self.order == 0:
            return TruncSeries.from_list([], 0)
        return TruncSeries(self.order - 1,
                           tuple(self.coeffs[n] * n for n in range(1, self.order + 1)))

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("cannot extend a truncated series")
        return TruncSeries(order, self.coeffs[: order + 1])

    def valuation(self) -> int:
        for n, c in enumerate(self.coeffs):
            if not c.is_zero():
                return n
        return self.order + 1

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [poly_to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "TruncSeries":
        return cls(obj["order"], tuple(poly_from_json(c) for c in obj["coeffs"]))


def _same_order(a: TruncSeries, b: TruncSeries) -> None:
    if a.order != b.order:
        raise SeriesError(f"order mismatch: {a.order} vs {b.order}")


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product, truncated at the common order."""
    _same_order(a, b)
    N = a.order
    out: List[MultiPoly] = []
    for n in range(N + 1):
        acc = MultiPoly.zero()
        for k in range(n + 1):
            x, y = a.coeffs[k], b.coeffs[n - k]
            if x.is_zero() or y.is_zero():
                continue
            acc = acc + x * y
        out.append(acc)
    return TruncSeries(N, tuple(out))


def _powers(u: TruncSeries, upto: int) -> List[TruncSeries]:
    pw = [TruncSeries.one(u.order)]
    for _ in range(upto):
        pw.append(series_mul(pw[-1], u))
    return pw


def _require_no_constant(u: TruncSeries) -> None:
    if not u.coeffs[0].is_zero():
        raise SeriesError("inner series must have zero constant term")


def series_binpow(alpha, u: TruncSeries) -> TruncSeries:
    """(1 + u)**alpha = sum_n C(alpha, n) u**n for t-free ``alpha``."""
    alpha = MultiPoly.const(alpha)
    if alpha.degree("t") > 0:
        raise SeriesError("exponent must not involve t")
    _require_no_constant(u)
    N = u.order
    if u.valuation() > N:
        return TruncSeries.one(N)
    acc = TruncSeries.one(N)
    power = TruncSeries.one(N)
    n = 1
    while n <= N // u.valuation():
        power = series_mul(power, u)
        acc = acc + power.scale(binom_poly(alpha, n))
        n += 1
    return acc


def series_exp_scaled(c, s: TruncSeries) -> TruncSeries:
    """exp(c * s) = sum_k c**k s**k / k! for t-free ``c``."""
    c = MultiPoly.const(c)
    if c.degree("t") > 0:
        raise SeriesError("scale must not involve t")
    _require_no_constant(s)
    N = s.order
    cs = s.scale(c)
    acc = TruncSeries.one(N)
    if cs.valuation() > N:
        return acc
    term = TruncSeries.one(N)
    for k in range(1, N // cs.valuation() + 1):
        term = series_mul(term, cs).scale(Fraction(1, k))
        acc = acc + term
    return acc


def series_arctan(order: int) -> TruncSeries:
    cs = [0] * (order + 1)
    for k in range(order // 2 + 1):
        if 2 * k + 1 <= order:
            cs[2 * k + 1] = Fraction((-1) ** k, 2 * k + 1)
    return TruncSeries.from_list(cs, order)


def series_coeff(s: TruncSeries, n: int) -> MultiPoly:
    if n < 0 or n > s.order:
        raise SeriesError(f"coefficient t^{n} outside truncation order {s.order}")
    return s.coeffs[n]
