"""Exact scalar arithmetic: rationals, Gaussian rationals and integer binomials.

Rationals are :class:`fractions.Fraction` values.  They are already kept in
canonical form (positive denominator, reduced), so structural equality is
mathematical equality.  ``GaussRational`` adds the imaginary unit on top.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction, "GaussRational"]

__all__ = [
    "Rational",
    "GaussRational",
    "I",
    "rat_ops",
    "gauss_ops",
    "int_binomial",
    "falling_factorial",
    "rat_to_str",
    "rat_from_str",
    "as_rational",
]


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return rat_from_str(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_to_str(q: Fraction) -> str:
    """Serialize as ``"p/q"``, dropping ``/1``."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def rat_from_str(text: str) -> Fraction:
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational literal: {text!r}")
    return Fraction(text)


_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_ops(a, b, op: str):
    """Apply ``op`` to two rationals.

    ``cmp`` returns -1, 0 or 1.  Division by zero raises ``ZeroDivisionError``.
    """
    a, b = as_rational(a), as_rational(b)
    if op == "cmp":
        return (a > b) - (a < b)
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"rational division by zero: {rat_to_str(a)}/0")
    return fn(a, b)


class GaussRational:
    """An element ``re + im*i`` of Q(i).  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_rational(re))
        object.__setattr__(self, "im", as_rational(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex values are not exact")
        return cls(value, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian rational division by zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = GaussRational(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------
    def __eq__(self, other):
        try:
            o = GaussRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __repr__(self):
        return f"GaussRational({rat_to_str(self.re)!r}, {rat_to_str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return rat_to_str(self.re)
        if self.re == 0:
            return f"{rat_to_str(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{rat_to_str(self.re)}{sign}{rat_to_str(abs(self.im))}i"

    def to_json(self) -> dict:
        return {"re": rat_to_str(self.re), "im": rat_to_str(self.im)}

    @classmethod
    def from_json(cls, obj: dict) -> "GaussRational":
        return cls(rat_from_str(obj["re"]), rat_from_str(obj.get("im", "0")))


I = GaussRational(0, 1)


def gauss_ops(a, b, op: str) -> GaussRational:
    """Apply ``op`` in Q(i); ``conj`` ignores ``b``."""
    a = GaussRational.coerce(a)
    if op == "conj":
        return a.conj()
    b = GaussRational.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown Gaussian operation {op!r}")


def falling_factorial(a: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= a - j
    return out


def int_binomial(n: int, k: int) -> int:
    """C(n, k) for any integer n; zero when k < 0.

    Negative ``n`` uses the falling-factorial extension, so
    ``C(-a, k) = (-1)**k * C(a + k - 1, k)``.
    """
    if k < 0:
        return 0
    if n >= 0:
        if k > n:
            return 0
        k = min(k, n - k)
    num = falling_factorial(n, k)
    den = 1
    for j in range(2, k + 1):
        den *= j
    return num // den
