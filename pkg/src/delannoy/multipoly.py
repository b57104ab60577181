"""Sparse polynomials over Q(i) in the fixed variables x, y, r, t.

Internally a polynomial is ``(re + i*im) / den`` where ``re`` and ``im`` map a
packed exponent vector to an integer and ``den`` is a positive integer.  The
representation is canonical (no zero entries, gcd of all integers with ``den``
equal to one), so ``==`` is structural.  Exponent vectors are packed into one
int with 16 bits per variable; a monomial product is then a single integer
addition.

The generalized binomial ``binom_poly(alpha, k)`` and the substitutions used by
the identity checks live here as well.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .exact import GaussRational, as_rational, rat_from_str, rat_to_str

VARS = ("x", "y", "r", "t")
NVARS = len(VARS)
VAR_INDEX = {v: i for i, v in enumerate(VARS)}

_BITS = 16
_FIELD = (1 << _BITS) - 1
MAX_EXPONENT = _FIELD

Exponent = Tuple[int, int, int, int]


def pack(exp: Iterable[int]) -> int:
    key = 0
    for i, e in enumerate(exp):
        if e < 0 or e > MAX_EXPONENT:
            raise ValueError(f"exponent {e} outside 0..{MAX_EXPONENT}")
        key |= e << (_BITS * i)
    return key


def unpack(key: int) -> Exponent:
    return (
        key & _FIELD,
        (key >> _BITS) & _FIELD,
        (key >> (2 * _BITS)) & _FIELD,
        (key >> (3 * _BITS)) & _FIELD,
    )


def _max_fields(keys) -> Tuple[int, ...]:
    m = [0] * NVARS
    for key in keys:
        for i in range(NVARS):
            e = (key >> (_BITS * i)) & _FIELD
            if e > m[i]:
                m[i] = e
    return tuple(m)


def _mul_dicts(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    if len(a) < len(b):
        a, b = b, a
    out: Dict[int, int] = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _axpy(a: Dict[int, int], sa: int, b: Dict[int, int], sb: int) -> Dict[int, int]:
    out = {k: v * sa for k, v in a.items()} if sa != 1 else dict(a)
    get = out.get
    for k, v in b.items():
        out[k] = get(k, 0) + v * sb
    return {k: v for k, v in out.items() if v}


class MultiPoly:
    """Immutable sparse polynomial in x, y, r, t with Gaussian-rational coefficients."""

    __slots__ = ("_re", "_im", "_den", "_hash")

    def __init__(self, re: Optional[Dict[int, int]] = None,
                 im: Optional[Dict[int, int]] = None, den: int = 1,
                 *, _canonical: bool = False):
        re = re or {}
        im = im or {}
        if not _canonical:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if den < 0:
                re = {k: -v for k, v in re.items()}
                im = {k: -v for k, v in im.items()}
                den = -den
            re = {k: v for k, v in re.items() if v}
            im = {k: v for k, v in im.items() if v}
            if not re and not im:
                den = 1
            elif den != 1:
                g = math.gcd(den, *re.values(), *im.values())
                if g != 1:
                    re = {k: v // g for k, v in re.items()}
                    im = {k: v // g for k, v in im.items()}
                    den //= g
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        object.__setattr__(self, "_den", den)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "MultiPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "MultiPoly":
        return _ONE

    @classmethod
    def const(cls, c) -> "MultiPoly":
        if isinstance(c, MultiPoly):
            return c
        g = GaussRational.coerce(c)
        return cls.monomial((0, 0, 0, 0), g)

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        exp = [0] * NVARS
        exp[VAR_INDEX[name]] = 1
        return cls({pack(exp): 1}, _canonical=True)

    @classmethod
    def monomial(cls, exp: Iterable[int], coeff=1) -> "MultiPoly":
        return cls.from_terms({tuple(exp): coeff})

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, object]) -> "MultiPoly":
        """Build from ``{(ex, ey, er, et): coefficient}``."""
        items = []
        den = 1
        for exp, c in terms.items():
            g = GaussRational.coerce(c)
            items.append((pack(exp), g))
            den = math.lcm(den, g.re.denominator, g.im.denominator)
        re: Dict[int, int] = {}
        im: Dict[int, int] = {}
        for key, g in items:
            if g.re:
                re[key] = re.get(key, 0) + g.re.numerator * (den // g.re.denominator)
            if g.im:
                im[key] = im.get(key, 0) + g.im.numerator * (den // g.im.denominator)
        return cls(re, im, den)

    # -- inspection ---------------------------------------------------------
    @property
    def terms(self) -> Dict[Exponent, GaussRational]:
        out = {}
        for key in set(self._re) | set(self._im):
            out[unpack(key)] = GaussRational(
                Fraction(self._re.get(key, 0), self._den),
                Fraction(self._im.get(key, 0), self._den),
            )
        return out

    def coefficient(self, exp: Iterable[int]) -> GaussRational:
        key = pack(exp)
        return GaussRational(
            Fraction(self._re.get(key, 0), self._den),
            Fraction(self._im.get(key, 0), self._den),
        )

    def __len__(self):
        return len(set(self._re) | set(self._im))

    def is_zero(self) -> bool:
        return not self._re and not self._im

    def __bool__(self):
        return not self.is_zero()

    def is_real(self) -> bool:
        return not self._im

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._re) and all(k == 0 for k in self._im)

    def constant_value(self) -> GaussRational:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.coefficient((0, 0, 0, 0))

    def degree(self, var: Optional[str] = None) -> int:
        """Degree in ``var``, or total degree; -1 for the zero polynomial."""
        keys = list(self._re) + list(self._im)
        if not keys:
            return -1
        if var is None:
            return max(sum(unpack(k)) for k in keys)
        shift = _BITS * VAR_INDEX[var]
        return max((k >> shift) & _FIELD for k in keys)

    def variables(self) -> Tuple[str, ...]:
        m = _max_fields(list(self._re) + list(self._im))
        return tuple(v for v, e in zip(VARS, m) if e)

    def real_part(self) -> "MultiPoly":
        return MultiPoly(dict(self._re), None, self._den)

    def imag_part(self) -> "MultiPoly":
        return MultiPoly(dict(self._im), None, self._den)

    def coeff_in(self, var: str, k: int) -> "MultiPoly":
        """Coefficient of ``var**k``, as a polynomial free of ``var``."""
        shift = _BITS * VAR_INDEX[var]
        mask = _FIELD << shift
        target = k << shift

        def pick(d):
            return {key - target: v for key, v in d.items() if key & mask == target}

        return MultiPoly(pick(self._re), pick(self._im), self._den)

    # -- equality -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        return (self._den == other._den and self._re == other._re
                and self._im == other._im)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self._den, frozenset(self._re.items()),
                      frozenset(self._im.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- ring operations ----------------------------------------------------
    @staticmethod
    def _lift(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        return MultiPoly.const(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        L = self._den * o._den // math.gcd(self._den, o._den)
        sa, sb = L // self._den, L // o._den
        return MultiPoly(_axpy(self._re, sa, o._re, sb),
                         _axpy(self._im, sa, o._im, sb), L)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({k: -v for k, v in self._re.items()},
                         {k: -v for k, v in self._im.items()},
                         self._den, _canonical=True)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self._scale_int(other, 1)
        if isinstance(other, Fraction):
            return self._scale_int(other.numerator, other.denominator)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return _ZERO
        ma = _max_fields(list(self._re) + list(self._im))
        mb = _max_fields(list(o._re) + list(o._im))
        if any(a + b > MAX_EXPONENT for a, b in zip(ma, mb)):
            raise OverflowError("exponent overflow in polynomial product")
        re = _mul_dicts(self._re, o._re)
        im: Dict[int, int] = {}
        if self._im and o._im:
            re = _axpy(re, 1, _mul_dicts(self._im, o._im), -1)
        if self._im:
            im = _mul_dicts(self._im, o._re)
        if o._im:
            im = _axpy(im, 1, _mul_dicts(self._re, o._im), 1)
        return MultiPoly(re, im, self._den * o._den)

    __rmul__ = __mul__

    def _scale_int(self, num: int, den: int) -> "MultiPoly":
        if num == 0:
            return _ZERO
        return MultiPoly({k: v * num for k, v in self._re.items()},
                         {k: v * num for k, v in self._im.items()},
                         self._den * den)

    def __truediv__(self, other):
        """Division by a nonzero scalar only."""
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("MultiPoly supports division by scalars only")
            other = other.constant_value()
        if isinstance(other, (int, Fraction)):
            q = as_rational(other)
            if q == 0:
                raise ZeroDivisionError("polynomial division by zero")
            return self._scale_int(q.denominator, q.numerator)
        g = GaussRational.coerce(other)
        return self * MultiPoly.const(g.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result, base = _ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- display ------------------------------------------------------------
    def sorted_terms(self):
        """Terms in graded-lex order, x > y > r > t, largest first."""
        items = self.terms.items()
        return sorted(items, key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def __repr__(self):
        return f"MultiPoly({pretty(self)!r})"

    def __str__(self):
        return pretty(self)

    def to_json(self) -> dict:
        return poly_to_json(self)


_ZERO = MultiPoly(_canonical=True)
_ONE = MultiPoly({0: 1}, _canonical=True)

X = MultiPoly.var("x")
Y = MultiPoly.var("y")
R = MultiPoly.var("r")
T = MultiPoly.var("t")


def poly_ops(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# generalized binomial coefficients


@lru_cache(maxsize=1 << 16)
def binom_poly(alpha: MultiPoly, k: int) -> MultiPoly:
    """C(alpha, k) = alpha (alpha-1) ... (alpha-k+1) / k!; zero for k < 0."""
    if k < 0:
        return _ZERO
    if k == 0:
        return _ONE
    prev = binom_poly(alpha, k - 1)
    return prev * (alpha - (k - 1)) * Fraction(1, k)


def binom_lin(coeffs: Mapping[str, int], const, k: int) -> MultiPoly:
    """C(sum coeffs[v]*v + const, k) for a linear upper argument."""
    alpha = MultiPoly.const(const)
    for v, c in sorted(coeffs.items()):
        if c:
            alpha = alpha + MultiPoly.var(v) * c
    return binom_poly(alpha, k)


# ---------------------------------------------------------------------------
# substitution, evaluation, differentiation


def substitute(p: MultiPoly, var: str, value) -> MultiPoly:
    """Replace ``var`` by a polynomial (or scalar) and re-expand."""
    q = MultiPoly._lift(value)
    shift = _BITS * VAR_INDEX[var]
    mask = _FIELD << shift
    groups: Dict[int, Tuple[Dict[int, int], Dict[int, int]]] = {}
    for src, slot in ((p._re, 0), (p._im, 1)):
        for key, v in src.items():
            e = (key & mask) >> shift
            g = groups.setdefault(e, ({}, {}))
            g[slot][key & ~mask] = v
    if not groups:
        return _ZERO
    # Horner in the substituted variable
    top = max(groups)
    acc = _ZERO
    for e in range(top, -1, -1):
        acc = acc * q
        if e in groups:
            re, im = groups[e]
            acc = acc + MultiPoly(re, im, p._den)
    return acc


def poly_eval(p: MultiPoly, assignment: Mapping[str, object]) -> MultiPoly:
    """Specialize the variables in ``assignment``; the rest stay symbolic."""
    for var, value in assignment.items():
        if var not in VAR_INDEX:
            raise KeyError(f"unknown variable {var!r}; expected one of {VARS}")
        p = substitute(p, var, value)
    return p


def shift_var(p: MultiPoly, var: str, offset) -> MultiPoly:
    """p with ``var`` replaced by ``var + offset``."""
    return substitute(p, var, MultiPoly.var(var) + offset)


def rename_var(p: MultiPoly, src: str, dst: str) -> MultiPoly:
    """Swap a variable for an unused one, e.g. x -> y for bivariate products."""
    if dst in p.variables():
        raise ValueError(f"target variable {dst!r} already occurs")
    s, d = _BITS * VAR_INDEX[src], _BITS * VAR_INDEX[dst]
    mask = _FIELD << s

    def move(dct):
        return {(k & ~mask) | (((k & mask) >> s) << d): v for k, v in dct.items()}

    return MultiPoly(move(p._re), move(p._im), p._den, _canonical=True)


def poly_diff(p: MultiPoly, var: str) -> MultiPoly:
    shift = _BITS * VAR_INDEX[var]
    unit = 1 << shift

    def d(dct):
        out = {}
        for key, v in dct.items():
            e = (key >> shift) & _FIELD
            if e:
                out[key - unit] = v * e
        return out

    return MultiPoly(d(p._re), d(p._im), p._den)


def poly_diff_x(p: MultiPoly) -> MultiPoly:
    return poly_diff(p, "x")


def poly_subst_x_affine(p: MultiPoly, a, b) -> MultiPoly:
    """p(a*x + b) for Gaussian-rational ``a`` and ``b``.

    Only for polynomials in x and r; y or t occurring is a usage error.
    """
    if any(v in ("y", "t") for v in p.variables()):
        raise ValueError("affine x-substitution expects a polynomial in x and r only")
    a = GaussRational.coerce(a)
    b = GaussRational.coerce(b)
    return substitute(p, "x", X * MultiPoly.const(a) + MultiPoly.const(b))


def eval_int(p: MultiPoly, values: Mapping[str, int]) -> Fraction:
    """Fully evaluate a real polynomial at integer or rational points."""
    if p._im:
        raise ValueError("eval_int expects a real polynomial")
    pts = [as_rational(values.get(v, 0)) for v in VARS]
    used = p.variables()
    missing = [v for v in used if v not in values]
    if missing:
        raise KeyError(f"no value for {missing}")
    num_lcm = reduce(math.lcm, (q.denominator for q in pts), 1)
    if num_lcm == 1:
        ipts = [q.numerator for q in pts]
        total = 0
        for key, c in p._re.items():
            term = c
            for i in range(NVARS):
                e = (key >> (_BITS * i)) & _FIELD
                if e:
                    term *= ipts[i] ** e
            total += term
        return Fraction(total, p._den)
    total = Fraction(0)
    for key, c in p._re.items():
        term = Fraction(c)
        for i in range(NVARS):
            e = (key >> (_BITS * i)) & _FIELD
            if e:
                term *= pts[i] ** e
        total += term
    return total / p._den


# ---------------------------------------------------------------------------
# serialization and display


def poly_to_json(p: MultiPoly) -> dict:
    terms = []
    for exp, c in p.sorted_terms():
        terms.append({"exp": list(exp), "re": rat_to_str(c.re), "im": rat_to_str(c.im)})
    return {"vars": list(VARS), "terms": terms}


def poly_from_json(obj: Mapping) -> MultiPoly:
    names = list(obj.get("vars", VARS))
    order = [names.index(v) if v in names else None for v in VARS]
    terms = {}
    for t in obj["terms"]:
        exp = tuple(t["exp"][j] if j is not None else 0 for j in order)
        c = GaussRational(rat_from_str(t["re"]), rat_from_str(t.get("im", "0")))
        terms[exp] = terms.get(exp, GaussRational(0)) + c
    return MultiPoly.from_terms(terms)


def _monomial_str(exp: Iterable[int], skip=()) -> str:
    parts = []
    for v, e in zip(VARS, exp):
        if v in skip or e == 0:
            continue
        parts.append(v if e == 1 else f"{v}^{e}")
    return "".join(parts)


def _scalar_str(c: GaussRational) -> str:
    if c.im == 0:
        return rat_to_str(c.re)
    return f"({c})"


def _flat(p: MultiPoly, skip=()) -> str:
    """Render a sum of terms with explicit signs, largest term first."""
    out = []
    for exp, c in p.sorted_terms():
        mono = _monomial_str(exp, skip)
        if c.im == 0:
            neg = c.re < 0
            mag = abs(c.re)
            coef = "" if (mag == 1 and mono) else rat_to_str(mag)
        else:
            neg = False
            coef = _scalar_str(c)
        sign = "-" if neg else "+"
        out.append(sign + coef + mono)
    text = "".join(out)
    return text[1:] if text.startswith("+") else text


def pretty(p: MultiPoly) -> str:
    """Display string grouped by descending powers of x.

    Coefficients of x^k that are themselves sums are parenthesized, with a
    negative leading sign pulled outside, e.g. ``x^3-(6r+5)x``.
    """
    if p.is_zero():
        return "0"
    dx = p.degree("x")
    pieces = []
    for k in range(dx, -1, -1):
        c = p.coeff_in("x", k)
        if c.is_zero():
            continue
        xs = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        body = _flat(c)
        if len(c) == 1 or not xs:
            if xs:
                if body == "1":
                    body = ""
                elif body == "-1":
                    body = "-"
            piece = body + xs
            if not piece.startswith("-"):
                piece = "+" + piece
        else:
            lead = c.sorted_terms()[0][1]
            if lead.im == 0 and lead.re < 0:
                piece = "-(" + _flat(-c) + ")" + xs
            else:
                piece = "+(" + body + ")" + xs
        pieces.append(piece)
    text = "".join(pieces)
    return text[1:] if text.startswith("+") else text
