"""Exact coefficient fields: rationals, rational functions in the
multiplicity parameters, and cyclotomic extensions.

Rationals are plain :class:`fractions.Fraction`.  Rational functions are
reduced fractions of multivariate polynomials over Q (kept as
``flint.fmpq_mpoly``).  Cyclotomic numbers are residues modulo the m-th
cyclotomic polynomial with coefficients in either of the other two fields.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

from flint import fmpq, fmpq_mpoly_ctx

__all__ = [
    "ZeroDenominatorError",
    "PoleError",
    "ParamSpace",
    "RatFun",
    "Cyclotomic",
    "ratfun_normalize",
    "ratfun_eval",
    "binom_sym",
    "cyclotomic_poly",
    "cyclotomic_mul",
    "euler_phi",
    "format_rational",
    "parse_rational",
    "to_fraction",
    "is_zero",
    "format_scalar",
]


class ZeroDenominatorError(ZeroDivisionError):
    """Raised when a rational function is built with a zero denominator."""


class PoleError(ArithmeticError):
    """A specialization hit a root of a (reduced) denominator."""

    def __init__(self, message: str, denominator=None, point=None):
        super().__init__(message)
        self.denominator = denominator
        self.point = point


# ---------------------------------------------------------------- rationals


def to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    if isinstance(q, fmpq):
        return Fraction(int(q.p), int(q.q))
    if isinstance(q, str):
        return parse_rational(q)
    raise TypeError(f"cannot convert {type(q).__name__} to a rational")


def format_rational(q) -> str:
    q = to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def _fmpq(q) -> fmpq:
    if isinstance(q, fmpq):
        return q
    q = to_fraction(q)
    return fmpq(q.numerator, q.denominator)


def is_zero(x) -> bool:
    return not x


# ------------------------------------------------------- rational functions


class ParamSpace:
    """The polynomial ring Q[p1, ..., pk] of multiplicity parameters.

    Instances are interned by their tuple of names.
    """

    _cache: dict = {}

    def __new__(cls, names: Sequence[str] = ()):
        names = tuple(names)
        obj = cls._cache.get(names)
        if obj is None:
            obj = super().__new__(cls)
            obj.names = names
            # flint needs at least one generator; a dummy never appears in
            # any polynomial of the empty space
            obj.ctx = fmpq_mpoly_ctx.get(names or ("_",), "deglex")
            cls._cache[names] = obj
        return obj

    def __repr__(self):
        return f"ParamSpace({self.names!r})"

    def __reduce__(self):
        return (ParamSpace, (self.names,))

    @property
    def nparams(self) -> int:
        return len(self.names)

    def poly(self, value):
        """Coerce an int/Fraction/fmpq into a constant polynomial."""
        return self.ctx.constant(_fmpq(value))

    def zero(self) -> "RatFun":
        return RatFun._raw(self, self.ctx.constant(0), self.ctx.constant(1))

    def one(self) -> "RatFun":
        return RatFun._raw(self, self.ctx.constant(1), self.ctx.constant(1))

    def const(self, value) -> "RatFun":
        return RatFun._raw(self, self.poly(value), self.ctx.constant(1))

    def gen(self, name: str) -> "RatFun":
        idx = self.names.index(name)
        return RatFun._raw(self, self.ctx.gen(idx), self.ctx.constant(1))

    def gens(self) -> tuple:
        return tuple(self.gen(n) for n in self.names)

    def parse(self, text: str) -> "RatFun":
        return RatFun.parse(text, self)


def _primitive_scale(poly) -> fmpq:
    """Rational s such that s*poly has coprime integer coefficients and a
    positive leading coefficient (graded-lex)."""
    coeffs = [to_fraction(c) for c in poly.coeffs()]
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in coeffs:
        num = math.gcd(num, c.numerator)
    s = Fraction(den, num)
    if poly.leading_coefficient() < 0:
        s = -s
    return fmpq(s.numerator, s.denominator)


def _normalize_pair(num, den):
    if den.is_zero():
        raise ZeroDenominatorError("zero denominator")
    ctx = den.context()
    if num.is_zero():
        return ctx.constant(0), ctx.constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_constant():
            num = num / g
            den = den / g
    if den.is_constant():
        return num / den.leading_coefficient(), ctx.constant(1)
    s = _primitive_scale(den)
    if s != 1:
        num = num * s
        den = den * s
    return num, den


def _format_param_poly(poly, names: Sequence[str]) -> str:
    items = sorted(poly.to_dict().items(), key=lambda t: (sum(t[0]), t[0]),
                   reverse=True)
    if not items:
        return "0"
    out = []
    for i, (exp, c) in enumerate(items):
        c = to_fraction(c)
        mono = "*".join(
            (names[j] if e == 1 else f"{names[j]}^{e}")
            for j, e in enumerate(exp) if e)
        neg = c < 0
        a = -c if neg else c
        if mono:
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        else:
            body = format_rational(a)
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


def _parse_param_poly(text: str, space: ParamSpace):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1]
    ctx = space.ctx
    acc = ctx.constant(0)
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    # split on +/- that are not exponent or fraction parts
    tokens = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        coef = Fraction(sign)
        term = ctx.constant(1)
        for factor in tok.split("*"):
            if not factor:
                raise ValueError(f"malformed term {tok!r}")
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coef *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in space.names:
                raise ValueError(f"unknown parameter {name!r}")
            term = term * ctx.gen(space.names.index(name)) ** int(power or 1)
        acc = acc + term * _fmpq(coef)
    return acc


class RatFun:
    """Reduced quotient of two parameter polynomials.

    The denominator has coprime integer coefficients and a positive
    graded-lex leading coefficient; zero is ``0/1``.
    """

    __slots__ = ("space", "num", "den")

    def __init__(self, space: ParamSpace, num, den=1):
        num = space.poly(num) if not hasattr(num, "context") else num
        den = space.poly(den) if not hasattr(den, "context") else den
        self.space = space
        self.num, self.den = _normalize_pair(num, den)

    @classmethod
    def _raw(cls, space, num, den):
        obj = object.__new__(cls)
        obj.space = space
        obj.num = num
        obj.den = den
        return obj

    # coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RatFun):
            if other.space is self.space:
                return other
            if other.is_constant():
                return self.space.const(other.constant_value())
            if self.is_constant():
                return other
            raise ValueError(
                f"parameter spaces differ: {self.space.names} vs "
                f"{other.space.names}")
        if isinstance(other, (int, Fraction, fmpq)):
            return RatFun._raw(self.space, self.space.poly(other),
                               self.space.ctx.constant(1))
        return NotImplemented

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return to_fraction(self.num.leading_coefficient()) if not self.num.is_zero() \
            else Fraction(0)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.space is not self.space:
            return o.__add__(self)
        if self.den.is_one() and o.den.is_one():
            return RatFun._raw(self.space, self.num + o.num, self.den)
        if self.den == o.den:
            return RatFun(self.space, self.num + o.num, self.den)
        return RatFun(self.space, self.num * o.den + o.num * self.den,
                      self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(self.space, -self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.space is not self.space:
            return o.__mul__(self)
        if self.den.is_one() and o.den.is_one():
            return RatFun._raw(self.space, self.num * o.num, self.den)
        return RatFun(self.space, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.space, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.space is not self.space:
            return RatFun(o.space, self.constant_value()) / o \
                if self.is_constant() else NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun._raw(self.space, self.num ** k, self.den ** k)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, RatFun) and other.space is not self.space:
            if self.is_constant() and other.is_constant():
                return self.constant_value() == other.constant_value()
            return False
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash((self.space.names, str(self.num), str(self.den)))

    # evaluation -------------------------------------------------------
    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        return ratfun_eval(self, point)

    def subs(self, images: Mapping[str, "RatFun"], space: ParamSpace) -> "RatFun":
        """Substitute every parameter by a rational function over ``space``."""
        result_num = _compose_ratfun(self.num, self.space, images, space)
        result_den = _compose_ratfun(self.den, self.space, images, space)
        return result_num / result_den

    # text -------------------------------------------------------------
    def __str__(self):
        names = self.space.names
        return (f"({_format_param_poly(self.num, names)})/"
                f"({_format_param_poly(self.den, names)})")

    def __repr__(self):
        return f"RatFun<{self}>"

    @classmethod
    def parse(cls, text: str, space: ParamSpace) -> "RatFun":
        text = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", text)
        if m:
            return cls(space, _parse_param_poly(m.group(1), space),
                       _parse_param_poly(m.group(2), space))
        return cls(space, _parse_param_poly(text, space))


def _compose_ratfun(poly, space, images, target):
    acc = target.zero()
    for exp, c in poly.to_dict().items():
        term = target.const(to_fraction(c))
        for name, e in zip(space.names, exp):
            if e:
                img = images[name]
                if not isinstance(img, RatFun):
                    img = target.const(img)
                term = term * img ** e
        acc = acc + term
    return acc


def ratfun_normalize(num, den, space: ParamSpace | None = None) -> RatFun:
    """Reduce ``num/den`` to canonical form."""
    if isinstance(num, RatFun) or isinstance(den, RatFun):
        sp = num.space if isinstance(num, RatFun) else den.space
        n = num if isinstance(num, RatFun) else sp.const(num)
        d = den if isinstance(den, RatFun) else sp.const(den)
        if d.is_zero():
            raise ZeroDenominatorError("zero denominator")
        return n / d
    if space is None:
        raise ValueError("a parameter space is required for bare values")
    return RatFun(space, num, den)


def ratfun_eval(f, point: Mapping[str, object]) -> Fraction:
    """Value of ``f`` at a rational point; PoleError on a denominator root."""
    if isinstance(f, (int, Fraction)):
        return Fraction(f)
    names = f.space.names
    missing = [n for n in names if n not in point]
    if missing:
        raise ValueError(f"point does not assign {missing}")
    if not names:
        return f.constant_value()
    vals = [_fmpq(to_fraction(point[n])) for n in names]
    d = f.den(*vals)
    if d == 0:
        shown = ", ".join(f"{n}={format_rational(to_fraction(point[n]))}" for n in names)
        raise PoleError(f"pole of {f} at {shown}",
                        denominator=_format_param_poly(f.den, names),
                        point=dict(point))
    return to_fraction(f.num(*vals) / d)


def binom_sym(k: int, space: ParamSpace | None = None, name: str = "c") -> RatFun:
    """Falling-factorial binomial c(c-1)...(c-k+1)/k! as a polynomial in c."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    space = space or ParamSpace((name,))
    c = space.gen(name)
    acc = space.one()
    for j in range(k):
        acc = acc * (c - j)
    return acc * Fraction(1, math.factorial(k))


# ----------------------------------------------------------- cyclotomics


def euler_phi(m: int) -> int:
    result, n, p = m, m, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


def _int_poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        coef = a[i + len(b) - 1]
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    if any(a[: len(b) - 1]):
        raise ArithmeticError("inexact integer polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the m-th cyclotomic
    polynomial, from x^m - 1 divided by Phi_d for proper divisors d."""
    if m < 1:
        raise ValueError("order must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            poly = _int_poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _base_zero(sample):
    if isinstance(sample, RatFun):
        return sample.space.zero()
    return Fraction(0)


def _as_base(x):
    if isinstance(x, (RatFun, Fraction)):
        return x
    if isinstance(x, (int, fmpq)):
        return to_fraction(x)
    raise TypeError(f"not a base-field element: {type(x).__name__}")


def _reduce_mod_phi(coeffs: list, m: int) -> list:
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    coeffs = list(coeffs)
    for i in range(len(coeffs) - 1, deg - 1, -1):
        c = coeffs[i]
        if c:
            for j in range(deg):
                if phi[j]:
                    coeffs[i - deg + j] = coeffs[i - deg + j] - c * phi[j]
        coeffs[i] = c * 0
    zero = _base_zero(coeffs[0]) if coeffs else Fraction(0)
    out = coeffs[:deg]
    out += [zero] * (deg - len(out))
    return out


class Cyclotomic:
    """Element of K(zeta_m) for K = Q or Q(params), as a residue mod Phi_m."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable):
        if order < 1:
            raise ValueError("order must be positive")
        coeffs = [_as_base(c) for c in coeffs] or [Fraction(0)]
        self.order = order
        self.coeffs = tuple(_reduce_mod_phi(coeffs, order))

    @classmethod
    def zeta(cls, order: int, power: int = 1, base=Fraction(1)) -> "Cyclotomic":
        power %= order
        zero = base * 0
        return cls(order, [zero] * power + [base])

    @classmethod
    def const(cls, order: int, value) -> "Cyclotomic":
        return cls(order, [_as_base(value)])

    @property
    def degree(self) -> int:
        return euler_phi(self.order)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction, fmpq, RatFun)):
            return Cyclotomic(self.order, [_as_base(other)])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return cyclotomic_mul(self, o)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(c) for c in cyclotomic_poly(self.order)]
        inv = _poly_inverse_mod(list(self.coeffs), phi)
        return Cyclotomic(self.order, inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic(self.order, [_base_zero(self.coeffs[0]) + 1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Image under zeta -> zeta^{-1}."""
        m = self.order
        out = [_base_zero(self.coeffs[0])] * m
        for k, c in enumerate(self.coeffs):
            idx = (-k) % m
            out[idx] = out[idx] + c
        return Cyclotomic(m, out)

    def is_rational(self) -> bool:
        return all(not c for c in self.coeffs[1:])

    def to_base(self):
        if not self.is_rational():
            raise ValueError(f"{self} does not lie in the base field")
        return self.coeffs[0]

    def __bool__(self):
        return any(bool(c) for c in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, RatFun)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __str__(self):
        return f"zeta{self.order}[" + ", ".join(format_scalar(c) for c in self.coeffs) + "]"

    __repr__ = __str__

    @classmethod
    def parse(cls, text: str, space: ParamSpace | None = None) -> "Cyclotomic":
        m = re.fullmatch(r"\s*zeta(\d+)\[(.*)\]\s*", text)
        if not m:
            raise ValueError(f"not a cyclotomic literal: {text!r}")
        order = int(m.group(1))
        parts = [p for p in _split_top(m.group(2))]
        vals = [parse_scalar(p, space) for p in parts]
        return cls(order, vals)


def _split_top(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if "".join(cur).strip():
        out.append("".join(cur).strip())
    return out


def _poly_trim(p):
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    zero = a[0] * 0
    if len(a) < len(b):
        return [zero], a
    q = [zero] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(q) - 1, -1, -1):
        coef = a[i + len(b) - 1] / lead
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                a[i + j] = a[i + j] - coef * bj
    r = _poly_trim(a[: len(b) - 1] or [zero])
    return q, r


def _poly_sub(a, b):
    n = max(len(a), len(b))
    zero = (a[0] if a else b[0]) * 0
    a = list(a) + [zero] * (n - len(a))
    b = list(b) + [zero] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_mul(a, b):
    zero = a[0] * 0
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
    return out


def _poly_inverse_mod(a, phi):
    # extended Euclid: find s with s*a = 1 mod phi
    zero = a[0] * 0
    one = zero + 1
    r0, r1 = [p * one for p in phi], _poly_trim(list(a))
    s0, s1 = [zero], [one]
    while not (len(r1) == 1 and not r1[0]):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv_lead = one / r0[0]
    return [c * inv_lead for c in s0]


def cyclotomic_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    """Product reduced modulo Phi_m."""
    if a.order != b.order:
        raise ValueError(f"cyclotomic order mismatch: {a.order} vs {b.order}")
    return Cyclotomic(a.order, _poly_mul(list(a.coeffs), list(b.coeffs)))


# ------------------------------------------------------------ text forms


def format_scalar(x) -> str:
    """Canonical text; constant rational functions print as rationals."""
    if isinstance(x, (int, Fraction, fmpq)):
        return format_rational(x)
    if isinstance(x, RatFun) and x.is_constant():
        return format_rational(x.constant_value())
    if isinstance(x, Cyclotomic) and x.is_rational():
        return format_scalar(x.coeffs[0])
    return str(x)


def parse_scalar(text: str, space: ParamSpace | None = None):
    text = text.strip()
    if text.startswith("zeta"):
        return Cyclotomic.parse(text, space)
    if text.startswith("("):
        if space is None:
            raise ValueError("rational function literal needs a parameter space")
        return RatFun.parse(text, space)
    return parse_rational(text)


Scalar = Union[Fraction, RatFun, Cyclotomic]
