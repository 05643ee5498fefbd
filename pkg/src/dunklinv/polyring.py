"""Sparse multivariate polynomials with coefficients in a parameter field.

A :class:`Poly` over ``K = Q(params)`` (optionally adjoined a root of unity)
is stored as ``N / D``: ``N`` a flint polynomial in the variables, the
parameters and (for cyclotomic rings) ``zeta``, reduced modulo Phi_m(zeta);
``D`` a primitive integer polynomial in the parameters alone, coprime to N.
This common-denominator form keeps every Dunkl-operator step inside C code.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from flint import fmpq, fmpq_mpoly_ctx
from flint.utils.flint_exceptions import DomainError

from .scalars import (
    Cyclotomic,
    ParamSpace,
    PoleError,
    RatFun,
    _format_param_poly,
    _fmpq,
    _primitive_scale,
    cyclotomic_poly,
    euler_phi,
    format_scalar,
    parse_scalar,
    to_fraction,
)

__all__ = [
    "NotDivisible",
    "PolyRing",
    "Poly",
    "GradedSlice",
    "graded_slice",
    "monomials_of_degree",
    "poly_mul",
    "exact_div",
    "constant_term",
    "substitute",
]


class NotDivisible(ArithmeticError):
    """Exact division was requested but the divisor does not divide."""


def monomials_of_degree(nvars: int, d: int) -> list[tuple[int, ...]]:
    """All exponent tuples of total degree d, graded-lex descending."""
    if nvars == 0:
        return [()] if d == 0 else []
    out = []
    # compositions of d into nvars parts, generated lex-descending
    for bars in itertools.combinations(range(d + nvars - 1), nvars - 1):
        prev = -1
        exp = []
        for b in bars:
            exp.append(b - prev - 1)
            prev = b
        exp.append(d + nvars - 2 - prev)
        out.append(tuple(exp))
    out.sort(reverse=True)
    return out


class PolyRing:
    """``K[v1..vn]`` with K = Q(params) or Q(params)(zeta_m)."""

    _cache: dict = {}

    def __new__(cls, variables: Sequence[str], params: Sequence[str] = (),
                cyclotomic: int | None = None):
        variables = tuple(variables)
        params = tuple(params)
        order = cyclotomic if cyclotomic and euler_phi(cyclotomic) > 1 else None
        key = (variables, params, cyclotomic or 1)
        obj = cls._cache.get(key)
        if obj is not None:
            return obj
        obj = super().__new__(cls)
        obj.variables = variables
        obj.params = params
        obj.order = order
        obj.root_order = cyclotomic or 1
        obj.nvars = len(variables)
        obj.nparams = len(params)
        names = variables + params + (("zeta",) if order else ())
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate names in {names}")
        obj.ctx = fmpq_mpoly_ctx.get(names or ("_",), "deglex")
        obj.space = ParamSpace(params)
        obj._phi = None
        if order:
            zeta = obj.ctx.gen(len(names) - 1)
            phi = obj.ctx.constant(0)
            for k, a in enumerate(cyclotomic_poly(order)):
                if a:
                    phi = phi + a * zeta ** k
            obj._phi = phi
        obj._one = obj.ctx.constant(1)
        cls._cache[key] = obj
        return obj

    def __reduce__(self):
        return (PolyRing, (self.variables, self.params, self.root_order))

    def __repr__(self):
        extra = f", zeta_{self.order}" if self.order else ""
        return f"PolyRing({', '.join(self.variables)}; params={self.params}{extra})"

    # constructors -----------------------------------------------------
    def _wrap(self, num, den=None, reduce=False):
        return Poly._make(self, num, self._one if den is None else den, reduce)

    def zero(self) -> "Poly":
        return self._wrap(self.ctx.constant(0))

    def one(self) -> "Poly":
        return self._wrap(self.ctx.constant(1))

    def gen(self, i: int | str) -> "Poly":
        if isinstance(i, str):
            i = self.variables.index(i)
        return self._wrap(self.ctx.gen(i))

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(i) for i in range(self.nvars))

    def param(self, name: str) -> "Poly":
        return self._wrap(self.ctx.gen(self.nvars + self.params.index(name)))

    def zeta_power(self, k: int = 1) -> "Poly":
        """zeta_m^k as a constant (m = 1, 2 need no extension)."""
        if not self.order:
            return self.const(-1 if self.root_order == 2 and k % 2 else 1)
        z = self.ctx.gen(self.nvars + self.nparams)
        return self._wrap(z ** (k % self.order), reduce=True)

    def const(self, value) -> "Poly":
        num, den = self._scalar_parts(value)
        return self._wrap(num, den)

    def monomial(self, exp: Sequence[int], coef=1) -> "Poly":
        num, den = self._scalar_parts(coef)
        mono = self.ctx.from_dict({tuple(exp) + (0,) * (self.ctx.nvars() - self.nvars): 1}) \
            if self.nvars else self._one
        return self._wrap(num * mono, den)

    def from_terms(self, terms: Mapping[Sequence[int], object] | Iterable) -> "Poly":
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = self.zero()
        for exp, coef in items:
            acc = acc + self.monomial(exp, coef)
        return acc

    # scalar embedding -------------------------------------------------
    def _embed_param_poly(self, p):
        """Move a polynomial from the parameter space ctx into this ring."""
        if self.nparams == 0:
            return self.ctx.constant(p.leading_coefficient()) if not p.is_zero() \
                else self.ctx.constant(0)
        pad_front = (0,) * self.nvars
        pad_back = (0,) if self.order else ()
        return self.ctx.from_dict(
            {pad_front + tuple(e) + pad_back: c for e, c in p.to_dict().items()})

    def _scalar_parts(self, value):
        """(numerator, denominator) flint polys for a scalar."""
        if isinstance(value, Poly):
            if value.ring is not self:
                raise ValueError("polynomial from another ring")
            return value.num, value.den
        if isinstance(value, (int, Fraction, fmpq)):
            return self.ctx.constant(_fmpq(value)), self._one
        if isinstance(value, RatFun):
            if value.is_constant():
                return self.ctx.constant(_fmpq(value.constant_value())), self._one
            if value.space is not self.space:
                raise ValueError(
                    f"scalar over {value.space.names} used in ring with params {self.params}")
            return self._embed_param_poly(value.num), self._embed_param_poly(value.den)
        if isinstance(value, Cyclotomic):
            if value.is_rational():
                return self._scalar_parts(value.coeffs[0])
            if value.order != self.order:
                raise ValueError(f"zeta_{value.order} not in {self}")
            zeta = self.ctx.gen(self.nvars + self.nparams)
            acc = self.zero()
            for k, c in enumerate(value.coeffs):
                if c:
                    n, d = self._scalar_parts(c)
                    acc = acc + self._wrap(n * zeta ** k, d)
            return acc.num, acc.den
        raise TypeError(f"unsupported scalar {type(value).__name__}")

    def _extract_scalar(self, num_part: dict, den):
        """Scalar from {(param exps..., [zeta exp]): coeff} over denominator den."""
        ctx_p = self.space.ctx
        den_p = self._to_param_poly(den)
        if not self.order:
            if self.nparams == 0:
                val = sum((to_fraction(c) for c in num_part.values()), Fraction(0))
                return val / to_fraction(den_p.leading_coefficient())
            p = ctx_p.from_dict(num_part) if num_part else ctx_p.constant(0)
            return RatFun(self.space, p, den_p)
        phi = euler_phi(self.order)
        by_power: list[dict] = [dict() for _ in range(phi)]
        for e, c in num_part.items():
            by_power[int(e[-1])][tuple(e[:-1])] = c
        coeffs = []
        for part in by_power:
            if self.nparams == 0:
                val = sum((to_fraction(c) for c in part.values()), Fraction(0))
                coeffs.append(val / to_fraction(den_p.leading_coefficient()))
            else:
                p = ctx_p.from_dict(part) if part else ctx_p.constant(0)
                coeffs.append(RatFun(self.space, p, den_p))
        return Cyclotomic(self.order, coeffs)

    def _to_param_poly(self, p):
        ctx_p = self.space.ctx
        if self.nparams == 0:
            return ctx_p.constant(p.leading_coefficient() if not p.is_zero() else 0)
        lo, hi = self.nvars, self.nvars + self.nparams
        return ctx_p.from_dict({tuple(e[lo:hi]): c for e, c in p.to_dict().items()})

    # derived rings ----------------------------------------------------
    def with_params(self, params: Sequence[str]) -> "PolyRing":
        return PolyRing(self.variables, params, self.root_order)

    def scalar_zero(self):
        if self.order:
            return Cyclotomic(self.order, [self.space.zero() if self.nparams else Fraction(0)])
        return self.space.zero() if self.nparams else Fraction(0)

    def scalar_one(self):
        return self.scalar_zero() + 1

    # JSON ------------------------------------------------------------
    def from_json(self, data) -> "Poly":
        if isinstance(data, str):
            data = json.loads(data)
        if data["arity"] != self.nvars or tuple(data.get("params", ())) != self.params:
            raise ValueError("JSON polynomial does not match ring")
        acc = self.zero()
        for t in data["terms"]:
            acc = acc + self.monomial(t["exp"], parse_scalar(t["coef"], self.space))
        return acc


class Poly:
    """Immutable polynomial over a :class:`PolyRing`."""

    __slots__ = ("ring", "num", "den", "_terms")

    @classmethod
    def _make(cls, ring: PolyRing, num, den, reduce=False):
        if reduce and ring.order:
            num = divmod(num, ring._phi)[1]
        if not den.is_one():
            if num.is_zero():
                den = ring._one
            else:
                g = num.gcd(den)
                if not g.is_constant():
                    num = num / g
                    den = den / g
                if den.is_constant():
                    num = num / den.leading_coefficient()
                    den = ring._one
                else:
                    s = _primitive_scale(den)
                    if s != 1:
                        num = num * s
                        den = den * s
        obj = object.__new__(cls)
        obj.ring = ring
        obj.num = num
        obj.den = den
        obj._terms = None
        return obj

    # coercion ---------------------------------------------------------
    def _parts(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.num, other.den
        return self.ring._scalar_parts(other)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            n, d = self._parts(other)
        except TypeError:
            return NotImplemented
        if d == self.den:
            return Poly._make(self.ring, self.num + n, d)
        return Poly._make(self.ring, self.num * d + n * self.den, self.den * d)

    __radd__ = __add__

    def __neg__(self):
        return Poly._make(self.ring, -self.num, self.den)

    def __sub__(self, other):
        try:
            n, d = self._parts(other)
        except TypeError:
            return NotImplemented
        if d == self.den:
            return Poly._make(self.ring, self.num - n, d)
        return Poly._make(self.ring, self.num * d - n * self.den, self.den * d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            n, d = self._parts(other)
        except TypeError:
            return NotImplemented
        return Poly._make(self.ring, self.num * n, self.den * d,
                          reduce=bool(self.ring.order))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return exact_div(self, other)
        if isinstance(other, Cyclotomic):
            return self * other.inverse()
        if isinstance(other, RatFun):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        if not self.ring.order:
            return Poly._make(self.ring, self.num ** k, self.den ** k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.num == other.num and self.den == other.den
        try:
            n, d = self.ring._scalar_parts(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.num == n and self.den == d

    def __hash__(self):
        return hash((id(self.ring), str(self.num), str(self.den)))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # structure --------------------------------------------------------
    def _grouped(self) -> dict:
        """{x-exponent: {param/zeta exponent: coeff}}"""
        if self._terms is None:
            nv = self.ring.nvars
            groups: dict = {}
            for e, c in self.num.to_dict().items():
                e = tuple(map(int, e))
                groups.setdefault(e[:nv], {})[e[nv:]] = c
            self._terms = groups
        return self._terms

    def exponents(self) -> list[tuple[int, ...]]:
        """Support, graded-lex descending."""
        return sorted(self._grouped(), key=lambda e: (sum(e), e), reverse=True)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        g = self._grouped()
        return [(e, self.ring._extract_scalar(g[e], self.den)) for e in self.exponents()]

    def coefficient(self, exp: Sequence[int]):
        part = self._grouped().get(tuple(exp))
        if not part:
            return self.ring.scalar_zero()
        return self.ring._extract_scalar(part, self.den)

    def constant_term(self):
        return self.coefficient((0,) * self.ring.nvars)

    def __len__(self):
        return len(self._grouped())

    def degree(self) -> int:
        g = self._grouped()
        return max((sum(e) for e in g), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._grouped()}) <= 1

    def _select(self, keep) -> "Poly":
        nv = self.ring.nvars
        d = {e: c for e, c in self.num.to_dict().items() if keep(e[:nv])}
        num = self.ring.ctx.from_dict(d) if d else self.ring.ctx.constant(0)
        return Poly._make(self.ring, num, self.den)

    def homogeneous_component(self, d: int) -> "Poly":
        return self._select(lambda e: sum(e) == d)

    def homogeneous_components(self) -> dict[int, "Poly"]:
        return {d: self.homogeneous_component(d)
                for d in sorted({sum(e) for e in self._grouped()})}

    def is_rational(self) -> bool:
        """True when no parameter or zeta occurs."""
        nv = self.ring.nvars
        return self.den.is_one() and all(
            not any(e[nv:]) for e in self.num.to_dict())

    # calculus ---------------------------------------------------------
    def derivative(self, i: int) -> "Poly":
        return Poly._make(self.ring, self.num.derivative(i), self.den)

    def directional_derivative(self, y: Sequence) -> "Poly":
        acc = self.ring.zero()
        for i, yi in enumerate(y):
            if yi:
                acc = acc + self.derivative(i) * yi
        return acc

    # substitution -----------------------------------------------------
    def substitute(self, images: Sequence["Poly"], target: PolyRing | None = None) -> "Poly":
        return substitute(self, images, target)

    def eval_params(self, point: Mapping[str, object], target: PolyRing | None = None) -> "Poly":
        """Specialize parameters to rationals; PoleError on a pole."""
        ring = self.ring
        target = target or PolyRing(ring.variables, (), ring.root_order)
        vals = {}
        for name in ring.params:
            if name not in point:
                raise ValueError(f"no value for parameter {name}")
            vals[name] = _fmpq(to_fraction(point[name]))
        den = self.den.subs(vals) if vals else self.den
        if not den.is_constant() or den.is_zero():
            raise PoleError(
                f"polynomial has a pole at {dict(point)}",
                denominator=_format_param_poly(ring._to_param_poly(self.den), ring.params),
                point=dict(point))
        num = self.num.subs(vals) if vals else self.num
        d = den.leading_coefficient()
        nv = ring.nvars
        out = {}
        for e, c in num.to_dict().items():
            key = tuple(e[:nv]) + ((e[-1],) if ring.order else ())
            out[key] = out.get(key, 0) + c / d
        acc = target.zero()
        for key, c in out.items():
            coef = to_fraction(c)
            if ring.order:
                coef = Cyclotomic.zeta(ring.order, key[-1], coef)
                key = key[:-1]
            acc = acc + target.monomial(key, coef)
        return acc

    def map_coefficients(self, fn, target: PolyRing) -> "Poly":
        acc = target.zero()
        for e, c in self.terms():
            acc = acc + target.monomial(e, fn(c))
        return acc

    # text -------------------------------------------------------------
    def to_json_obj(self) -> dict:
        return {
            "arity": self.ring.nvars,
            "params": list(self.ring.params),
            "terms": [{"exp": list(e), "coef": format_scalar(c)} for e, c in self.terms()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __str__(self):
        if self.is_zero():
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in self.terms():
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            cs = format_scalar(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly<{self}>"


class GradedSlice:
    """Monomial basis of the degree-d piece of a ring."""

    def __init__(self, ring: PolyRing, degree: int):
        self.ring = ring
        self.degree = degree
        self.exponents = monomials_of_degree(ring.nvars, degree)
        self.basis = [ring.monomial(e) for e in self.exponents]
        self._index = {e: i for i, e in enumerate(self.exponents)}

    def __len__(self):
        return len(self.exponents)

    def coordinates(self, f: Poly) -> list:
        """Coefficient vector of a homogeneous f of this degree."""
        out = [self.ring.scalar_zero()] * len(self.exponents)
        for e, c in f.terms():
            if e not in self._index:
                raise ValueError(f"monomial {e} not in degree-{self.degree} slice")
            out[self._index[e]] = c
        return out


def graded_slice(ring: PolyRing, degree: int) -> GradedSlice:
    return GradedSlice(ring, degree)


# ----------------------------------------------------------- module API


def poly_mul(f: Poly, g: Poly) -> Poly:
    if f.ring is not g.ring:
        raise ValueError("arity mismatch")
    return f * g


def constant_term(f: Poly):
    return f.constant_term()


def substitute(f: Poly, images: Sequence[Poly], target: PolyRing | None = None) -> Poly:
    """Replace variable i of f by images[i] and expand.

    A short list of images in f's own ring leaves the trailing variables
    fixed.
    """
    ring = f.ring
    images = list(images)
    if images and len(images) < ring.nvars and all(im.ring is ring for im in images):
        images += list(ring.gens()[len(images):])
    if len(images) != ring.nvars:
        raise ValueError(f"expected {ring.nvars} images, got {len(images)}")
    target = target or (images[0].ring if images else ring)
    if any(im.ring is not target for im in images):
        raise ValueError("images must share one ring")
    if target.params != ring.params or target.order != ring.order:
        raise ValueError("substitution must keep the coefficient field")
    if all(im.den.is_one() for im in images):
        # fast path: one flint composition; parameters and zeta map to themselves
        tctx = target.ctx
        extra = [tctx.gen(target.nvars + k) for k in range(ring.ctx.nvars() - ring.nvars)]
        num = f.num.compose(*[im.num for im in images], *extra, ctx=tctx)
        return Poly._make(target, num, _move_den(f.den, ring, target),
                          reduce=bool(target.order))
    acc = target.zero()
    for e, c in f.terms():
        term = target.const(c)
        for im, k in zip(images, e):
            if k:
                term = term * im ** k
        acc = acc + term
    return acc


def _move_den(den, ring: PolyRing, target: PolyRing):
    if ring is target:
        return den
    return target._embed_param_poly(ring._to_param_poly(den))


def _leading_term(f: Poly):
    e = f.exponents()[0]
    return e, f.coefficient(e)


def exact_div(f: Poly, g: Poly) -> Poly:
    """q with f = q*g, or NotDivisible."""
    if f.ring is not g.ring:
        raise ValueError("arity mismatch")
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    if f.is_zero():
        return ring.zero()
    if not ring.order:
        try:
            q = (f.num * g.den) / g.num
        except DomainError:
            raise NotDivisible(f"{g} does not divide {f}") from None
        return Poly._make(ring, q, f.den)
    if g.degree() == 1 and g.is_homogeneous():
        return _div_linear_form(f, g)
    return _div_general(f, g)


def _div_linear_form(f: Poly, alpha: Poly) -> Poly:
    """Exact division by a linear form over a cyclotomic field via the
    change of variables that makes the form a coordinate."""
    ring = alpha.ring
    coeffs = [alpha.coefficient(tuple(int(i == j) for j in range(ring.nvars)))
              for i in range(ring.nvars)]
    k = next((i for i, a in enumerate(coeffs)
              if a and isinstance(a, Cyclotomic) and a.is_rational()), None)
    if k is None:
        k = next(i for i, a in enumerate(coeffs) if a)
    lead = coeffs[k]
    gens = ring.gens()
    # v_k -> (v_k - sum_{i != k} a_i v_i) / a_k
    rest = ring.zero()
    for i, a in enumerate(coeffs):
        if i != k and a:
            rest = rest + gens[i] * a
    inv = lead.inverse() if isinstance(lead, Cyclotomic) else Fraction(1) / lead
    images = list(gens)
    images[k] = (gens[k] - rest) * inv
    g1 = substitute(f, images)
    if not g1.is_zero():
        vk = ring.ctx.gen(k)
        try:
            q_num = g1.num / vk
        except DomainError:
            raise NotDivisible(f"{alpha} does not divide {f}") from None
        q1 = Poly._make(ring, q_num, g1.den)
    else:
        return ring.zero()
    back = list(gens)
    back[k] = alpha
    return substitute(q1, back)


def _div_general(f: Poly, g: Poly) -> Poly:
    ring = f.ring
    eg, cg = _leading_term(g)
    inv = cg.inverse() if hasattr(cg, "inverse") else Fraction(1) / cg
    q = ring.zero()
    r = f
    while not r.is_zero():
        er, cr = _leading_term(r)
        diff = tuple(a - b for a, b in zip(er, eg))
        if any(x < 0 for x in diff):
            raise NotDivisible(f"{g} does not divide {f}")
        t = ring.monomial(diff, cr * inv)
        q = q + t
        r = r - t * g
    return q
