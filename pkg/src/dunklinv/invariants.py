"""Invariant theory on top of the Dunkl form.

Given homogeneous invariant generators u_1..u_l of distinct degrees, the
canonical invariant b_a is the unique invariant

    b_a = u^a + sum_{a' < a} x_{a'} u^{a'}

(a' running over exponent vectors of the same weighted degree that precede
a in the inverse-lexicographic order) with (u^{a'}, b_a)_c = 0 for every
such a'.  It is obtained by one exact solve against the Gram matrix of the
invariant monomials of that degree.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .dunkl import DunklContext, base_scalar
from .exactla import Matrix, NoSolution, NonUnique, kernel_basis, solve
from .groups import ReflectionGroup, build_symmetric, coset_orbit_sum
from .polyring import Poly, PolyRing
from .scalars import Cyclotomic, PoleError, RatFun, format_rational, ratfun_eval, to_fraction

__all__ = [
    "GeneratorSet",
    "CanonicalInvariant",
    "SingularGramError",
    "inv_lex_less",
    "precedes",
    "inv_lex_key",
    "weighted_degree",
    "invariant_monomials",
    "canonical_invariant",
    "canonical_basis",
    "elementary_invariant",
    "elementary_symmetric",
    "power_sum",
    "ebar",
    "to_sum_zero",
    "from_sum_zero",
    "vandermonde",
    "iwasaki_mu",
    "iwasaki_elementary",
    "limit_at",
    "quasiharmonic_space",
    "proportionality",
    "gram_matrix",
]


class SingularGramError(RuntimeError):
    """The orthogonality system was singular over the parameter field."""


# ------------------------------------------------------------ ordering


def inv_lex_key(a: Sequence[int]) -> tuple:
    """Sort key realizing the inverse-lexicographic order."""
    return tuple(reversed(tuple(a)))


def precedes(a1: Sequence[int], a2: Sequence[int]) -> bool:
    """a1 < a2: the last nonzero coordinate of a2 - a1 is positive."""
    if len(a1) != len(a2):
        raise ValueError("exponent vectors of different length")
    return inv_lex_key(a1) < inv_lex_key(a2)


def inv_lex_less(a: Sequence[int], a_prime: Sequence[int]) -> bool:
    """True iff ``a_prime`` precedes ``a`` (a' < a)."""
    return precedes(a_prime, a)


def weighted_degree(a: Sequence[int], degrees: Sequence[int]) -> int:
    return sum(x * d for x, d in zip(a, degrees))


# --------------------------------------------------------- generator sets


def elementary_symmetric(ring: PolyRing, k: int, variables: Sequence[Poly] | None = None) -> Poly:
    xs = list(variables if variables is not None else ring.gens())
    # e_k via the generating product prod (1 + x_i t), tracked degree by degree
    e = [ring.one()] + [ring.zero()] * k
    for x in xs:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


def power_sum(ring: PolyRing, k: int, variables: Sequence[Poly] | None = None) -> Poly:
    xs = list(variables if variables is not None else ring.gens())
    return sum((x ** k for x in xs), ring.zero())


def ebar(k: int, n: int, ring: PolyRing | None = None) -> Poly:
    """e_k evaluated at x_i - e_1(x)/n."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    ring = ring or build_symmetric(n).ring
    x = ring.gens()
    mean = sum(x, ring.zero()) * Fraction(1, n)
    shifted = [xi - mean for xi in x]
    return elementary_symmetric(ring, k, shifted)


def to_sum_zero(f: Poly, group: ReflectionGroup) -> Poly:
    """Rewrite a translation-invariant polynomial in x_1..x_n in the basis
    v_i = x_i - x_n of the sum-zero model (set x_n = 0)."""
    v = group.ring.gens()
    return f.substitute(list(v) + [group.ring.zero()], group.ring)


def from_sum_zero(f: Poly, ring: PolyRing) -> Poly:
    """Inverse of :func:`to_sum_zero`: v_i -> x_i - x_n."""
    x = ring.gens()
    return f.substitute([xi - x[-1] for xi in x[:-1]], ring)


@dataclass(eq=False)
class GeneratorSet:
    """Homogeneous invariant generators with strictly increasing degrees."""

    name: str
    polys: list[Poly]
    degrees: tuple[int, ...]
    _powers: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if list(self.degrees) != sorted(set(self.degrees)):
            raise ValueError("generator degrees must be distinct and increasing")

    @property
    def ring(self) -> PolyRing:
        return self.polys[0].ring

    def __len__(self):
        return len(self.polys)

    def power(self, i: int, k: int) -> Poly:
        key = (i, k)
        if key not in self._powers:
            self._powers[key] = self.polys[i] ** k
        return self._powers[key]

    def monomial(self, a: Sequence[int]) -> Poly:
        out = self.ring.one()
        for i, k in enumerate(a):
            if k:
                out = out * self.power(i, k)
        return out

    # standard choices ----------------------------------------------------
    @classmethod
    def elementary(cls, group: ReflectionGroup) -> "GeneratorSet":
        """e_1..e_n for S_n; ebar_2..ebar_n in the sum-zero model;
        {e_2 = z zb, e_m = z^m + zb^m} for I2(m)."""
        ring = group.ring
        if group.kind == "S" and not group.reduced:
            n = group.order_param
            return cls("elementary", [elementary_symmetric(ring, k) for k in range(1, n + 1)],
                       tuple(range(1, n + 1)))
        if group.kind == "S":
            n = group.order_param
            full = build_symmetric(n, param=group.params[0]).ring
            polys = [to_sum_zero(ebar(k, n, full), group) for k in range(2, n + 1)]
            return cls("elementary", polys, tuple(range(2, n + 1)))
        m = group.order_param
        z, zb = ring.gens()
        return cls("dihedral", [z * zb, z ** m + zb ** m], (2, m))

    @classmethod
    def power_sums(cls, group: ReflectionGroup) -> "GeneratorSet":
        if group.kind != "S" or group.reduced:
            raise ValueError("power sums are provided for S_n on C^n")
        n = group.order_param
        return cls("power sums", [power_sum(group.ring, k) for k in range(1, n + 1)],
                   tuple(range(1, n + 1)))


def _exponents_of_weight(degrees: Sequence[int], d: int) -> list[tuple[int, ...]]:
    out = []

    def rec(i, remaining, acc):
        if i == len(degrees):
            if remaining == 0:
                out.append(tuple(acc))
            return
        for k in range(remaining // degrees[i] + 1):
            rec(i + 1, remaining - k * degrees[i], acc + [k])

    rec(0, d, [])
    out.sort(key=inv_lex_key)
    return out


def invariant_monomials(gens: GeneratorSet, d: int) -> list[tuple[tuple[int, ...], Poly]]:
    """All (a, u^a) of weighted degree d, ascending in the < order."""
    return [(a, gens.monomial(a)) for a in _exponents_of_weight(gens.degrees, d)]


# ------------------------------------------------------------ Gram data


class _GramCache:
    """Pairings (u^a, u^b)_c for one (generators, context) pair.

    (u^a, g) is computed by applying the invariant operators nabla_{u_i*}
    a_i times to g; intermediate results are memoized per g.
    """

    _registry: dict = {}

    def __init__(self, gens: GeneratorSet, ctx: DunklContext):
        self.gens = gens
        self.ctx = ctx
        self.duals = [ctx.dual(u) for u in gens.polys]
        self.chains: dict = {}
        self.grams: dict = {}

    @classmethod
    def get(cls, gens: GeneratorSet, ctx: DunklContext) -> "_GramCache":
        key = (id(gens), id(ctx))
        hit = cls._registry.get(key)
        if hit is None or hit.gens is not gens or hit.ctx is not ctx:
            hit = cls(gens, ctx)
            cls._registry[key] = hit
        return hit

    def apply_monomial(self, e: Sequence[int], b: Sequence[int]) -> Poly:
        """nabla_{(u^e)*} u^b, memoized over prefixes of e."""
        chain = self.chains.setdefault(tuple(b), {})
        e = tuple(e)
        if not any(e):
            return self.gens.monomial(b)
        hit = chain.get(e)
        if hit is not None:
            return hit
        i = next(k for k, x in enumerate(e) if x)
        prev = list(e)
        prev[i] -= 1
        g = self.apply_monomial(prev, b)
        out = self.ctx.nabla(self.duals[i], g) if g else g
        chain[e] = out
        return out

    def pair(self, a, b):
        return base_scalar(self.apply_monomial(a, b).constant_term())

    def gram(self, d: int):
        if d not in self.grams:
            mons = [a for a, _ in invariant_monomials(self.gens, d)]
            n = len(mons)
            G = [[None] * n for _ in range(n)]
            for j in range(n):
                for i in range(j, n):
                    G[i][j] = self.pair(mons[i], mons[j])
                    G[j][i] = G[i][j]
            self.grams[d] = (mons, Matrix(G))
        return self.grams[d]


def gram_matrix(gens: GeneratorSet, d: int, ctx: DunklContext):
    """(exponent list ascending in <, Gram matrix of (u^a, u^b)_c)."""
    return _GramCache.get(gens, ctx).gram(d)


# ------------------------------------------------------ canonical invariants


@dataclass(eq=False)
class CanonicalInvariant:
    a: tuple[int, ...]
    expansion: dict  # a' -> coefficient (RatFun or Fraction); a itself -> 1
    gens: GeneratorSet
    ctx: DunklContext
    pivots: list = field(default_factory=list)
    normalization: str = "monic"
    _poly: Poly | None = field(default=None, repr=False)

    @property
    def degree(self) -> int:
        return weighted_degree(self.a, self.gens.degrees)

    @property
    def poly(self) -> Poly:
        """The expanded polynomial in the group's variables."""
        if self._poly is None:
            acc = self.gens.ring.zero()
            for a2, c in self.expansion.items():
                if c:
                    acc = acc + self.gens.monomial(a2) * c
            self._poly = acc
        return self._poly

    def terms(self) -> list:
        """Nonzero (a', coefficient) in descending < order (leading term first)."""
        items = [(a2, c) for a2, c in self.expansion.items() if c]
        return sorted(items, key=lambda t: inv_lex_key(t[0]), reverse=True)

    def coefficient(self, a2: Sequence[int]):
        return self.expansion.get(tuple(a2), Fraction(0))

    def __repr__(self):
        body = " + ".join(f"({c})*u^{a2}" for a2, c in self.terms())
        return f"b_{self.a} = {body}"


def canonical_invariant(a: Sequence[int], gens: GeneratorSet, ctx: DunklContext) -> CanonicalInvariant:
    a = tuple(a)
    if len(a) != len(gens):
        raise ValueError(f"exponent vector must have length {len(gens)}")
    d = weighted_degree(a, gens.degrees)
    mons, G = gram_matrix(gens, d, ctx)
    i = mons.index(a)
    expansion = {a: Fraction(1)}
    pivots = []
    if i:
        A = Matrix([[G[k, j] for j in range(i)] for k in range(i)])
        rhs = [-G[k, i] for k in range(i)]
        try:
            sol = solve(A, rhs)
        except (NoSolution, NonUnique) as exc:
            raise SingularGramError(f"orthogonality system for b_{a} is singular") from exc
        pivots = sol.pivots
        for j in range(i):
            expansion[mons[j]] = sol[j]
    return CanonicalInvariant(a, expansion, gens, ctx, pivots)


def canonical_basis(d: int, gens: GeneratorSet, ctx: DunklContext) -> list[CanonicalInvariant]:
    return [canonical_invariant(a, gens, ctx) for a, _ in invariant_monomials(gens, d)]


def elementary_invariant(d: int, gens: GeneratorSet, ctx: DunklContext) -> CanonicalInvariant:
    """b_a for the <-maximal a of weighted degree d."""
    mons = _exponents_of_weight(gens.degrees, d)
    if not mons:
        raise ValueError(f"no invariants of degree {d}")
    return canonical_invariant(mons[-1], gens, ctx)


# --------------------------------------------------------------- Iwasaki


def vandermonde(ts: Sequence[Poly], ring: PolyRing) -> Poly:
    """prod_{i<j} (t_i - t_j)."""
    out = ring.one()
    for i, j in itertools.combinations(range(len(ts)), 2):
        out = out * (ts[i] - ts[j])
    return out


def iwasaki_mu(k: int, n: int, ctx: DunklContext) -> Poly:
    """sum_s (-1)^s x_s Delta(nabla_1..^s..nabla_k) Delta(x_1..x_k)."""
    if not 2 <= k <= n or ctx.rank != n:
        raise ValueError("need 2 <= k <= n on the n-dimensional model")
    ring = ctx.ring
    x = ring.gens()
    delta = vandermonde(x[:k], ring)
    table = ctx.nabla_table(delta)
    acc = ring.zero()
    for s in range(k):
        op = vandermonde([x[j] for j in range(k) if j != s], ring)  # in dual variables
        val = ring.zero()
        for e, coef in op.terms():
            val = val + table[e] * coef
        sign = -1 if (s + 1) % 2 else 1
        acc = acc + x[s] * val * sign
    return acc


def iwasaki_elementary(k: int, n: int, ctx: DunklContext) -> Poly:
    return coset_orbit_sum(n, k, iwasaki_mu(k, n, ctx))


def proportionality(f: Poly, g: Poly):
    """lambda with f = lambda * g, or None."""
    if g.is_zero():
        return None if f else Fraction(0)
    e = g.exponents()[0]
    lam = f.coefficient(e) / g.coefficient(e)
    if isinstance(lam, Cyclotomic) and lam.is_rational():
        lam = lam.to_base()
    return lam if f == g * lam else None


# ----------------------------------------------------------------- limits


def _point_for(inv: CanonicalInvariant, c0) -> dict:
    params = inv.ctx.group.params
    if isinstance(c0, Mapping):
        return {k: to_fraction(v) for k, v in c0.items()}
    return {p: to_fraction(c0) for p in params}


def _fmt_point(point: Mapping) -> str:
    return "{" + ", ".join(f"{k}={format_rational(v)}" for k, v in point.items()) + "}"


def limit_at(inv: CanonicalInvariant, c0) -> Poly:
    """Evaluate every expansion coefficient at c0 and expand.

    The result lives in the parameter-free ring; a pole raises PoleError
    naming the offending coefficient.
    """
    point = _point_for(inv, c0)
    ring = inv.gens.ring
    target = PolyRing(ring.variables, (), ring.root_order)
    acc = target.zero()
    for a2, coef in inv.terms():
        try:
            val = ratfun_eval(coef, point) if isinstance(coef, RatFun) else Fraction(coef)
        except PoleError as exc:
            raise PoleError(
                f"coefficient of u^{a2} in b_{inv.a} has a pole at {_fmt_point(point)}: {coef}",
                denominator=exc.denominator, point=point) from None
        if val:
            acc = acc + inv.gens.monomial(a2).eval_params(point, target) * val
    return acc


# --------------------------------------------------------- quasiharmonics


def quasiharmonic_space(d: int, bound: int, gens: GeneratorSet, ctx: DunklContext) -> list[Poly]:
    """Invariants f of degree d with nabla_{P*} f = 0 for every invariant
    monomial P of degree 0 < deg P < bound."""
    basis = [u for _, u in invariant_monomials(gens, d)]
    if not basis:
        return []
    ops = []
    for k in range(1, min(bound, d + 1)):
        ops += [ctx.dual(u) for _, u in invariant_monomials(gens, k)]
    rows: dict = {}
    for j, u in enumerate(basis):
        table = ctx.nabla_table(u)
        for oi, p in enumerate(ops):
            val = ctx.ring.zero()
            for e, coef in p.terms():
                val = val + table[e] * coef
            for e, coef in val.terms():
                rows.setdefault((oi, e), [Fraction(0)] * len(basis))[j] = coef
    if not rows:
        return basis
    A = Matrix([rows[k] for k in sorted(rows)])
    out = []
    for vec in kernel_basis(A):
        f = ctx.ring.zero()
        for c, u in zip(vec, basis):
            if c:
                f = f + u * c
        out.append(f)
    return out
