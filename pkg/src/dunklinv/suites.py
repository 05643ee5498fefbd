"""Verification suites driven by ``dunklinv verify``.

Every suite returns a report ``{"suite", "cases", "failures"}`` where each
failure carries ``input``, ``expected`` and ``got`` strings.  Suites are
deterministic for a fixed seed.
"""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from typing import Callable

from .dihedral import (
    C_delta,
    b0k_jacobi,
    gf_coefficients,
    inv_ring,
    jacobi_operator,
    jacobi_poly,
    laplacian_pde,
    to_invpoly,
)
from .dunkl import (
    DunklContext,
    berest_nabla,
    frobenius_factor,
    operator_matrix,
    phi_c,
    sl2_operators,
)
from .exactla import Matrix, kernel_basis
from .groups import ReflectionGroup, build_dihedral, build_symmetric, parse_group
from .invariants import (
    GeneratorSet,
    canonical_basis,
    canonical_invariant,
    ebar,
    elementary_invariant,
    invariant_monomials,
    iwasaki_elementary,
    limit_at,
    power_sum,
    proportionality,
    quasiharmonic_space,
)
from .polyring import Poly, graded_slice, monomials_of_degree
from .scalars import ParamSpace, format_scalar

__all__ = ["SUITES", "run_suite", "SuiteNotApplicable", "random_poly"]


class SuiteNotApplicable(ValueError):
    """The suite does not apply to the requested group."""


def _text(x) -> str:
    if isinstance(x, (str, Poly)):
        return str(x)
    try:
        return format_scalar(x)
    except (TypeError, ValueError):
        return str(x)


class _Report:
    def __init__(self, name: str):
        self.name = name
        self.cases = 0
        self.failures: list[dict] = []
        self.notes: dict = {}

    def check(self, ok: bool, input, expected, got):
        self.cases += 1
        if not ok:
            self.failures.append({"input": _text(input), "expected": _text(expected),
                                  "got": _text(got)})

    def as_dict(self) -> dict:
        out = {"suite": self.name, "cases": self.cases, "failures": self.failures}
        if self.notes:
            out["notes"] = self.notes
        return out


def random_poly(ring, degree: int, rng: random.Random, terms: int = 3,
                homogeneous: bool = True) -> Poly:
    """A small random polynomial with integer coefficients in [-3, 3]."""
    acc = ring.zero()
    while acc.is_zero():
        for _ in range(terms):
            d = degree if homogeneous else rng.randint(0, degree)
            exps = monomials_of_degree(ring.nvars, d)
            acc = acc + ring.monomial(rng.choice(exps), rng.choice([-3, -2, -1, 1, 2, 3]))
    return acc


def _require(cond: bool, msg: str):
    if not cond:
        raise SuiteNotApplicable(msg)


def _sum_zero(group: ReflectionGroup) -> ReflectionGroup:
    if group.kind == "S" and not group.reduced:
        return build_symmetric(group.order_param, reduced=True)
    return group


# ---------------------------------------------------------------- suites


def suite_commute(group, max_degree=None, **_):
    rep = _Report("commute")
    ctx = DunklContext(group)
    if max_degree is None:
        max_degree = 6 if group.kind == "S" else group.order_param + 2
    for d in range(max_degree + 1):
        for b in graded_slice(group.ring, d).basis:
            outs = ctx.apply_all(b)
            for i, j in itertools.combinations(range(group.rank), 2):
                lhs = ctx.apply(i, outs[j])
                rhs = ctx.apply(j, outs[i])
                rep.check(lhs == rhs, f"[nabla_{i}, nabla_{j}] on {b}", rhs, lhs)
    return rep


def suite_sl2(group, max_degree=None, **_):
    rep = _Report("sl2")
    group = _sum_zero(group)
    if max_degree is None:
        max_degree = 6 if group.kind == "S" else 8
    ctx = DunklContext(group)
    E, L, H = sl2_operators(ctx)
    for d in range(max_degree + 1):
        src = graded_slice(group.ring, d)
        same = src
        up = graded_slice(group.ring, d + 2)
        down = graded_slice(group.ring, d - 2) if d >= 2 else None
        Hm = operator_matrix(H, src, same)
        Eup = operator_matrix(E, src, up)
        HEup = operator_matrix(lambda f: H(E(f)) - E(H(f)), src, up)
        rep.check(HEup == Eup.scale(8), f"[H,E] on degree {d}", "8E", "mismatch")
        # [L,E] = H on every slice
        LE = operator_matrix(lambda f: L(E(f)) - E(L(f)), src, same)
        rep.check(LE == Hm, f"[L,E] on degree {d}", "H", "mismatch")
        if down is not None:
            Ldown = operator_matrix(L, src, down)
            HL = operator_matrix(lambda f: H(L(f)) - L(H(f)), src, down)
            rep.check(HL == Ldown.scale(-8), f"[H,L] on degree {d}", "-8L", "mismatch")
    rep.notes["normalization"] = "[L,E]=H, [H,E]=8E, [H,L]=-8L; (E/2, -L/2, H/4) is a standard triple"
    return rep


def suite_berest(group, seed=0, cases=25, max_degree=5, **_):
    rep = _Report("berest")
    rng = random.Random(seed)
    ctx = DunklContext(group)
    for _ in range(cases):
        p = random_poly(group.ring, rng.randint(1, 3), rng, terms=2)
        f = random_poly(group.ring, rng.randint(0, max_degree or 5), rng, terms=3)
        lhs = berest_nabla(p, f, ctx)
        rhs = ctx.nabla(p, f)
        rep.check(lhs == rhs, f"p={p}; f={f}", rhs, lhs)
    return rep


def suite_orthogonality(group, max_degree=None, **_):
    rep = _Report("orthogonality")
    ctx = DunklContext(group)
    gens = GeneratorSet.elementary(group)
    if max_degree is None:
        # degree 2m is the first with two dihedral monomials when m > 4
        max_degree = 6 if group.kind == "S" else max(8, 2 * group.order_param)
    for d in range(max_degree + 1):
        basis = canonical_basis(d, gens, ctx)
        mons = invariant_monomials(gens, d)
        for i, b in enumerate(basis):
            for a2, u in mons[:i]:
                val = ctx.pairing(u, b.poly)
                rep.check(not val, f"(u^{a2}, b_{b.a})", 0, val)
            for b2 in basis[:i]:
                val = ctx.pairing(b2.poly, b.poly)
                rep.check(not val, f"(b_{b2.a}, b_{b.a})", 0, val)
    return rep


def _harmonics(ctx, d):
    ring = ctx.ring
    sl = graded_slice(ring, d)
    if d < 2:
        return list(sl.basis)
    ker = kernel_basis(operator_matrix(ctx.laplacian, sl, graded_slice(ring, d - 2)))
    return [sum((b * c for b, c in zip(sl.basis, v) if c), ring.zero()) for v in ker]


def suite_frobenius(group, max_degree=None, seed=0, **_):
    rep = _Report("frobenius")
    group = _sum_zero(group)
    ctx = DunklContext(group)
    q = group.quadratic()
    rng = random.Random(seed)
    max_degree = 3 if max_degree is None else max_degree
    for d in range(max_degree + 1):
        for h in _harmonics(ctx, d):
            for k in range(3):
                f = h * q ** k
                g = random_poly(group.ring, d + 2 * k, rng, terms=3)
                lhs = ctx.pairing(f, g)
                rhs = phi_c(f * g, ctx) * frobenius_factor(d, k, ctx)
                rep.check(lhs == rhs, f"f=q^{k}*({h}); g={g}", rhs, lhs)
    return rep


def suite_kernel(group, max_degree=None, **_):
    """nabla_P e^(c)_{d_k} = 0 for invariant P of degree < d_k, uniqueness of
    that kernel, and for dihedral groups L^(a1+1) b_a = 0."""
    rep = _Report("kernel")
    ctx = DunklContext(group)
    gens = GeneratorSet.elementary(group)
    for dk in gens.degrees:
        e = elementary_invariant(dk, gens, ctx).poly
        for k in range(1, dk):
            for a, P in invariant_monomials(gens, k):
                val = ctx.nabla(ctx.dual(P), e)
                rep.check(val.is_zero(), f"nabla_(u^{a}) e_{dk}", 0, val)
        space = quasiharmonic_space(dk, dk, gens, ctx)
        rep.check(len(space) == 1, f"dim of degree-{dk} kernel", 1, len(space))
        if len(space) == 1:
            rep.check(proportionality(space[0], e) is not None,
                      f"kernel in degree {dk} spanned by e_{dk}", "proportional", space[0])
    if group.kind == "I2":
        m = group.order_param
        top = max_degree if max_degree is not None else 2 * m + 4
        for d in range(top + 1):
            for a, _ in invariant_monomials(gens, d):
                b = canonical_invariant(a, gens, ctx).poly
                f = b
                for _ in range(a[0] + 1):
                    f = ctx.laplacian(f)
                rep.check(f.is_zero(), f"L^{a[0] + 1} b_{a}", 0, f)
                b0 = canonical_invariant((0, a[1]), gens, ctx).poly
                want = gens.monomial((a[0], 0)) * b0
                rep.check(b == want, f"b_{a} = e2^{a[0]} b_(0,{a[1]})", want, b)
    return rep


def suite_gf(group, order=None, **_):
    _require(group.kind == "I2", "gf applies to dihedral groups")
    rep = _Report("gf")
    m = group.order_param
    g = build_dihedral(m, equal=True)
    ctx = DunklContext(g)
    gens = GeneratorSet.elementary(g)
    K = 3 if order is None else order
    for k, F in enumerate(gf_coefficients(m, K)):
        b = to_invpoly(canonical_invariant((0, k), gens, ctx).poly, g)
        rep.check(b == F, f"b_(0,{k}) for I2({m})", F, b)
    return rep


def suite_jacobi(group, order=None, **_):
    _require(group.kind == "I2" and group.order_param % 2 == 0,
             "jacobi applies to dihedral groups with even m")
    rep = _Report("jacobi")
    m = group.order_param
    g = build_dihedral(m)
    ctx = DunklContext(g)
    gens = GeneratorSet.elementary(g)
    C, delta = C_delta(g)
    K = 3 if order is None else order
    scalars = {}
    sp = ParamSpace(("a", "b"))
    a, b = sp.gen("a"), sp.gen("b")
    for k in range(K + 1):
        P = jacobi_poly(k, a, b)
        val = jacobi_operator(P, k, a, b)
        rep.check(val.is_zero(), f"J^(a,b) P_{k}", 0, val)
        closed, lead = b0k_jacobi(k, m, C, delta, return_scalar=True)
        monic = closed * lead.inverse()
        can = to_invpoly(canonical_invariant((0, k), gens, ctx).poly, g)
        rep.check(monic == can, f"monic Jacobi form of b_(0,{k})", can, monic)
        scalars[str(k)] = format_scalar(lead)
    rep.notes["scalars"] = scalars
    return rep


def suite_limit(group, **_):
    _require(group.kind == "S", "limit applies to S_n")
    rep = _Report("limit")
    n = group.order_param
    g = build_symmetric(n)
    ctx = DunklContext(g)
    gens = GeneratorSet.elementary(g)
    at = Fraction(1, n)
    limits = {}
    for k in range(2, n + 1):
        want = ebar(k, n, g.ring).eval_params({"c": at})
        try:
            got = limit_at(elementary_invariant(k, gens, ctx), at)
        except ArithmeticError as exc:
            rep.check(False, f"e_{k} at c=1/{n}", want, f"pole: {exc}")
            continue
        rep.check(got == want, f"e_{k} at c=1/{n}", want, got)
        limits[str(k)] = str(got)
    rep.notes["limits"] = limits
    return rep


def suite_iwasaki(group, **_):
    _require(group.kind == "S", "iwasaki applies to S_n")
    rep = _Report("iwasaki")
    n = group.order_param
    g = build_symmetric(n)
    ctx = DunklContext(g)
    gens = GeneratorSet.elementary(g)
    ratios = {}
    for k in range(2, n + 1):
        iw = iwasaki_elementary(k, n, ctx)
        can = elementary_invariant(k, gens, ctx).poly
        lam = proportionality(iw, can)
        rep.check(lam is not None and bool(lam), f"Iwasaki e_{k}, n={n}",
                  "nonzero multiple of the canonical e_k", "not proportional" if lam is None else lam)
        ratios[str(k)] = _text(lam)
    rep.notes["alpha"] = ratios
    return rep


def suite_nablapr(group, **_):
    _require(group.kind == "S", "nablapr applies to S_n")
    rep = _Report("nablapr")
    n = group.order_param
    g = build_symmetric(n)
    ctx = DunklContext(g)
    c = g.ring.space.gen("c")
    for k in range(n + 1):
        eb = ebar(k, n, g.ring)
        for r in range(1, k + 1):
            lhs = ctx.nabla(power_sum(g.ring, r), eb)
            ff = math.prod(range(n - k + 1, n - k + r + 1))
            coef = ((1 - c * n) ** r - (1 - c * n)) * c.inverse() * Fraction((-1) ** r * ff, n ** r)
            rhs = ebar(k - r, n, g.ring) * coef
            rep.check(lhs == rhs, f"nabla_p{r} ebar_{k}, n={n}", rhs, lhs)
    return rep


def suite_phic_poly(group, max_degree=None, seed=0, cases=20, **_):
    """(u, v)_c / (1 - h_c) is a parameter polynomial for seeded random pairs
    of homogeneous invariants of equal degree (S_n in the sum-zero model)."""
    rep = _Report("phic-poly")
    group = _sum_zero(group)
    ctx = DunklContext(group)
    gens = GeneratorSet.elementary(group)
    divisor = ctx.one_minus_h()
    top = 6 if max_degree is None else max_degree
    rng = random.Random(seed)
    by_degree = {d: [u for _, u in invariant_monomials(gens, d)] for d in range(1, top + 1)}
    by_degree = {d: us for d, us in by_degree.items() if us}
    for _ in range(cases):
        d = rng.choice(sorted(by_degree))
        u, v = (sum((w * rng.randint(-3, 3) for w in by_degree[d]), group.ring.zero())
                for _ in range(2))
        r = ctx.pairing(u, v) / divisor
        rep.check(r.is_polynomial(), f"({u}, {v})/({format_scalar(divisor)})", "polynomial", r)
    rep.notes["divisor"] = format_scalar(divisor)
    return rep


SUITES: dict[str, Callable] = {
    "berest": suite_berest,
    "commute": suite_commute,
    "frobenius": suite_frobenius,
    "gf": suite_gf,
    "iwasaki": suite_iwasaki,
    "jacobi": suite_jacobi,
    "kernel": suite_kernel,
    "limit": suite_limit,
    "nablapr": suite_nablapr,
    "orthogonality": suite_orthogonality,
    "phic-poly": suite_phic_poly,
    "sl2": suite_sl2,
}


def run_suite(name: str, group, **options) -> dict:
    """Run one suite; ``group`` is a ReflectionGroup or a spec string."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if isinstance(group, str):
        group = parse_group(group)
    options = {k: v for k, v in options.items() if v is not None}
    return SUITES[name](group, **options).as_dict()
