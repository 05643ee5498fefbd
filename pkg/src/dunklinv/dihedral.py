"""Closed forms for the dihedral groups I2(m).

Invariants are handled as polynomials in two formal variables ``E2`` and
``EM`` standing for e_2 = z zb and e_m = z^m + zb^m (weights 2 and m).
This module has the explicit Laplacian on C[e_2, e_m], the operator identity
in terms of the Euler-type operators, the generating function for the
equal-parameter b_(0,k), Jacobi polynomials with symbolic parameters, and
the Jacobi closed form of b_(0,k) for even m.

The two-parameter combinations are C = c1 + c2 and delta = +-(c2 - c1),
see :func:`C_delta` for the sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .groups import ReflectionGroup
from .polyring import Poly, PolyRing
from .scalars import Cyclotomic, ParamSpace, RatFun, binom_sym

__all__ = [
    "inv_ring",
    "weighted_degree",
    "C_delta",
    "to_invpoly",
    "from_invpoly",
    "laplacian_pde",
    "viaD_identity_check",
    "gf_coefficients",
    "jacobi_poly",
    "jacobi_operator",
    "b0k_jacobi",
    "e_m_prime",
]


def inv_ring(params: Sequence[str] = ("c",)) -> PolyRing:
    """Q(params)[E2, EM]."""
    return PolyRing(("E2", "EM"), tuple(params))


def weighted_degree(f: Poly, m: int) -> int:
    return max((2 * a + m * b for a, b in f.exponents()), default=-1)


def C_delta(group: ReflectionGroup):
    """(C, delta) as rational functions of the group's parameters.

    delta is the combination that enters the restricted Laplacian.  It is
    c2 - c1 (even-indexed minus odd-indexed class) when 4 | m and c1 - c2
    when m = 2 mod 4: e_m = 2 r^m cos(m theta) takes the value +2 r^m on
    the even-indexed mirrors only in the first case.
    """
    space = group.ring.space
    if group.params == ("c1", "c2"):
        c1, c2 = space.gen("c1"), space.gen("c2")
        delta = c2 - c1 if group.order_param % 4 == 0 else c1 - c2
        return c1 + c2, delta
    c = space.gen("c")
    return c * 2, space.zero()


def _base(x):
    if isinstance(x, Cyclotomic):
        return x.to_base()
    return x


def to_invpoly(f: Poly, group: ReflectionGroup) -> Poly:
    """Write an invariant of a dihedral group as a polynomial in E2, EM.

    Greedy on the leading monomial: e_2^a e_m^b leads with z^(a+mb) zb^a.
    """
    m = group.order_param
    R = inv_ring(group.params)
    z, zb = group.ring.gens()
    e2, em = z * zb, z ** m + zb ** m
    out = R.zero()
    rest = f
    while rest:
        i, j = rest.exponents()[0]
        if i < j or (i - j) % m:
            raise ValueError("polynomial is not invariant")
        a, b = j, (i - j) // m
        coef = rest.coefficient((i, j))
        rest = rest - e2 ** a * em ** b * coef
        out = out + R.monomial((a, b), _base(coef))
    return out


def from_invpoly(F: Poly, group: ReflectionGroup) -> Poly:
    m = group.order_param
    z, zb = group.ring.gens()
    e2, em = z * zb, z ** m + zb ** m
    acc = group.ring.zero()
    for (a, b), coef in F.terms():
        acc = acc + e2 ** a * em ** b * coef
    return acc


def _check_delta(m: int, delta):
    if m % 2 and delta:
        raise ValueError("delta must vanish for odd m")


def laplacian_pde(f: Poly, m: int, C, delta=0) -> Poly:
    """e2 d2^2 + m em d2 dm + m^2 e2^(m-1) dm^2 + (1 - mC/2) d2
    + (m^2/2) delta e2^(m/2-1) dm, applied to f in Q(params)[E2, EM]."""
    _check_delta(m, delta)
    R = f.ring
    E2, EM = R.gens()
    d2 = f.derivative(0)
    dm = f.derivative(1)
    out = (d2.derivative(0) * E2
           + d2.derivative(1) * EM * m
           + dm.derivative(1) * E2 ** (m - 1) * (m * m)
           + d2 * (1 - C * Fraction(m, 2)))
    if delta:
        out = out + dm * E2 ** (m // 2 - 1) * delta * Fraction(m * m, 2)
    return out


def viaD_identity_check(f: Poly, m: int, C, delta=0) -> bool:
    """Check (4/m^2) e2 L f = E^2 f - C E f + (4 e2^m/em^2 - 1)(D^2 - D) f
    + (C - 1 + 2 delta e2^(m/2)/em) D f after multiplying by em^2, where
    E = (2/m) e2 d2 + em dm and D = em dm."""
    _check_delta(m, delta)
    R = f.ring
    E2, EM = R.gens()

    def euler(g):
        return g.derivative(0) * E2 * Fraction(2, m) + g.derivative(1) * EM

    def dee(g):
        return g.derivative(1) * EM

    lhs = E2 * laplacian_pde(f, m, C, delta) * EM ** 2 * Fraction(4, m * m)
    Ef = euler(f)
    Df = dee(f)
    DDf = dee(Df)
    rhs = (euler(Ef) - Ef * C) * EM ** 2
    rhs = rhs + (E2 ** m * 4 - EM ** 2) * (DDf - Df)
    rhs = rhs + Df * EM ** 2 * (C - 1)
    if delta:
        rhs = rhs + Df * EM * E2 ** (m // 2) * (delta * 2)
    return lhs == rhs


def gf_coefficients(m: int, K: int, ring: PolyRing | None = None) -> list[Poly]:
    """b_(0,k) for k = 0..K from (1 + e_m t + e_2^m t^2)^c, equal parameter c.

    The t^k coefficient is sum_i binom(c, k-i) binom(k-i, i) e_m^(k-2i) e_2^(mi);
    dividing by binom(c, k) makes it monic in e_m^k.
    """
    if K < 0:
        raise ValueError("truncation order must be nonnegative")
    R = ring or inv_ring(("c",))
    space = R.space
    out = []
    for k in range(K + 1):
        acc = R.zero()
        for i in range(k // 2 + 1):
            coef = binom_sym(k - i, space) * math.comb(k - i, i)
            acc = acc + R.monomial((m * i, k - 2 * i), coef)
        out.append(acc * binom_sym(k, space).inverse())
    return out


def _falling(x, j: int):
    acc = x * 0 + 1
    for i in range(j):
        acc = acc * (x - i)
    return acc


def _binom(x, j: int):
    return _falling(x, j) * Fraction(1, math.factorial(j))


def jacobi_poly(k: int, a, b, ring: PolyRing | None = None) -> Poly:
    """P_k^(a,b)(y) = sum_s binom(k+a, k-s) binom(k+b, s) ((y-1)/2)^s ((y+1)/2)^(k-s),
    valid for symbolic a, b (each binomial is a polynomial in a, b)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if ring is None:
        names = a.space.names if isinstance(a, RatFun) else \
            (b.space.names if isinstance(b, RatFun) else ())
        ring = PolyRing(("y",), names)
    y = ring.gen(0)
    lo, hi = (y - 1) * Fraction(1, 2), (y + 1) * Fraction(1, 2)
    acc = ring.zero()
    for s in range(k + 1):
        coef = _binom(a + k, k - s) * _binom(b + k, s)
        acc = acc + lo ** s * hi ** (k - s) * coef
    return acc


def jacobi_operator(P: Poly, k: int, a, b) -> Poly:
    """(1 - y^2) P'' + (b - a - (a + b + 2) y) P' + k(k + a + b + 1) P."""
    y = P.ring.gen(0)
    d1 = P.derivative(0)
    d2 = d1.derivative(0)
    return (d2 * (1 - y * y)
            + d1 * (y * (-(a + b + 2)) + (b - a))
            + P * ((a + b + k + 1) * k))


def b0k_jacobi(k: int, m: int, C, delta, ring: PolyRing | None = None,
               return_scalar: bool = False):
    """k! e2^(mk/2) / (4^k binom(2k - C + 1, k)) * P_k^(a,b)(em / (2 e2^(m/2)))
    with a = -(C + delta + 1)/2, b = -(C - delta + 1)/2, for even m.

    The substitution is cleared termwise: e2^(mk/2) y^j becomes
    em^j e2^(m(k-j)/2) / 2^j.  With ``return_scalar`` the leading coefficient
    (of em^k) is returned as well, which is the factor relating this
    normalization to the monic b_(0,k).
    """
    if m % 2:
        raise ValueError("the Jacobi closed form needs even m")
    space = C.space if isinstance(C, RatFun) else ParamSpace(("C",))
    R = ring or inv_ring(space.names)
    a = -(C + delta + 1) * Fraction(1, 2)
    b = -(C - delta + 1) * Fraction(1, 2)
    P = jacobi_poly(k, a, b, PolyRing(("y",), space.names))
    scalar = _falling(-C + (2 * k + 1), k).inverse() * Fraction(math.factorial(k) ** 2, 4 ** k) \
        if k else space.one()
    acc = R.zero()
    for (j,), pj in P.terms():
        acc = acc + R.monomial((m * (k - j) // 2, j), pj * Fraction(1, 2 ** j))
    out = acc * scalar
    if return_scalar:
        return out, out.coefficient((0, k))
    return out


def e_m_prime(ring: PolyRing, m: int) -> Poly:
    """e'_m = e_m/4 - e_2^(m/2)/2 (even m); documented, unused elsewhere."""
    if m % 2:
        raise ValueError("needs even m")
    E2, EM = ring.gens()
    return EM * Fraction(1, 4) - E2 ** (m // 2) * Fraction(1, 2)
