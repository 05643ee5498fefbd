"""Reflection-group models.

Two families are supported:

* ``S_n`` acting on ``Q^n`` by permuting coordinates (``build_symmetric``),
  optionally restricted to the sum-zero hyperplane (``reduced=True``), which
  is the reflection representation with no invariant vectors;
* the dihedral group ``I2(m)`` acting on ``span{z, zb}`` over ``Q(zeta_m)``
  by ``s_j(z) = -zeta^j zb``, ``s_j(zb) = -zeta^-j z`` (``build_dihedral``;
  see there for odd m).

A group carries its polynomial ring ``S(V)`` (variables are a basis of V,
coefficients include the multiplicity parameters), the reflections with
their roots and classes, the scalar product ``B`` and the degrees.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .polyring import Poly, PolyRing, substitute
from .scalars import Cyclotomic, format_scalar

__all__ = [
    "Reflection",
    "ReflectionGroup",
    "build_symmetric",
    "build_dihedral",
    "parse_group",
    "act",
    "permute",
    "coset_orbit_sum",
    "NotInvariant",
]


class NotInvariant(ValueError):
    """The input polynomial lacks the required invariance."""


@dataclass(frozen=True, eq=False)
class Reflection:
    """A reflection given by the images of the basis vectors of V.

    ``images[i]`` is the linear polynomial s(v_i); ``root`` is a
    -1-eigenvector, stored un-normalized.
    """

    name: str
    images: tuple
    root: Poly
    class_index: int

    @property
    def ring(self) -> PolyRing:
        return self.root.ring

    def root_vector(self) -> list:
        """Coordinates of the root: <y_i, alpha> for the dual basis y_i."""
        n = self.ring.nvars
        return [self.root.coefficient(tuple(int(i == j) for j in range(n)))
                for i in range(n)]

    def matrix(self) -> list[list]:
        """Column i holds the coordinates of s(v_i)."""
        n = self.ring.nvars
        cols = []
        for img in self.images:
            cols.append([img.coefficient(tuple(int(i == j) for j in range(n)))
                         for i in range(n)])
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def with_root(self, scale) -> "Reflection":
        """Same reflection with the root multiplied by a nonzero scalar."""
        return Reflection(self.name, self.images, self.root * scale, self.class_index)

    def __call__(self, f: Poly) -> Poly:
        return substitute(f, list(self.images))

    def __repr__(self):
        return f"Reflection({self.name}, root={self.root})"


@dataclass(eq=False)
class ReflectionGroup:
    kind: str  # "S" or "I2"
    order_param: int  # n for S_n, m for I2(m)
    ring: PolyRing
    reflections: list[Reflection]
    classes: list[list[int]]
    class_params: tuple[str, ...]
    degrees: tuple[int, ...]
    B: list[list]
    reduced: bool = False
    _quad: Poly | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        """dim V."""
        return self.ring.nvars

    @property
    def params(self) -> tuple[str, ...]:
        return self.ring.params

    @property
    def spec(self) -> str:
        if self.kind == "S":
            return f"Sn:{self.order_param}"
        return f"I2:{self.order_param}"

    def __repr__(self):
        extra = " (sum-zero)" if self.reduced else ""
        return f"<{self.spec}{extra} params={self.params}>"

    def multiplicity(self, refl: Reflection):
        """The parameter polynomial c(s) for a reflection."""
        return self.ring.param(self.class_params[refl.class_index])

    def B_inverse(self) -> list[list]:
        from .exactla import Matrix

        return Matrix(self.B).inverse().to_lists()

    def quadratic(self) -> Poly:
        """The invariant quadratic form q = sum B^-1_ij v_i v_j dual to B."""
        if self._quad is None:
            Binv = self.B_inverse()
            gens = self.ring.gens()
            q = self.ring.zero()
            for i, j in itertools.product(range(self.rank), repeat=2):
                if Binv[i][j]:
                    q = q + gens[i] * gens[j] * Binv[i][j]
            self._quad = q
        return self._quad

    def descriptor(self) -> dict:
        return {
            "group": self.spec,
            "sum_zero": self.reduced,
            "rank": self.rank,
            "variables": list(self.ring.variables),
            "params": list(self.params),
            "degrees": list(self.degrees),
            "B": [[format_scalar(x) for x in row] for row in self.B],
            "classes": [list(c) for c in self.classes],
            "reflections": [
                {
                    "name": r.name,
                    "class": r.class_index,
                    "param": self.class_params[r.class_index],
                    "root": [format_scalar(x) for x in r.root_vector()],
                    "matrix": [[format_scalar(x) for x in row] for row in r.matrix()],
                }
                for r in self.reflections
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.descriptor())


# ------------------------------------------------------------ constructors


def build_symmetric(n: int, reduced: bool = False, param: str = "c") -> ReflectionGroup:
    """S_n on Q^n (B = identity) or on the sum-zero hyperplane.

    In the sum-zero model the basis is v_i = x_i - x_n (i < n), so
    B(v_i, v_j) = 1 + delta_ij, and ``s_in`` maps v_i -> -v_i,
    v_j -> v_j - v_i.
    """
    if n < 2:
        raise ValueError("S_n needs n >= 2")
    if not reduced:
        names = tuple(f"x{i + 1}" for i in range(n))
        ring = PolyRing(names, (param,))
        x = ring.gens()
        refls = []
        for i, j in itertools.combinations(range(n), 2):
            images = list(x)
            images[i], images[j] = x[j], x[i]
            refls.append(Reflection(f"s{i + 1}{j + 1}", tuple(images), x[i] - x[j], 0))
        B = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        degrees = tuple(range(1, n + 1))
    else:
        names = tuple(f"v{i + 1}" for i in range(n - 1))
        ring = PolyRing(names, (param,))
        v = ring.gens()
        refls = []
        for i, j in itertools.combinations(range(n), 2):
            if j < n - 1:
                images = list(v)
                images[i], images[j] = v[j], v[i]
                root = v[i] - v[j]
            else:
                images = [vk - v[i] for vk in v]
                images[i] = -v[i]
                root = v[i]
            refls.append(Reflection(f"s{i + 1}{j + 1}", tuple(images), root, 0))
        B = [[Fraction(1 + int(i == j)) for j in range(n - 1)] for i in range(n - 1)]
        degrees = tuple(range(2, n + 1))
    return ReflectionGroup("S", n, ring, refls, [list(range(len(refls)))],
                           (param,), degrees, B, reduced=reduced)


def build_dihedral(m: int, equal: bool = False) -> ReflectionGroup:
    """I2(m) on span{z, zb} over Q(zeta_m).

    For even m the reflections are s_j: z -> -zeta^j zb, zb -> -zeta^-j z
    (j = 0..m-1) with root z + zeta^j zb.  For odd m that action does not
    fix z^m + zb^m (s_0 maps it to its negative), so the sign is dropped:
    s_j: z -> zeta^j zb with root z - zeta^j zb; this is the same group
    written in the basis {z, -zb}, in which e_2 = z zb and e_m = z^m + zb^m
    are invariant.

    For even m the classes are {s_j : j odd} (parameter ``c1``) and
    {s_j : j even} (parameter ``c2``), so that delta = c2 - c1 is
    c(s_2) - c(s_1); ``equal=True`` uses one parameter ``c`` for both.
    The scalar product has B(z, zb) = 1/2, B(z, z) = B(zb, zb) = 0.
    """
    if m < 3:
        raise ValueError("I2(m) needs m >= 3")
    two_classes = m % 2 == 0
    params = ("c1", "c2") if two_classes and not equal else ("c",)
    ring = PolyRing(("z", "zb"), params, m)
    z, zb = ring.gens()
    sign = -1 if two_classes else 1
    refls = []
    for j in range(m):
        zj = ring.zeta_power(j)
        zmj = ring.zeta_power(-j)
        images = (zj * zb * sign, zmj * z * sign)
        cls = (0 if j % 2 else 1) if two_classes else 0
        refls.append(Reflection(f"s{j}", images, z - zj * zb * sign, cls))
    if two_classes:
        classes = [[j for j in range(m) if j % 2], [j for j in range(m) if not j % 2]]
        class_params = ("c1", "c2") if not equal else ("c", "c")
    else:
        classes = [list(range(m))]
        class_params = ("c",)
    half = Fraction(1, 2)
    B = [[Fraction(0), half], [half, Fraction(0)]]
    return ReflectionGroup("I2", m, ring, refls, classes, class_params, (2, m), B)


_SPEC = re.compile(r"\s*(Sn|S|I2)\s*:\s*(\d+)\s*")


def parse_group(spec: str, reduced: bool = False, equal: bool = False) -> ReflectionGroup:
    """Build a group from ``"Sn:4"`` or ``"I2:5"``."""
    mt = _SPEC.fullmatch(spec)
    if not mt:
        raise ValueError(f"bad group spec {spec!r}; expected e.g. Sn:4 or I2:5")
    kind, num = mt.group(1), int(mt.group(2))
    if kind in ("Sn", "S"):
        return build_symmetric(num, reduced=reduced)
    return build_dihedral(num, equal=equal)


# ---------------------------------------------------------------- actions


def act(w, f: Poly) -> Poly:
    """Apply a group element: a Reflection, a sequence of reflections
    (applied right to left), or a permutation tuple of the variables."""
    if isinstance(w, Reflection):
        if w.ring is not f.ring:
            raise ValueError("arity mismatch between group element and polynomial")
        return w(f)
    if isinstance(w, tuple) and all(isinstance(i, int) for i in w):
        return permute(w, f)
    out = f
    for r in reversed(list(w)):
        out = act(r, out)
    return out


def permute(perm: Sequence[int], f: Poly) -> Poly:
    """x_i -> x_{perm[i]} (0-based)."""
    if len(perm) != f.ring.nvars:
        raise ValueError("arity mismatch between permutation and polynomial")
    gens = f.ring.gens()
    return substitute(f, [gens[p] for p in perm])


def _block_invariant(f: Poly, n: int, k: int) -> bool:
    for i in list(range(k - 1)) + list(range(k, n - 1)):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        if permute(perm, f) != f:
            return False
    return True


def coset_orbit_sum(n: int, k: int, f: Poly, check: bool = True) -> Poly:
    """Sum of w(f) over S_n / (S_k x S_{n-k}).

    The transversal sends 1..k increasingly onto a k-subset J and k+1..n
    increasingly onto its complement.
    """
    if f.ring.nvars != n:
        raise ValueError("arity mismatch")
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if check and not _block_invariant(f, n, k):
        raise NotInvariant("input is not invariant under S_k x S_{n-k}")
    acc = f.ring.zero()
    for J in itertools.combinations(range(n), k):
        rest = [i for i in range(n) if i not in J]
        acc = acc + permute(list(J) + rest, f)
    return acc


def zeta_scalar(group: ReflectionGroup, k: int):
    """zeta_m^k as a Cyclotomic scalar (dihedral groups only)."""
    return Cyclotomic.zeta(group.order_param, k)
