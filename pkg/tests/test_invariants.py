from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklinv.dunkl import DunklContext
from dunklinv.groups import act, build_dihedral, build_symmetric
from dunklinv.invariants import (
    GeneratorSet,
    canonical_basis,
    canonical_invariant,
    ebar,
    elementary_invariant,
    from_sum_zero,
    gram_matrix,
    inv_lex_less,
    invariant_monomials,
    iwasaki_elementary,
    iwasaki_mu,
    limit_at,
    precedes,
    proportionality,
    quasiharmonic_space,
    to_sum_zero,
)
from dunklinv.scalars import PoleError

from conftest import dihedral_setup, symmetric_setup


class TestOrder:
    def test_example(self):
        assert inv_lex_less((0, 1), (2, 0))

    def test_reflexive_false(self):
        assert not inv_lex_less((1, 2, 3), (1, 2, 3))

    def test_last_coordinate_decides(self):
        assert not inv_lex_less((1, 0, 0), (0, 0, 1))
        assert inv_lex_less((0, 0, 1), (1, 0, 0))

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            inv_lex_less((1, 0), (1, 0, 0))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=3, max_size=3),
           st.lists(st.integers(0, 3), min_size=3, max_size=3))
    def test_matches_definition(self, a, b):
        diff = [x - y for x, y in zip(b, a)]
        nz = [d for d in diff if d]
        expected = bool(nz) and nz[-1] > 0
        assert precedes(a, b) == expected


class TestMonomials:
    def test_s3_degree3(self, s3):
        gens = GeneratorSet.elementary(s3)
        assert [a for a, _ in invariant_monomials(gens, 3)] == [(3, 0, 0), (1, 1, 0), (0, 0, 1)]

    def test_degree_zero(self, s3):
        gens = GeneratorSet.elementary(s3)
        (a, u), = invariant_monomials(gens, 0)
        assert a == (0, 0, 0) and u == s3.ring.one()

    def test_dihedral_5_degree_10(self):
        gens = GeneratorSet.elementary(build_dihedral(5))
        assert [a for a, _ in invariant_monomials(gens, 10)] == [(5, 0), (0, 2)]

    def test_ascending(self, s4):
        gens = GeneratorSet.elementary(s4)
        mons = [a for a, _ in invariant_monomials(gens, 6)]
        assert all(precedes(x, y) for x, y in zip(mons, mons[1:]))


class TestCanonical:
    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_pure_e2_power(self, m):
        group, ctx, gens = dihedral_setup(m)
        for k in range(4):
            assert canonical_invariant((k, 0), gens, ctx).poly == gens.monomial((k, 0))

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_em(self, m):
        group, ctx, gens = dihedral_setup(m, equal=True)
        z, zb = group.ring.gens()
        assert canonical_invariant((0, 1), gens, ctx).poly == z ** m + zb ** m

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_b02(self, m):
        group, ctx, gens = dihedral_setup(m, equal=True)
        z, zb = group.ring.gens()
        c = group.ring.space.gen("c")
        em, e2 = z ** m + zb ** m, z * zb
        b = canonical_invariant((0, 2), gens, ctx)
        assert b.poly == em ** 2 + e2 ** m * (2 / (c - 1))
        assert b.coefficient((m, 0)) == 2 / (c - 1)
        assert b.terms()[0] == ((0, 2), 1)

    def test_s3_u1_squared(self, s3, ctx_s3):
        gens = GeneratorSet.elementary(s3)
        b = canonical_invariant((2, 0, 0), gens, ctx_s3)
        assert b.poly == gens.monomial((2, 0, 0))

    def test_wrong_length(self, s3, ctx_s3):
        with pytest.raises(ValueError):
            canonical_invariant((1, 0), GeneratorSet.elementary(s3), ctx_s3)

    def test_invariance(self, s4):
        ctx = DunklContext(s4)
        gens = GeneratorSet.elementary(s4)
        for b in canonical_basis(4, gens, ctx):
            assert all(act(s, b.poly) == b.poly for s in s4.reflections)

    def test_gram_is_symmetric_and_nonsingular(self, s4):
        ctx = DunklContext(s4)
        mons, G = gram_matrix(GeneratorSet.elementary(s4), 4, ctx)
        assert G == G.transpose()
        assert len(mons) == 5
        G.inverse()


class TestElementary:
    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_degree_two_is_ebar2(self, n):
        group, ctx, gens = symmetric_setup(n)
        assert elementary_invariant(2, gens, ctx).poly == ebar(2, n, group.ring)

    @pytest.mark.parametrize("n", [3, 4])
    def test_degree_three_is_ebar3(self, n):
        group, ctx, gens = symmetric_setup(n)
        assert elementary_invariant(3, gens, ctx).poly == ebar(3, n, group.ring)

    def test_s4_degree4(self):
        group, ctx, gens = symmetric_setup(4)
        c = group.ring.space.gen("c")
        e = elementary_invariant(4, gens, ctx)
        want = ebar(2, 4, group.ring) ** 2 * (Fraction(1, 4) * (1 - c * 4) / (c * 12 - 5)) \
            + ebar(4, 4, group.ring)
        assert e.poly == want

    def test_s5_degree5(self):
        group, ctx, gens = symmetric_setup(5)
        c = group.ring.space.gen("c")
        e = elementary_invariant(5, gens, ctx)
        want = ebar(2, 5, group.ring) * ebar(3, 5, group.ring) \
            * (Fraction(2, 5) * (1 - c * 5) / (c * 20 - 10)) + ebar(5, 5, group.ring)
        assert e.poly == want

    def test_no_invariants(self):
        group, ctx, gens = dihedral_setup(5)
        with pytest.raises(ValueError):
            elementary_invariant(1, gens, ctx)


class TestEbar:
    def test_ebar1_vanishes(self):
        assert ebar(1, 4).is_zero()

    def test_n2(self):
        ring = build_symmetric(2).ring
        x1, x2 = ring.gens()
        assert ebar(2, 2, ring) == -(x1 - x2) ** 2 * Fraction(1, 4)

    @pytest.mark.parametrize("n,k", [(3, 2), (4, 3), (5, 4)])
    def test_invariant_and_translation_free(self, n, k):
        group = build_symmetric(n)
        f = ebar(k, n, group.ring)
        assert all(act(s, f) == f for s in group.reflections)
        assert sum((f.derivative(i) for i in range(n)), group.ring.zero()).is_zero()

    def test_sum_zero_round_trip(self):
        full = build_symmetric(4)
        red = build_symmetric(4, reduced=True)
        f = ebar(3, 4, full.ring)
        assert from_sum_zero(to_sum_zero(f, red), full.ring) == f


class TestIwasaki:
    def test_mu2(self, s2, ctx_s2):
        x1, x2 = s2.ring.gens()
        assert iwasaki_mu(2, 2, ctx_s2) == -(x1 - x2) ** 2

    def test_n2_multiple_of_ebar2(self, s2, ctx_s2):
        lam = proportionality(iwasaki_elementary(2, 2, ctx_s2), ebar(2, 2, s2.ring))
        assert lam == 4

    @pytest.mark.parametrize("n,k", [(3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
    def test_mu_degree(self, n, k):
        ctx = DunklContext(build_symmetric(n))
        mu = iwasaki_mu(k, n, ctx)
        assert mu.is_homogeneous() and mu.degree() == k

    @pytest.mark.parametrize("n,k", [(3, 3), (4, 4)])
    def test_proportional(self, n, k):
        group, ctx, gens = symmetric_setup(n)
        e = elementary_invariant(k, gens, ctx)
        lam = proportionality(iwasaki_elementary(k, n, ctx), e.poly)
        assert lam is not None and lam
        if (n, k) == (4, 4):
            # the Iwasaki sum is this multiple of the monic e4^(c)
            c = group.ring.space.gen("c")
            assert lam == c ** 3 * -4608 + c ** 2 * 7296 - c * 3776 + 640


class TestLimit:
    def test_e4_at_quarter(self):
        group, ctx, gens = symmetric_setup(4)
        got = limit_at(elementary_invariant(4, gens, ctx), Fraction(1, 4))
        assert got == ebar(4, 4, group.ring).eval_params({"c": Fraction(1, 4)})

    def test_e5_at_fifth(self):
        group, ctx, gens = symmetric_setup(5)
        got = limit_at(elementary_invariant(5, gens, ctx), Fraction(1, 5))
        assert got == ebar(5, 5, group.ring).eval_params({"c": Fraction(1, 5)})

    def test_dihedral_pole(self):
        group, ctx, gens = dihedral_setup(5)
        with pytest.raises(PoleError) as info:
            limit_at(canonical_invariant((0, 2), gens, ctx), 1)
        assert info.value.denominator == "c - 1"
        assert "(5, 0)" in str(info.value)

    def test_generic_point_matches_specialization(self):
        group, ctx, gens = symmetric_setup(4)
        e = elementary_invariant(4, gens, ctx)
        assert limit_at(e, Fraction(2, 7)) == e.poly.eval_params({"c": Fraction(2, 7)})


class TestQuasiharmonic:
    def test_dihedral_5(self):
        group, ctx, gens = dihedral_setup(5)
        space = quasiharmonic_space(5, 5, gens, ctx)
        assert len(space) == 1
        assert proportionality(space[0], elementary_invariant(5, gens, ctx).poly) is not None

    @pytest.mark.parametrize("group", [build_dihedral(4), build_symmetric(3, reduced=True)], ids=repr)
    def test_degree_two(self, group):
        gens = GeneratorSet.elementary(group)
        space = quasiharmonic_space(2, 2, gens, DunklContext(group))
        assert space == [gens.polys[0]]

    def test_dihedral_3_twice_coxeter(self):
        group, ctx, gens = dihedral_setup(3)
        assert len(quasiharmonic_space(6, 3, gens, ctx)) == 1


def test_proportionality_helper(s3):
    x = s3.ring.gens()
    c = s3.ring.space.gen("c")
    assert proportionality(x[0] * (c + 1), x[0]) == c + 1
    assert proportionality(x[0], x[1]) is None
