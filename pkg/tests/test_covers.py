import itertools
import random

import pytest
from hypothesis import given, strategies as st

from coverlab.covers import (
    CoverProblem,
    construct_subgroup_cover,
    maximal_subgroups,
    minimal_subgroup_cover,
    minimal_subsemigroup_cover,
    semigroup_closure,
    subsemigroups,
    verify_proper_union,
)
from coverlab.errors import BoundExceeded, ImproperPart, InputError, TooFewParts
from coverlab.groups import (
    Coset, FiniteAbelianGroup, Subgroup, abelian_groups_of_order, is_prime, quotient_rank, subgroups,
)
from oracles import all_subgroups_by_small_generating_sets, group_elements, minimal_cover_exhaustive


def G(*d):
    return FiniteAbelianGroup(d)


def gen(g, *gens):
    return Subgroup.generated(g, gens)


class TestVerify:
    def test_klein_three_lines(self):
        g = G(2, 2)
        parts = (gen(g, (1, 0)), gen(g, (0, 1)), gen(g, (1, 1)))
        r = verify_proper_union(CoverProblem(g, parts))
        assert r.covered and r.proper
        assert r.missing_after_removal == {0: (1, 0), 1: (0, 1), 2: (1, 1)}

    def test_c4_all_proper_subgroups(self):
        g = G(4)
        r = verify_proper_union(CoverProblem(g, (Subgroup.trivial(g), gen(g, (2,)))))
        assert not r.covered and r.uncovered_witness == (1,)

    def test_duplicate_parts(self):
        g = G(6)
        r = verify_proper_union(CoverProblem(g, (gen(g, (2,)), gen(g, (3,)), gen(g, (2,)))))
        assert not r.covered and r.uncovered_witness in {(1,), (5,)}
        assert 0 not in r.missing_after_removal and 2 not in r.missing_after_removal

    def test_coset_partition(self):
        g = G(4)
        h = gen(g, (2,))
        r = verify_proper_union(CoverProblem(g, (Coset(h, (0,)), Coset(h, (1,))), "cosets"))
        assert r.covered and r.proper

    def test_rejections(self):
        g = G(2, 2)
        with pytest.raises(TooFewParts):
            verify_proper_union(CoverProblem(g, (gen(g, (1, 0)),)))
        with pytest.raises(ImproperPart):
            verify_proper_union(CoverProblem(g, (gen(g, (1, 0), (0, 1)), gen(g, (1, 0)))))
        with pytest.raises(InputError):
            CoverProblem(g, (Coset(gen(g, (1, 0)), (0, 1)),), "subgroups")
        with pytest.raises(InputError):
            CoverProblem(g, (gen(G(2), (1,)),))

    @given(st.permutations(range(5)), st.sampled_from([(2, 2), (2, 4), (3, 3), (2, 6)]))
    def test_order_invariant(self, perm, factors):
        g = G(*factors)
        pool = [h for h in subgroups(g) if h.is_proper]
        parts = tuple(pool[i % len(pool)] for i in range(5))
        base = verify_proper_union(CoverProblem(g, parts))
        permuted = verify_proper_union(CoverProblem(g, tuple(parts[i] for i in perm)))
        assert (permuted.covered, permuted.proper, permuted.uncovered_witness) == \
            (base.covered, base.proper, base.uncovered_witness)
        assert permuted.missing_after_removal == {
            new: base.missing_after_removal[old] for new, old in enumerate(perm) if old in base.missing_after_removal}


class TestMinimal:
    @pytest.mark.parametrize("n", [1, 2, 6, 12, 30, 64, 97, 360])
    def test_cyclic_has_no_cover(self, n):
        g = FiniteAbelianGroup.from_cyclic_orders([n])
        assert minimal_subgroup_cover(g) is None
        # a generator avoids every proper subgroup
        gen1 = (1,) if g.rank else ()
        assert all(gen1 not in h for h in subgroups(g) if h.is_proper) or g.rank == 0

    @pytest.mark.parametrize("factors, k", [((2, 2), 3), ((3, 3), 4), ((5, 5), 6), ((2, 2, 2), 3), ((6, 6), 3)])
    def test_known_sizes(self, factors, k):
        found = minimal_subgroup_cover(G(*factors))
        assert found is not None and found[0] == k

    @pytest.mark.parametrize("g", [g for n in range(1, 17) for g in abelian_groups_of_order(n)], ids=str)
    def test_against_exhaustive_oracle(self, g):
        subs = all_subgroups_by_small_generating_sets(g.invariant_factors)
        expect = minimal_cover_exhaustive(g.invariant_factors, subs)
        found = minimal_subgroup_cover(g)
        assert (found[0] if found else None) == expect

    def test_bound(self):
        with pytest.raises(BoundExceeded):
            minimal_subgroup_cover(G(2, 2**12))

    def test_maximal_subgroups_have_prime_index(self):
        g = G(2, 12)
        maxes = maximal_subgroups(g)
        assert all(h.index in (2, 3) for h in maxes)
        # 3 of index 2 (from (Z/2)^2), 1 of index 3
        assert len(maxes) == 4 == len(set(maxes))


class TestConstruct:
    def test_klein(self):
        g = G(2, 2)
        parts = construct_subgroup_cover(g)
        assert {frozenset(h.elements()) for h in parts} == {
            frozenset({(0, 0), (1, 0)}), frozenset({(0, 0), (0, 1)}), frozenset({(0, 0), (1, 1)})}

    def test_c2_c4(self):
        g = G(2, 4)
        parts = construct_subgroup_cover(g)
        assert len(parts) == 3 and all(h.index == 2 for h in parts)
        assert verify_proper_union(CoverProblem(g, tuple(parts))).proper

    def test_cyclic(self):
        assert construct_subgroup_cover(G(15)) is None

    @pytest.mark.parametrize("g", [g for n in range(2, 65) for g in abelian_groups_of_order(n) if not g.is_cyclic],
                             ids=str)
    def test_size_is_p_plus_one(self, g):
        parts = construct_subgroup_cover(g)
        p = min(q for q in range(2, g.order + 1) if is_prime(q) and g.order % q == 0 and quotient_rank(g, q) >= 2)
        assert len(parts) == p + 1
        assert verify_proper_union(CoverProblem(g, tuple(parts))).proper

    def test_two_subgroup_family_misses_an_element(self):
        # <a> and <a + b> alone do not cover C2 + C2: b is left out
        g = G(2, 2)
        r = verify_proper_union(CoverProblem(g, (gen(g, (1, 0)), gen(g, (1, 1)))))
        assert not r.covered and r.uncovered_witness == (0, 1)


class TestSubsemigroups:
    @pytest.mark.parametrize("g", [g for n in range(1, 25) for g in abelian_groups_of_order(n)], ids=str)
    def test_subsemigroups_are_subgroups(self, g):
        semis = subsemigroups(g)
        assert semis == {frozenset(h.elements()) for h in subgroups(g)}

    @pytest.mark.parametrize("g", [g for n in range(1, 13) for g in abelian_groups_of_order(n)], ids=str)
    def test_closure_of_every_subset(self, g):
        elems = list(g.elements())
        groups = {frozenset(h.elements()) for h in subgroups(g)}
        for bits in range(1, 1 << len(elems)):
            s = [elems[i] for i in range(len(elems)) if bits >> i & 1]
            assert semigroup_closure(g, s) in groups

    def test_examples(self):
        assert minimal_subsemigroup_cover(G(6)) is None
        assert minimal_subsemigroup_cover(G()) is None
        assert minimal_subsemigroup_cover(G(2, 2))[0] == 3
