import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import infalg as ia
from infalg.partition import (MAX_PARTITION_UNIVERSE, Partition, Universe,
                              all_partitions, cond_independent, independent,
                              refines)

U2, U3, U4 = Universe(2), Universe(3), Universe(4)


def P(universe, *blocks):
    return Partition(universe, blocks)


# independent oracles

def meet_by_alternating_saturation(p1, p2):
    """Close each singleton under alternating saturation until stable."""
    blocks, seen = [], set()
    for u in range(p1.universe.size):
        if u in seen:
            continue
        mask = 1 << u
        while True:
            grown = p2.saturate(p1.saturate(mask))
            if grown == mask:
                break
            mask = grown
        members = p1.universe.members(mask)
        seen.update(members)
        blocks.append(members)
    return Partition(p1.universe, blocks)


def commute_by_functional_equality(p1, p2):
    """Compare both compositions on every subset of the universe."""
    return all(p1.saturate(p2.saturate(s)) == p2.saturate(p1.saturate(s))
               for s in p1.universe.subsets())


def bell(n):
    table = [1]
    for _ in range(n):
        row = [table[-1]]
        for v in table:
            row.append(row[-1] + v)
        table = row
    return table[0]


def rgs_partitions(size):
    labels = st.lists(st.integers(0, size - 1), min_size=size - 1,
                      max_size=size - 1)
    universe = Universe(size)

    def build(tail):
        out = [0]
        for v in tail:
            out.append(min(v, max(out) + 1))
        return Partition.from_assignment(universe, out)

    return labels.map(build)


class TestCanonicalForm:
    def test_blocks_sorted_by_minimum(self):
        p = P(U4, [3, 2], [1, 0])
        assert p.blocks == ((0, 1), (2, 3))
        assert p.block_of == (0, 0, 1, 1)

    def test_equality_and_hash(self):
        assert P(U4, [0, 1], [2, 3]) == P(U4, [1, 0], [3, 2])
        assert hash(P(U4, [0, 1], [2, 3])) == hash(P(U4, [3, 2], [0, 1]))
        assert P(U4, [0, 1], [2, 3]) != P(U4, [0, 1, 2, 3])

    def test_rejects_bad_blocks(self):
        with pytest.raises(ValueError):
            P(U3, [0, 1])
        with pytest.raises(ValueError):
            P(U3, [0, 1], [1, 2])
        with pytest.raises(ValueError):
            P(U3, [0, 1], [])

    def test_json_round_trip_canonicalizes(self):
        p = Partition.from_json(U4, [[2, 3], [0, 1]])
        assert p.to_json() == [[0, 1], [2, 3]]


class TestJoin:
    def test_crossing_pair_gives_singletons(self):
        got = P(U4, [0, 1], [2, 3]) | P(U4, [0, 2], [1, 3])
        assert got == Partition.finest(U4)

    def test_idempotent(self, part4):
        for p in part4:
            assert p | p == p

    def test_coarsest_is_neutral(self, part4):
        bottom = Partition.coarsest(U4)
        for p in part4:
            assert p | bottom == p

    def test_universe_mismatch(self):
        with pytest.raises(ia.UniverseMismatch):
            Partition.coarsest(U3) | Partition.coarsest(U4)


class TestMeet:
    def test_crossing_pair_collapses(self):
        p1, p2 = P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3])
        expected = meet_by_alternating_saturation(p1, p2)
        assert expected == Partition.coarsest(U4)
        assert p1 & p2 == expected

    def test_overlap_chains(self):
        p1, p2 = P(U4, [0, 1], [2], [3]), P(U4, [0], [1], [2, 3])
        expected = meet_by_alternating_saturation(p1, p2)
        assert expected == P(U4, [0, 1], [2, 3])
        assert p1 & p2 == expected

    def test_idempotent(self, part4):
        for p in part4:
            assert p & p == p

    def test_matches_saturation_closure_exhaustively(self, part4):
        for p1, p2 in itertools.product(part4, repeat=2):
            assert p1 & p2 == meet_by_alternating_saturation(p1, p2)


class TestRefines:
    def test_coarsest_below_everything(self, part4):
        bottom = Partition.coarsest(U4)
        for p in part4:
            assert refines(bottom, p)
            assert refines(p, p)

    def test_crossing_blocks_incomparable(self):
        assert not refines(P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3]))

    def test_is_the_join_order(self, part4):
        for p, q in itertools.product(part4, repeat=2):
            assert refines(p, q) == ((p | q) == q)


class TestLatticeLaws:
    def test_commutative_and_absorption(self, part4):
        for p, q in itertools.product(part4, repeat=2):
            assert p | q == q | p
            assert p & q == q & p
            assert p | (p & q) == p
            assert p & (p | q) == p

    def test_associative(self, part3):
        for p, q, r in itertools.product(part3, repeat=3):
            assert (p | q) | r == p | (q | r)
            assert (p & q) & r == p & (q & r)


class TestSaturation:
    def test_block_growth(self):
        p = P(U4, [0, 1], [2, 3])
        assert p.saturate(0b0001) == 0b0011

    def test_empty_set(self, part4):
        for p in part4:
            assert p.saturate(0) == 0

    def test_finest_is_identity(self):
        fine = Partition.finest(U4)
        for s in U4.subsets():
            assert fine.saturate(s) == s

    @pytest.mark.parametrize("size", [2, 3, 4, 5])
    def test_quantifier_laws_exhaustive(self, size):
        universe = Universe(size)
        for p in all_partitions(universe):
            for x in universe.subsets():
                sx = p.saturate(x)
                assert x & ~sx == 0
                assert p.saturate(sx) == sx
                for y in universe.subsets():
                    if x & ~y == 0:
                        assert sx & ~p.saturate(y) == 0
                    assert p.saturate(sx & y) == sx & p.saturate(y)


class TestCommute:
    def test_product_coordinates_commute(self):
        rows, cols = P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3])
        assert rows.commutes_with(cols)
        assert commute_by_functional_equality(rows, cols)

    def test_overlapping_pair_does_not(self):
        p1, p2 = P(U3, [0, 1], [2]), P(U3, [0], [1, 2])
        assert not p1.commutes_with(p2)
        assert p1.saturate(p2.saturate(1)) != p2.saturate(p1.saturate(1))

    def test_self_commutes(self, part4):
        for p in part4:
            assert p.commutes_with(p)

    def test_block_criterion_matches_functional_oracle(self, part4):
        for p1, p2 in itertools.product(part4, repeat=2):
            assert p1.commutes_with(p2) == commute_by_functional_equality(p1, p2)


class TestIndependence:
    def test_coordinates_of_product_independent(self):
        rows, cols = P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3])
        assert independent([rows, cols])

    def test_self_never_independent_with_two_blocks(self, part4):
        for p in part4:
            if len(p.blocks) >= 2:
                assert not independent([p, p])

    def test_coarsest_changes_nothing(self):
        rows, cols = P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3])
        bottom = Partition.coarsest(U4)
        assert independent([rows, cols, bottom])
        assert not independent([rows, rows, bottom])

    def test_needs_two_partitions(self):
        with pytest.raises(ValueError):
            independent([Partition.coarsest(U4)])


class TestConditionalIndependence:
    def test_conditioning_on_either_argument(self, part3):
        for p1, p2 in itertools.product(part3, repeat=2):
            assert cond_independent([p1, p2], p2)
            assert cond_independent([p1, p2], p1)

    def test_product_given_coarsest(self):
        rows, cols = P(U4, [0, 1], [2, 3]), P(U4, [0, 2], [1, 3])
        assert cond_independent([rows, cols], Partition.coarsest(U4))

    def test_overlapping_pair_dependent(self):
        p1, p2 = P(U3, [0, 1], [2]), P(U3, [0], [1, 2])
        assert not cond_independent([p1, p2], Partition.coarsest(U3))

    def test_empty_family_rejected(self):
        with pytest.raises(ValueError):
            cond_independent([], Partition.coarsest(U3))

    def test_single_partition_always_holds(self, part3):
        for p, given in itertools.product(part3, repeat=2):
            assert cond_independent([p], given)


class TestEnumeration:
    @pytest.mark.parametrize("size", [1, 2, 3, 4, 5, 6])
    def test_counts_match_bell_numbers(self, size):
        parts = list(all_partitions(Universe(size)))
        assert len(parts) == bell(size)
        assert len(set(parts)) == len(parts)

    def test_bound(self):
        with pytest.raises(ia.BoundExceeded):
            list(all_partitions(Universe(MAX_PARTITION_UNIVERSE + 1)))

    def test_subset_bound(self):
        with pytest.raises(ia.BoundExceeded):
            Universe(17).subsets()


class TestPartitionProperties:
    @settings(max_examples=120, deadline=None)
    @given(rgs_partitions(5), rgs_partitions(5), st.integers(0, 31))
    def test_saturation_properties(self, p1, p2, x):
        assert p1 & p2 == meet_by_alternating_saturation(p1, p2)
        sx = p1.saturate(x)
        assert x & ~sx == 0 and p1.saturate(sx) == sx

    @settings(max_examples=120, deadline=None)
    @given(rgs_partitions(5), rgs_partitions(5))
    def test_meet_and_join_bracket_both(self, p, q):
        assert refines(p & q, p) and refines(p & q, q)
        assert refines(p, p | q) and refines(q, p | q)
