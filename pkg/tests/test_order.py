import itertools

import pytest

import infalg as ia
from infalg.order import (FiniteLattice, FinitePoset, all_downsets, chain,
                          check_join_semilattice, diamond_m3, enumerate_ideals,
                          is_boolean, is_distributive, is_modular,
                          meet_irreducibles, meet_prime_elements,
                          pentagon_n5, powerset_lattice)

CORPUS = {
    "chain2": chain(2),
    "chain3": chain(3),
    "chain5": chain(5),
    "m3": diamond_m3(),
    "n5": pentagon_n5(),
    "b1": powerset_lattice(1),
    "b2": powerset_lattice(2),
    "b3": powerset_lattice(3),
}
DISTRIBUTIVE = ["chain2", "chain3", "chain5", "b1", "b2", "b3"]


def brute_downsets(poset):
    out = []
    for pick in itertools.product([0, 1], repeat=poset.size):
        s = frozenset(i for i in range(poset.size) if pick[i])
        if all(j in s for i in s for j in range(poset.size)
               if poset.leq[j][i]):
            out.append(s)
    return out


class TestPoset:
    def test_validation(self):
        with pytest.raises(ia.MalformedInstance):
            FinitePoset([[True, True], [True, True]])
        with pytest.raises(ia.MalformedInstance):
            FinitePoset([[False, False], [False, True]])
        with pytest.raises(ia.MalformedInstance):
            FinitePoset([[True, True], [True]])

    def test_from_pairs_closes_transitively(self):
        p = FinitePoset.from_pairs(["a", "b", "c"], [(0, 1), (1, 2)])
        assert p.leq[0][2]

    def test_cycle_rejected(self):
        with pytest.raises(ia.MalformedInstance):
            FinitePoset.from_pairs(["a", "b"], [(0, 1), (1, 0)])

    def test_join_semilattice_check(self):
        ok, w = check_join_semilattice(chain(3).poset)
        assert ok and w is None
        antichain = FinitePoset([[True, False], [False, True]])
        ok, w = check_join_semilattice(antichain)
        assert not ok and set(w) == {0, 1}
        ok, _ = check_join_semilattice(powerset_lattice(2).poset)
        assert ok

    def test_downsets_match_brute_force(self):
        for lat in (chain(4), diamond_m3(), pentagon_n5(), powerset_lattice(3)):
            assert sorted(all_downsets(lat.poset), key=sorted) == \
                sorted(brute_downsets(lat.poset), key=sorted)

    def test_upsets_are_complements_of_downsets(self):
        for lat in (diamond_m3(), powerset_lattice(2)):
            everything = frozenset(range(lat.size))
            ups = {everything - d for d in all_downsets(lat.poset)}
            assert set(lat.poset.all_upsets()) == ups

    def test_json_round_trip(self):
        p = diamond_m3().poset
        again = FinitePoset.from_json(p.to_json())
        assert again.leq == p.leq and again.names == p.names


class TestLatticeTables:
    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_tables_are_bounds(self, name):
        lat = CORPUS[name]
        for i in range(lat.size):
            for j in range(lat.size):
                up = lat.join[i][j]
                assert lat.leq(i, up) and lat.leq(j, up)
                for k in range(lat.size):
                    if lat.leq(i, k) and lat.leq(j, k):
                        assert lat.leq(up, k)
                lo = lat.meet[i][j]
                assert lat.leq(lo, i) and lat.leq(lo, j)
                for k in range(lat.size):
                    if lat.leq(k, i) and lat.leq(k, j):
                        assert lat.leq(k, lo)

    def test_non_lattice_rejected(self):
        antichain = FinitePoset([[True, False], [False, True]])
        with pytest.raises(ia.MalformedInstance):
            FiniteLattice.from_poset(antichain)


class TestStructurePredicates:
    def test_n5_not_modular_with_genuine_witness(self):
        lat = pentagon_n5()
        ok, w = is_modular(lat)
        assert not ok
        x, y, z = w
        assert lat.leq(z, x)
        assert lat.meet[x][lat.join[y][z]] != lat.join[lat.meet[x][y]][z]
        names = tuple(lat.names[i] for i in w)
        assert names == ("c", "b", "a")

    def test_modular_members(self):
        assert is_modular(diamond_m3())[0]
        assert is_modular(chain(5))[0]
        assert is_modular(powerset_lattice(3))[0]

    def test_distributive(self):
        assert not is_distributive(diamond_m3())[0]
        assert not is_distributive(pentagon_n5())[0]
        assert is_distributive(powerset_lattice(3))[0]

    def test_boolean(self):
        ok, comps = is_boolean(powerset_lattice(2))
        assert ok
        full = 3
        assert comps == tuple(full ^ m for m in range(4))
        assert not is_boolean(chain(3))[0]
        assert not is_boolean(diamond_m3())[0]

    def test_implication_chain(self):
        for name, lat in CORPUS.items():
            boolean, _ = is_boolean(lat)
            distributive, _ = is_distributive(lat)
            modular, _ = is_modular(lat)
            assert not boolean or distributive, name
            assert not distributive or modular, name


class TestMeetIrreducibles:
    def test_chain_keeps_all_but_top(self):
        lat = chain(3)
        assert meet_irreducibles(lat) == {0, 1}

    def test_boolean_square_keeps_the_atoms(self):
        lat = powerset_lattice(2)
        assert meet_irreducibles(lat) == {1, 2}

    def test_m3_keeps_the_middles(self):
        lat = diamond_m3()
        assert meet_irreducibles(lat) == {1, 2, 3}

    def test_matches_prime_elements_on_distributive(self):
        for name in DISTRIBUTIVE:
            lat = CORPUS[name]
            assert meet_irreducibles(lat) == meet_prime_elements(lat), name

    def test_differs_on_m3(self):
        lat = diamond_m3()
        assert meet_prime_elements(lat) == frozenset()

    @pytest.mark.parametrize("name", DISTRIBUTIVE)
    def test_separation_theorem(self, name):
        lat = CORPUS[name]
        irr = meet_irreducibles(lat)
        for phi in range(lat.size):
            for psi in range(lat.size):
                if not lat.leq(phi, psi):
                    assert any(lat.leq(psi, chi) and not lat.leq(phi, chi)
                               for chi in irr)

    @pytest.mark.parametrize("name", DISTRIBUTIVE)
    def test_order_generating(self, name):
        lat = CORPUS[name]
        irr = meet_irreducibles(lat)
        for psi in range(lat.size):
            if psi == lat.top:
                continue
            above = [chi for chi in irr if lat.leq(psi, chi)]
            inf = above[0] if above else lat.top
            for chi in above[1:]:
                inf = lat.meet[inf][chi]
            assert inf == psi


class TestIdeals:
    def test_boolean_square(self):
        ideals = enumerate_ideals(powerset_lattice(2))
        members = {i.members for i in ideals}
        assert members == {frozenset({0}), frozenset({0, 1}),
                           frozenset({0, 2}), frozenset({0, 1, 2, 3})}
        assert all(i.principal for i in ideals)
        maximal = {i.members for i in ideals if i.maximal}
        prime = {i.members for i in ideals if i.prime}
        assert maximal == prime == {frozenset({0, 1}), frozenset({0, 2})}

    def test_chain_proper_ideals_all_prime(self):
        ideals = enumerate_ideals(chain(3))
        for ideal in ideals:
            if ideal.proper:
                assert ideal.prime

    def test_every_ideal_principal_on_corpus(self):
        for name, lat in CORPUS.items():
            for ideal in enumerate_ideals(lat):
                assert ideal.principal, name
                assert ideal.members == lat.poset.downset(
                    ideal.principal_generator)

    def test_bound(self):
        with pytest.raises(ia.BoundExceeded):
            enumerate_ideals(powerset_lattice(5))
        assert enumerate_ideals(powerset_lattice(5), max_size=32)
