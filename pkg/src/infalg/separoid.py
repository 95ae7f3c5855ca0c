"""Ternary conditional-independence relations over finite join-semilattices.

A relation is extensional: an explicit set of (x, y, z) triples over a
verified join-semilattice. All axiom checks are finite scans that report the
lexicographically first violating tuple.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .errors import InfalgError, MalformedInstance
from .order import FiniteLattice, FinitePoset, join_table, meet_table
from .partition import Partition, Universe, all_partitions, cond_independent
from .report import Report, ReportBuilder


class CIRelation:
    """A set of conditional-independence triples x _|_ y | z."""

    __slots__ = ("order", "triples", "join", "meet")

    def __init__(self, order: FinitePoset, triples: Iterable):
        self.order = order
        jt, witness = join_table(order)
        if jt is None:
            raise MalformedInstance(
                f"domain order is not a join-semilattice, witness {witness}")
        self.join = jt
        mt, _ = meet_table(order)
        self.meet = mt
        seen = set()
        for t in triples:
            x, y, z = (int(v) for v in t)
            for v in (x, y, z):
                if not 0 <= v < order.size:
                    raise MalformedInstance(f"triple {t} out of range")
            seen.add((x, y, z))
        self.triples = frozenset(seen)

    def __contains__(self, triple) -> bool:
        return tuple(triple) in self.triples

    def __len__(self) -> int:
        return len(self.triples)

    def sorted_triples(self) -> list:
        return sorted(self.triples)

    def to_json(self) -> dict:
        return {"triples": [list(t) for t in self.sorted_triples()]}

    @classmethod
    def from_json(cls, order: FinitePoset, data: dict) -> "CIRelation":
        triples = []
        for t in data["triples"]:
            triples.append(tuple(order.index(v) if isinstance(v, str) else int(v)
                                 for v in t))
        return cls(order, triples)


def check_qseparoid(r: CIRelation) -> Report:
    """Axioms of a quasi-separoid: reflexivity against the conditioner,
    symmetry, shrinking the second argument, absorbing the conditioner."""
    rb = ReportBuilder("qseparoid")
    n = r.order.size
    leq = r.order.leq
    w = next(((x, y) for x in range(n) for y in range(n)
              if (x, y, y) not in r.triples), None)
    rb.add("c1", w is None, w)
    w = next((t for t in r.sorted_triples()
              if (t[1], t[0], t[2]) not in r.triples), None)
    rb.add("c2", w is None, w)
    w = next(((x, y, z, v) for x, y, z in r.sorted_triples()
              for v in range(n)
              if leq[v][y] and (x, v, z) not in r.triples), None)
    rb.add("c3", w is None, w)
    w = next((t for t in r.sorted_triples()
              if (t[0], r.join[t[1]][t[2]], t[2]) not in r.triples), None)
    rb.add("c4", w is None, w)
    return rb.build()


def check_separoid(r: CIRelation) -> Report:
    """The two extra separoid axioms on top of C1 to C4."""
    rb = ReportBuilder("separoid")
    n = r.order.size
    leq = r.order.leq
    w = next(((x, y, z, v) for x, y, z in r.sorted_triples()
              for v in range(n)
              if leq[v][y] and (x, y, r.join[z][v]) not in r.triples), None)
    rb.add("c5", w is None, w)
    w = next(((x, y, z, v) for x, y, z in r.sorted_triples()
              for v in range(n)
              if (x, v, r.join[y][z]) in r.triples
              and (x, r.join[y][v], z) not in r.triples), None)
    rb.add("c6", w is None, w)
    return rb.build()


def check_strong_separoid(r: CIRelation) -> Report:
    """Meet-stability of the conditioner (C7); not applicable without meets."""
    rb = ReportBuilder("strong_separoid")
    if r.meet is None:
        rb.skip("c7", detail="domain order is not a lattice")
        return rb.build()
    n = r.order.size
    leq = r.order.leq
    w = next(((x, y, z, v) for x, y, z in r.sorted_triples()
              if leq[z][y]
              for v in range(n)
              if leq[v][y] and (x, y, v) in r.triples
              and (x, y, r.meet[z][v]) not in r.triples), None)
    rb.add("c7", w is None, w)
    return rb.build()


def check_basic(r: CIRelation) -> Report:
    """Self-independence must force order: x _|_ x | y implies x <= y.

    On lattices the verdict is additionally checked against the equivalent
    formulation that every triple satisfies (x v z) /\\ (y v z) = z.
    """
    rb = ReportBuilder("basic")
    n = r.order.size
    leq = r.order.leq
    w = next(((x, y) for x in range(n) for y in range(n)
              if (x, x, y) in r.triples and not leq[x][y]), None)
    basic = w is None
    rb.add("self_independence_forces_order", basic, w)
    if r.meet is None:
        rb.skip("lattice_equivalence", detail="domain order is not a lattice")
    else:
        w2 = next((t for t in r.sorted_triples()
                   if r.meet[r.join[t[0]][t[2]]][r.join[t[1]][t[2]]] != t[2]),
                  None)
        rb.add("lattice_equivalence", basic == (w2 is None), w2 or w,
               detail="basic verdict must match the lattice criterion")
    return rb.build()


def lattice_relation(lat: FiniteLattice) -> CIRelation:
    """Triples with (x v z) /\\ (y v z) = z; always a quasi-separoid."""
    n = lat.size
    triples = [(x, y, z)
               for x in range(n) for y in range(n) for z in range(n)
               if lat.meet[lat.join[x][z]][lat.join[y][z]] == z]
    return CIRelation(lat.poset, triples)


def dawid_relation(lat: FiniteLattice) -> CIRelation:
    """Triples with x /\\ y <= z."""
    n = lat.size
    triples = [(x, y, z)
               for x in range(n) for y in range(n) for z in range(n)
               if lat.leq(lat.meet[x][y], z)]
    return CIRelation(lat.poset, triples)


def pullback_relation(d1: FinitePoset, f: Sequence[int],
                      r2: CIRelation) -> CIRelation:
    """Pull a relation back along a join-homomorphism of domain orders."""
    j1, witness = join_table(d1)
    if j1 is None:
        raise MalformedInstance(
            f"source order is not a join-semilattice, witness {witness}")
    f = tuple(int(v) for v in f)
    if len(f) != d1.size or any(not 0 <= v < r2.order.size for v in f):
        raise MalformedInstance("map does not send source into target")
    for i in range(d1.size):
        for j in range(d1.size):
            if f[j1[i][j]] != r2.join[f[i]][f[j]]:
                raise InfalgError(
                    f"map does not preserve joins, witness pair ({i},{j})")
    triples = [(x, y, z)
               for x in range(d1.size) for y in range(d1.size)
               for z in range(d1.size)
               if (f[x], f[y], f[z]) in r2.triples]
    return CIRelation(d1, triples)


def partition_lattice(universe: Universe, max_size: int = 5):
    """(lattice, partitions): the full partition lattice of a small universe."""
    parts = list(all_partitions(universe, max_size=max_size))
    lat = FiniteLattice.from_order_function(
        parts, lambda p, q: p.leq(q), names=[repr(p) for p in parts])
    return lat, parts


def partition_ci_relation(universe: Universe, max_size: int = 5):
    """(relation, lattice, partitions): conditional independence between all
    partitions of the universe, as an extensional relation."""
    lat, parts = partition_lattice(universe, max_size=max_size)
    triples = [(x, y, z)
               for x, p in enumerate(parts)
               for y, q in enumerate(parts)
               for z, c in enumerate(parts)
               if cond_independent([p, q], c)]
    return CIRelation(lat.poset, triples), lat, parts
