"""Constructors for the bundled concrete algebras and a seeded generator.

Every constructor returns a finite instance that passes the axiom checks by
construction. Infinite carriers are represented by explicit finite
truncations (a maximum string length, a fixed list of variables).
"""

from __future__ import annotations

import itertools
import random
import string as _string
from typing import Optional, Sequence

from .algebra import InfoAlgebra
from .errors import BoundExceeded, InfalgError
from .order import FiniteLattice, FinitePoset, is_distributive
from .partition import Partition, Universe

MAX_CARRIER = 512


def _family_poset(partitions: Sequence[Partition], names=None) -> FinitePoset:
    leq = [[p.leq(q) for q in partitions] for p in partitions]
    return FinitePoset(leq, names or [f"P{i}" for i in range(len(partitions))])


def _check_join_closed(partitions: Sequence[Partition]) -> None:
    for i, p in enumerate(partitions):
        for j, q in enumerate(partitions):
            if (p | q) not in partitions:
                raise InfalgError(
                    f"partition family is not join-closed, witness ({i},{j})")


def make_string_algebra(alphabet_size: int, max_len: int,
                        max_carrier: int = MAX_CARRIER) -> InfoAlgebra:
    """Strings up to a length bound, with prefix combination.

    Combination of comparable strings keeps the longer one; incomparable
    strings clash to the null element. Extraction to level n truncates to
    the first n symbols, so the top level acts as the identity.
    """
    if alphabet_size < 1 or max_len < 1:
        raise ValueError("need a nonempty alphabet and a positive length bound")
    if alphabet_size > len(_string.ascii_lowercase):
        raise ValueError("alphabet too large")
    letters = _string.ascii_lowercase[:alphabet_size]
    elems = [""]
    for n in range(1, max_len + 1):
        elems += ["".join(t) for t in itertools.product(letters, repeat=n)]
        if len(elems) > max_carrier:
            raise BoundExceeded(f"string carrier exceeds {max_carrier}")
    null = len(elems)
    names = elems + ["0"]
    m = len(names)
    idx = {s: i for i, s in enumerate(elems)}

    combine = [[0] * m for _ in range(m)]
    for i, r in enumerate(elems):
        for j, s in enumerate(elems):
            if s.startswith(r):
                combine[i][j] = j
            elif r.startswith(s):
                combine[i][j] = i
            else:
                combine[i][j] = null
    for i in range(m):
        combine[i][null] = null
        combine[null][i] = null

    levels = list(range(max_len + 1))
    domains = FinitePoset([[x <= y for y in levels] for x in levels],
                          [str(n) for n in levels])
    extract = []
    for n in levels:
        row = [idx[s[:n]] if len(s) > n else i for i, s in enumerate(elems)]
        row.append(null)
        extract.append(row)
    return InfoAlgebra(names, combine, idx[""], null, domains, extract)


def make_multivariate(frames: Sequence[int],
                      max_points: int = 6) -> InfoAlgebra:
    """The power-set algebra of a finite product of variable frames.

    Elements are the subsets of the product universe, combination is
    intersection, domains are the variable subsets and extraction is the
    cylinder over the chosen coordinates.
    """
    frames = [int(f) for f in frames]
    if not frames or any(f < 2 for f in frames):
        raise ValueError("need at least one variable, every frame of size >= 2")
    points = list(itertools.product(*[range(f) for f in frames]))
    if len(points) > max_points:
        raise BoundExceeded(
            f"product universe of {len(points)} points exceeds {max_points}")
    universe = Universe(len(points))
    labels = ["".join(map(str, p)) for p in points]
    nvars = len(frames)

    dom_masks = list(range(1 << nvars))
    dom_names = ["{" + ",".join(str(v) for v in range(nvars) if s >> v & 1) + "}"
                 for s in dom_masks]
    domains = FinitePoset([[(s & t) == s for t in dom_masks] for s in dom_masks],
                          dom_names)
    parts = []
    for s in dom_masks:
        proj = [tuple(p[v] for v in range(nvars) if s >> v & 1) for p in points]
        parts.append(Partition.from_assignment(universe, proj))

    m = 1 << len(points)
    names = ["{" + ",".join(labels[u] for u in universe.members(mask)) + "}"
             for mask in range(m)]
    combine = [[i & j for j in range(m)] for i in range(m)]
    extract = [[parts[s].saturate(mask) for mask in range(m)]
               for s in dom_masks]
    return InfoAlgebra(names, combine, m - 1, 0, domains, extract)


def make_set_algebra(universe: Universe, partitions: Sequence[Partition],
                     elements="all_saturated",
                     partition_names: Optional[Sequence[str]] = None
                     ) -> InfoAlgebra:
    """A set algebra over an explicit join-closed partition family.

    With ``elements="all_saturated"`` the carrier is every subset saturated
    for some family member; an explicit carrier must contain the universe
    and the empty set, be closed under intersection, and be closed under
    every family saturation. Violations are reported with a witness.
    """
    partitions = list(partitions)
    if not partitions:
        raise ValueError("need at least one partition")
    for p in partitions:
        if p.universe != universe:
            raise InfalgError("partition over a different universe")
    _check_join_closed(partitions)

    if isinstance(elements, str):
        if elements != "all_saturated":
            raise ValueError(f"unknown element family {elements!r}")
        masks = set()
        for p in partitions:
            if len(p.blocks) > 16:
                raise BoundExceeded("too many blocks to enumerate saturations")
            for pick in range(1 << len(p.blocks)):
                masks.add(sum(bm for k, bm in enumerate(p.block_masks)
                              if pick >> k & 1))
        masks = sorted(masks)
    else:
        masks = sorted({universe.mask(mem) if not isinstance(mem, int) else mem
                        for mem in elements})
        if universe.full_mask not in masks or 0 not in masks:
            raise InfalgError("carrier must contain the universe and the empty set")
        pos = set(masks)
        for i, mi in enumerate(masks):
            for j, mj in enumerate(masks):
                if mi & mj not in pos:
                    raise InfalgError(
                        f"carrier not closed under intersection, witness ({i},{j})")
            if not any(p.saturate(mi) == mi for p in partitions):
                raise InfalgError(
                    f"element {i} saturated for no family member")
            for k, p in enumerate(partitions):
                if p.saturate(mi) not in pos:
                    raise InfalgError(
                        f"carrier not closed under saturation, witness ({k},{i})")

    index = {mk: i for i, mk in enumerate(masks)}
    names = ["{" + ",".join(map(str, universe.members(mk))) + "}"
             for mk in masks]
    combine = [[index[mi & mj] for mj in masks] for mi in masks]
    extract = [[index[p.saturate(mk)] for mk in masks] for p in partitions]
    domains = _family_poset(partitions, partition_names)
    return InfoAlgebra(names, combine, index[universe.full_mask], index[0],
                       domains, extract)


def make_lattice_valued(universe: Universe, partitions: Sequence[Partition],
                        values: FiniteLattice,
                        partition_names: Optional[Sequence[str]] = None,
                        max_carrier: int = MAX_CARRIER) -> InfoAlgebra:
    """Maps from the universe into a distributive value lattice.

    The carrier holds every map constant on the blocks of some family
    partition. Combination is the pointwise value meet (so the constant-top
    map is the unit), and extraction takes the pointwise value join over the
    blocks of the chosen partition.
    """
    ok, w = is_distributive(values)
    if not ok:
        raise InfalgError(f"value lattice must be distributive, witness {w}")
    partitions = list(partitions)
    if not partitions:
        raise ValueError("need at least one partition")
    for p in partitions:
        if p.universe != universe:
            raise InfalgError("partition over a different universe")
    _check_join_closed(partitions)

    carrier = set()
    for p in partitions:
        if len(values.names) ** len(p.blocks) > max_carrier:
            raise BoundExceeded("value assignments exceed the carrier bound")
        for assign in itertools.product(range(values.size),
                                        repeat=len(p.blocks)):
            carrier.add(tuple(assign[p.block_of[u]]
                              for u in range(universe.size)))
            if len(carrier) > max_carrier:
                raise BoundExceeded(f"carrier exceeds {max_carrier}")
    maps = sorted(carrier)
    index = {mp: i for i, mp in enumerate(maps)}
    names = [",".join(values.names[v] for v in mp) for mp in maps]

    def meet_map(f, g):
        return tuple(values.meet[a][b] for a, b in zip(f, g))

    combine = []
    for f in maps:
        row = []
        for g in maps:
            h = meet_map(f, g)
            if h not in index:
                raise InfalgError("carrier not closed under combination")
            row.append(index[h])
        combine.append(row)

    extract = []
    for p in partitions:
        col = []
        for f in maps:
            out = []
            for u in range(universe.size):
                acc = values.bottom
                for v in universe.members(p.block_mask_of(u)):
                    acc = values.join[acc][f[v]]
                out.append(acc)
            col.append(index[tuple(out)])
        extract.append(col)

    unit = index[tuple([values.top] * universe.size)]
    null = index[tuple([values.bottom] * universe.size)]
    domains = _family_poset(partitions, partition_names)
    return InfoAlgebra(names, combine, unit, null, domains, extract)


def random_partition(rng: random.Random, universe: Universe) -> Partition:
    labels = [0]
    for _ in range(universe.size - 1):
        labels.append(rng.randint(0, max(labels) + 1))
    return Partition.from_assignment(universe, labels)


def random_instance(seed: int, max_universe: int = 5,
                    max_generators: int = 3) -> InfoAlgebra:
    """A seeded random saturated-set algebra; identical seeds give identical
    instances and every output satisfies the axioms by construction."""
    rng = random.Random(seed)
    universe = Universe(rng.randint(2, max_universe))
    gens = [random_partition(rng, universe)
            for _ in range(rng.randint(1, max_generators))]
    if rng.random() < 0.4:
        gens.append(Partition.coarsest(universe))
    family = set(gens)
    while True:
        extra = {p | q for p in family for q in family} - family
        if not extra:
            break
        family |= extra
    ordered = sorted(family, key=lambda p: (len(p.blocks), p.blocks))
    return make_set_algebra(universe, ordered)
