"""Generating sets, atoms, set-algebra embeddings and induced independence.

Every construction here returns a report in which each required law was
checked exhaustively; a verdict of "embedding" means all of them passed.
Subsets of the embedding universe are integer bitmasks over point positions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .algebra import InfoAlgebra, _bits, is_commutative, verify_axioms
from .errors import BoundExceeded, PreconditionFailed
from .order import enumerate_ideals, is_boolean, is_distributive, meet_irreducibles
from .partition import Partition, Universe, cond_independent
from .report import Report, ReportBuilder
from .separoid import CIRelation

MAX_ATOM_SUBSETS = 16

QUANTIFIER_MEET_FAILURE = "quantifier does not distribute over meet"
NOT_DISTRIBUTIVE = "carrier lattice is not distributive"
NOT_BOOLEAN = "carrier lattice is not Boolean"


@dataclass(frozen=True)
class GeneratingSet:
    """A candidate set of carrier elements, with its per-domain partitions.

    ``partitions[x]`` groups member positions whose extractions to domain x
    agree; member position k stands for carrier element ``members[k]``.
    """

    kind: str
    members: tuple
    partitions: tuple

    @property
    def universe(self) -> Universe:
        return Universe(len(self.members))


def generating_set(a: InfoAlgebra, members: Sequence[int],
                   kind: str = "custom") -> GeneratingSet:
    members = tuple(sorted(set(int(i) for i in members)))
    if a.null in members:
        raise ValueError("generating set must not contain the null element")
    if not members:
        raise ValueError("generating set is empty")
    universe = Universe(len(members))
    parts = tuple(
        Partition.from_assignment(universe, [a.extract[x][i] for i in members])
        for x in range(a.domains.size))
    return GeneratingSet(kind, members, parts)


def full_generating_set(a: InfoAlgebra) -> GeneratingSet:
    return generating_set(a, [i for i in range(a.size) if i != a.null], "full")


def _upset_mask(a: InfoAlgebra, psi: int, members) -> int:
    mask = 0
    for k, i in enumerate(members):
        if a.leq(psi, i):
            mask |= 1 << k
    return mask


def is_order_generating(a: InfoAlgebra, members: Sequence[int]):
    """(verdict, witness): every non-null element must be the infimum of the
    members above it. Cross-checked against the separation criterion, which
    must agree."""
    members = tuple(members)
    if a.null in members:
        raise ValueError("generating set must not contain the null element")
    inf_witness = None
    for psi in range(a.size):
        if psi == a.null:
            continue
        above = [i for i in members if a.leq(psi, i)]
        if a.inf_of(above) != psi:
            inf_witness = (psi,)
            break
    sep_witness = None
    for phi in range(a.size):
        for psi in range(a.size):
            if a.leq(phi, psi):
                continue
            if not any(a.leq(psi, chi) and not a.leq(phi, chi)
                       for chi in members):
                sep_witness = (phi, psi)
                break
        if sep_witness:
            break
    if (inf_witness is None) != (sep_witness is None):
        raise RuntimeError(
            "infimum and separation criteria disagree: "
            f"{inf_witness} vs {sep_witness}")
    return inf_witness is None, inf_witness or sep_witness


def is_strongly_order_generating(a: InfoAlgebra, members: Sequence[int]):
    """(verdict, witness) for the extension property along extraction fibers:
    whenever a member dominates an extraction, some member with the same
    extraction dominates the whole element."""
    members = tuple(members)
    ok, w = is_order_generating(a, members)
    if not ok:
        raise PreconditionFailed("set is not order-generating", w)
    E = a.extract
    for alpha in members:
        for x in range(a.domains.size):
            target = E[x][alpha]
            for psi in range(a.size):
                if not a.leq(E[x][psi], target):
                    continue
                if not any(E[x][g] == target and a.leq(psi, g)
                           for g in members):
                    return False, (alpha, psi, x)
    return True, None


@dataclass(frozen=True)
class EmbeddingReport:
    """The maps of a set-algebra embedding plus per-law verdicts.

    ``f[i]`` is the bitmask of universe points assigned to carrier element i;
    ``g[x]`` is the partition of the universe assigned to domain x.
    """

    kind: str
    point_names: tuple
    f: tuple
    g: tuple
    report: Report

    @property
    def verdict(self) -> bool:
        return self.report.passed

    def f_members(self, i: int) -> tuple:
        return tuple(_bits(self.f[i]))

    def to_json(self, algebra: Optional[InfoAlgebra] = None) -> dict:
        out = {
            "kind": self.kind,
            "universe": list(self.point_names),
            "f": [sorted(_bits(m)) for m in self.f],
            "g": [p.to_json() for p in self.g],
            "embedding": self.verdict,
            "checks": [c.to_json() for c in self.report.checks],
        }
        if algebra is not None:
            out["elements"] = list(algebra.names)
            out["domains"] = list(algebra.domains.names)
        return out


def _check_set_algebra_maps(rb: ReportBuilder, a: InfoAlgebra, f,
                            partitions: Sequence[Partition], full: int):
    """The homomorphism laws shared by every embedding construction."""
    m, C, E = a.size, a.combine, a.extract
    w = None
    seen = {}
    for i in range(m):
        if f[i] in seen:
            w = (seen[f[i]], i)
            break
        seen[f[i]] = i
    rb.add("f_injective", w is None, w)
    w = next(((i, j) for i in range(m) for j in range(m)
              if f[C[i][j]] != f[i] & f[j]), None)
    rb.add("f_preserves_combination", w is None, w)
    rb.add("f_unit_to_universe", f[a.unit] == full)
    rb.add("f_null_to_empty", f[a.null] == 0)

    dr = range(a.domains.size)
    w = next(((x, y) for x in dr for y in dr
              if x < y and partitions[x] == partitions[y]), None)
    rb.add("g_injective", w is None, w)
    dj = a.domain_join
    w = None
    for x in dr:
        for y in dr:
            pxy = partitions[dj[x][y]]
            # the join of the image family is its least upper bound there,
            # which may be strictly finer than the ambient partition join
            if not (partitions[x].leq(pxy) and partitions[y].leq(pxy)):
                w = (x, y)
                break
            for z in dr:
                if partitions[x].leq(partitions[z]) \
                        and partitions[y].leq(partitions[z]) \
                        and not pxy.leq(partitions[z]):
                    w = (x, y, z)
                    break
            if w:
                break
        if w:
            break
    rb.add("g_join_homomorphism", w is None, w)
    dleq = a.domains.leq
    w = next(((x, y) for x in dr for y in dr
              if dleq[x][y] != partitions[x].leq(partitions[y])), None)
    rb.add("g_order_embedding", w is None, w,
           detail="domain order must match partition refinement exactly")
    w = next(((x, i) for x in dr for i in range(m)
              if f[E[x][i]] != partitions[x].saturate(f[i])), None)
    rb.add("extraction_compatibility", w is None, w)


def build_embedding(a: InfoAlgebra, gset: GeneratingSet) -> EmbeddingReport:
    """Embed the algebra into the set algebra over a strongly
    order-generating set: elements map to the members above them, domains to
    the partitions of agreeing extractions."""
    ok, w = is_strongly_order_generating(a, gset.members)
    if not ok:
        raise PreconditionFailed("set is not strongly order-generating", w)
    images = {}
    for x in range(a.domains.size):
        key = a.extract[x]
        if key in images:
            raise PreconditionFailed(
                "two domains share an extraction image", (images[key], x))
        images[key] = x

    rb = ReportBuilder(f"embedding:{gset.kind}")
    f = tuple(_upset_mask(a, i, gset.members) for i in range(a.size))
    full = (1 << len(gset.members)) - 1
    _check_set_algebra_maps(rb, a, f, gset.partitions, full)
    return EmbeddingReport(gset.kind, tuple(a.names[i] for i in gset.members),
                           f, gset.partitions, rb.build())


# atoms

@dataclass(frozen=True)
class AtomSet:
    """Atoms of the carrier and the relative atoms of every domain."""

    atoms: tuple
    relative: tuple
    classification: str


def atoms_above(a: InfoAlgebra, atomset: AtomSet, psi: int) -> tuple:
    return tuple(al for al in atomset.atoms if a.leq(psi, al))


def relative_atoms_above(a: InfoAlgebra, atomset: AtomSet, x: int,
                         psi: int) -> tuple:
    e = a.extract[x][psi]
    return tuple(al for al in atomset.relative[x] if a.leq(e, al))


def compute_atoms(a: InfoAlgebra,
                  max_atom_subsets: int = MAX_ATOM_SUBSETS) -> AtomSet:
    """Atoms, relative atoms and the atomicity classification.

    Atoms are the maximal non-null elements; relative atoms of a domain are
    the atoms of its image subalgebra. The elementary atom facts (two
    distinct atoms combine to the null, any element is either below an atom
    or contradicts it) are asserted on the way; they can only fail on an
    instance that does not satisfy the axioms.
    """
    top_pair = lambda i: (1 << i) | (1 << a.null)
    atoms = tuple(i for i in range(a.size)
                  if i != a.null and a.up[i] == top_pair(i))
    C = a.combine
    for al in atoms:
        for be in atoms:
            if al != be and C[al][be] != a.null:
                raise RuntimeError(f"distinct atoms {al},{be} do not clash")
        for psi in range(a.size):
            if C[al][psi] not in (a.null, al):
                raise RuntimeError(f"atom {al} not maximal against {psi}")

    relative = []
    for x in range(a.domains.size):
        img = sorted(set(a.extract[x]))
        rel = tuple(i for i in img if i != a.null
                    and all(j in (i, a.null) for j in img if a.leq(i, j)))
        relative.append(rel)

    nonnull = [i for i in range(a.size) if i != a.null]
    atomic = all(any(a.leq(psi, al) for al in atoms) for psi in nonnull)
    classification = "not_atomic"
    if atomic:
        classification = "atomic"
        if all(a.inf_of(al for al in atoms if a.leq(psi, al)) == psi
               for psi in nonnull):
            classification = "atomistic"
            if len(atoms) > max_atom_subsets:
                raise BoundExceeded(
                    f"2^{len(atoms)} atom subsets exceed bound "
                    f"2^{max_atom_subsets}")
            if all(a.inf_of(al for k, al in enumerate(atoms) if s >> k & 1)
                   is not None
                   for s in range(1 << len(atoms))):
                classification = "completely_atomistic"
    return AtomSet(atoms, tuple(relative), classification)


def relative_atom_lemma_check(a: InfoAlgebra,
                              atomset: Optional[AtomSet] = None) -> Report:
    """Interplay of atoms and relative atoms in an atomic algebra:
    projections, liftings and conditional extensions, all witnessed."""
    atomset = atomset or compute_atoms(a)
    if atomset.classification == "not_atomic":
        raise PreconditionFailed("algebra is not atomic")
    rb = ReportBuilder("relative_atoms")
    E = a.extract
    dr = range(a.domains.size)
    dleq = a.domains.leq
    rel = atomset.relative

    w = next(((al, x) for al in atomset.atoms for x in dr
              if E[x][al] not in rel[x]), None)
    rb.add("atom_projects_to_relative_atom", w is None, w)
    w = next(((al, x) for al in atomset.atoms for x in dr
              if E[x][al] == al and al not in rel[x]), None)
    rb.add("supported_atom_is_relative_atom", w is None, w)
    w = next(((x, ap) for x in dr for ap in rel[x]
              if not any(E[x][al] == ap for al in atomset.atoms)), None)
    rb.add("relative_atom_lifts_to_atom", w is None, w)
    w = next(((x, y, ap) for x in dr for y in dr if dleq[x][y]
              for ap in rel[x]
              if not any(E[x][be] == ap for be in rel[y])), None)
    rb.add("relative_atom_extends_to_finer_domain", w is None, w)
    w = next(((x, y, ap, psi) for x in dr for y in dr if dleq[x][y]
              for ap in rel[x]
              for psi in range(a.size)
              if E[y][psi] == psi and a.leq(E[x][psi], ap)
              and not any(E[x][be] == ap and a.leq(psi, be)
                          for be in rel[y])), None)
    rb.add("conditional_extension", w is None, w)
    return rb.build()


def classify_locally_atomic(a: InfoAlgebra,
                            atomset: Optional[AtomSet] = None,
                            max_atom_subsets: int = MAX_ATOM_SUBSETS) -> dict:
    """Per-domain atomicity flags based on relative-atom fibers."""
    atomset = atomset or compute_atoms(a)
    E = a.extract
    rel = atomset.relative
    nonnull = [i for i in range(a.size) if i != a.null]
    flags = {"locally_atomic": True, "locally_atomistic": True,
             "locally_completely_atomistic": True}
    for x in range(a.domains.size):
        for psi in nonnull:
            fiber = [al for al in rel[x] if a.leq(E[x][psi], al)]
            if not fiber:
                flags["locally_atomic"] = False
            if a.inf_of(fiber) != E[x][psi]:
                flags["locally_atomistic"] = False
    if not flags["locally_atomistic"]:
        flags["locally_completely_atomistic"] = False
        return flags
    for x in range(a.domains.size):
        if len(rel[x]) > max_atom_subsets:
            raise BoundExceeded(
                f"2^{len(rel[x])} relative atom subsets exceed bound")
        for s in range(1 << len(rel[x])):
            inf = a.inf_of(al for k, al in enumerate(rel[x]) if s >> k & 1)
            if inf is None or E[x][inf] != inf:
                flags["locally_completely_atomistic"] = False
                break
        if not flags["locally_completely_atomistic"]:
            break
    return flags


# tuple systems

@dataclass(frozen=True)
class TupleSystem:
    """Per-domain generating sets whose consistent maps form a universe.

    ``maps[k]`` assigns to every domain index an element of its set, with
    projections agreeing along the domain order.
    """

    sets: tuple
    maps: tuple
    partitions: tuple

    @property
    def universe(self) -> Universe:
        return Universe(len(self.maps))


def build_tuple_system(a: InfoAlgebra, sets: Sequence[Sequence[int]]):
    """(TupleSystem, EmbeddingReport) for a family of locally
    order-generating sets.

    The five structural properties (closure of projections, their
    composition, identity on the own domain, extension to finer domains and
    conditional extension under domination) are verified first and raise on
    failure; the homomorphism laws of the induced map are then checked
    exhaustively.
    """
    E = a.extract
    dr = range(a.domains.size)
    dleq = a.domains.leq
    xs = tuple(tuple(sorted(set(int(i) for i in s))) for s in sets)
    if len(xs) != a.domains.size:
        raise ValueError("need one element set per domain")
    if any(a.null in s for s in xs):
        raise ValueError("tuple-system sets must not contain the null element")

    for x in dr:
        for psi in range(a.size):
            e = E[x][psi]
            if a.inf_of(t for t in xs[x] if a.leq(e, t)) != e:
                raise PreconditionFailed(
                    "set is not locally order-generating", (x, psi))

    def violation():
        for y in dr:
            for t in xs[y]:
                for x in dr:
                    if dleq[x][y] and E[x][t] not in xs[x]:
                        return ("projection_stays_in_family", (y, t, x))
        for y in dr:
            for t in xs[y]:
                for x in dr:
                    for x2 in dr:
                        if dleq[x][x2] and dleq[x2][y] \
                                and E[x][E[x2][t]] != E[x][t]:
                            return ("projection_composition", (y, t, x, x2))
        for x in dr:
            for t in xs[x]:
                if E[x][t] != t:
                    return ("identity_projection", (x, t))
        for x in dr:
            for y in dr:
                if not dleq[x][y]:
                    continue
                for t in xs[x]:
                    if not any(E[x][s] == t for s in xs[y]):
                        return ("extension_exists", (x, y, t))
        for x in dr:
            for y in dr:
                if not dleq[x][y]:
                    continue
                for t in xs[x]:
                    for psi in range(a.size):
                        if E[y][psi] != psi or not a.leq(E[x][psi], t):
                            continue
                        if not any(E[x][s] == t and a.leq(psi, s)
                                   for s in xs[y]):
                            return ("conditional_extension", (x, y, t, psi))
        return None

    v = violation()
    if v is not None:
        raise PreconditionFailed(f"tuple-system property {v[0]} fails", v[1])

    order = a.domains.linear_extension()
    maps: list[tuple] = []

    def assign(k: int, acc: dict):
        if k == len(order):
            maps.append(tuple(acc[x] for x in dr))
            return
        x = order[k]
        for cand in xs[x]:
            ok = True
            for y in list(acc):
                if dleq[y][x] and acc[y] != E[y][cand]:
                    ok = False
                    break
                if dleq[x][y] and cand != E[x][acc[y]]:
                    ok = False
                    break
            if ok:
                acc[x] = cand
                assign(k + 1, acc)
                del acc[x]

    assign(0, {})
    rb = ReportBuilder("embedding:tuple-system")
    rb.add("consistent_maps_exist", bool(maps))
    if not maps:
        return (TupleSystem(xs, (), ()),
                EmbeddingReport("tuple-system", (), (), (), rb.build()))

    universe = Universe(len(maps))
    partitions = tuple(
        Partition.from_assignment(universe, [mp[x] for mp in maps])
        for x in dr)
    f = []
    for psi in range(a.size):
        targets = [E[x][psi] for x in dr]
        mask = 0
        for k, mp in enumerate(maps):
            if all(a.leq(targets[x], mp[x]) for x in dr):
                mask |= 1 << k
        f.append(mask)
    f = tuple(f)
    _check_set_algebra_maps(rb, a, f, partitions, universe.full_mask)
    names = tuple("(" + ",".join(a.names[e] for e in mp) + ")" for mp in maps)
    system = TupleSystem(xs, tuple(maps), partitions)
    return system, EmbeddingReport("tuple-system", names, f, partitions,
                                   rb.build())


# Boolean and distributive carriers

def boolean_checks(a: InfoAlgebra) -> Report:
    """Complement laws, their interplay with extraction, and the dual
    algebra obtained by complementing everything."""
    lat = a.carrier_lattice()
    ok, comp = is_boolean(lat)
    if not ok:
        raise PreconditionFailed(NOT_BOOLEAN)
    rb = ReportBuilder("boolean")
    m, C, E, M = a.size, a.combine, a.extract, lat.meet
    rng = range(m)
    dr = range(a.domains.size)

    w = next(((i, j) for i in rng for j in rng
              if a.leq(i, j) != a.leq(comp[j], comp[i])), None)
    rb.add("complement_reverses_order", w is None, w)
    w = next(((i, j) for i in rng for j in rng
              if (C[i][comp[j]] == a.null) != a.leq(j, i)), None)
    rb.add("clash_with_complement_means_containment", w is None, w)
    w = next(((x, i, j) for x in dr for i in rng for j in rng
              if E[x][M[i][j]] != M[E[x][i]][E[x][j]]), None)
    rb.add("extraction_distributes_over_meet", w is None, w)
    w = next(((x, i) for x in dr for i in rng
              if M[i][E[x][i]] != E[x][i]), None)
    rb.add("extraction_below_element", w is None, w)
    w = next(((x, i) for x in dr for i in rng
              if (E[x][i] == i) != (E[x][comp[i]] == comp[i])), None)
    rb.add("support_closed_under_complement", w is None, w)
    w = next(((x, i, j) for x in dr for i in rng for j in rng
              if E[x][i] == i and E[x][j] == j
              and E[x][M[i][j]] != M[i][j]), None)
    rb.add("support_closed_under_meet", w is None, w)

    w = next(((i,) for i in rng if comp[comp[i]] != i), None)
    rb.add("complement_is_involution", w is None, w)
    dual = InfoAlgebra(
        a.names,
        [[comp[C[comp[i]][comp[j]]] for j in rng] for i in rng],
        a.null, a.unit, a.domains,
        [[comp[E[x][comp[i]]] for i in rng] for x in dr],
        require_e4=a.require_e4)
    dual_rep = verify_axioms(dual)
    first = dual_rep.failures()[0].name if not dual_rep.passed else None
    rb.add("dual_algebra_satisfies_axioms", dual_rep.passed, first)
    return rb.build()


def finite_boolean_representation(a: InfoAlgebra,
                                  max_ideals: int = 20) -> EmbeddingReport:
    """Represent a Boolean carrier on its atoms: the atom map must be a
    bijection preserving both the algebra and the Boolean structure, and the
    ideal-theoretic picture (principal, maximal, prime) must match."""
    lat = a.carrier_lattice()
    ok, comp = is_boolean(lat)
    if not ok:
        raise PreconditionFailed(NOT_BOOLEAN)
    atomset = compute_atoms(a)
    gset = generating_set(a, atomset.atoms, "atoms")
    rb = ReportBuilder("embedding:boolean-atoms")
    rb.add("completely_atomistic",
           atomset.classification == "completely_atomistic",
           atomset.classification)
    f = tuple(_upset_mask(a, i, gset.members) for i in range(a.size))
    full = (1 << len(gset.members)) - 1
    _check_set_algebra_maps(rb, a, f, gset.partitions, full)
    rb.add("f_onto_powerset", len(set(f)) == 1 << len(atomset.atoms))

    m, M = a.size, lat.meet
    rng = range(m)
    w = next(((i, j) for i in rng for j in rng
              if f[M[i][j]] != f[i] | f[j]), None)
    rb.add("meet_to_union", w is None, w)
    w = next(((i,) for i in rng if f[comp[i]] != full & ~f[i]), None)
    rb.add("complement_to_complement", w is None, w)

    ideals = enumerate_ideals(lat, max_size=max_ideals)
    rb.add("all_ideals_principal", all(i.principal for i in ideals))
    maximal = {i.members for i in ideals if i.maximal}
    atom_downsets = {frozenset(_bits(a.down[al])) for al in atomset.atoms}
    rb.add("maximal_ideals_are_atom_downsets", maximal == atom_downsets)
    prime = {i.members for i in ideals if i.prime}
    rb.add("prime_equals_maximal", prime == maximal)
    rb.add("maximal_ideal_count_equals_atom_count",
           len(maximal) == len(atomset.atoms))
    all_mask = (1 << m) - 1
    w = None
    for psi in rng:
        inter = all_mask
        for al in atoms_above(a, atomset, psi):
            inter &= a.down[al]
        if inter != a.down[psi]:
            w = (psi,)
            break
    rb.add("downset_is_intersection_of_atom_downsets", w is None, w)
    return EmbeddingReport("boolean-atoms",
                           tuple(a.names[i] for i in gset.members),
                           f, gset.partitions, rb.build())


def distributive_precondition(a: InfoAlgebra):
    """(ok, reason, witness) for the distributive-lattice-algebra contract:
    a distributive carrier whose quantifiers distribute over meets."""
    lat = a.carrier_lattice()
    ok, w = is_distributive(lat)
    if not ok:
        return False, NOT_DISTRIBUTIVE, w
    M, E = lat.meet, a.extract
    w = next(((x, i, j)
              for x in range(a.domains.size)
              for i in range(a.size) for j in range(a.size)
              if E[x][M[i][j]] != M[E[x][i]][E[x][j]]), None)
    if w is not None:
        return False, QUANTIFIER_MEET_FAILURE, w
    return True, None, None


def finite_distributive_representation(a: InfoAlgebra) -> EmbeddingReport:
    """Represent a distributive carrier on its meet-irreducible elements.

    The two extension lemmas making the irreducibles strongly
    order-generating are witnessed constructively for every applicable pair,
    and the image is checked to be exactly the upsets of the irreducible
    order, mapped into themselves by every saturation operator.
    """
    ok, reason, w = distributive_precondition(a)
    if not ok:
        raise PreconditionFailed(reason, w)
    lat = a.carrier_lattice()
    irr = sorted(meet_irreducibles(lat))
    gset = generating_set(a, irr, "meet_irreducibles")
    E = a.extract
    dr = range(a.domains.size)
    rb = ReportBuilder("embedding:meet-irreducibles")

    w = next(((eta, chi, x) for eta in irr for chi in irr for x in dr
              if a.leq(E[x][eta], E[x][chi])
              and not any(E[x][lam] == E[x][chi] and a.leq(eta, lam)
                          for lam in irr)), None)
    rb.add("irreducible_extension_lemma", w is None, w)
    w = next(((phi, chi, x) for phi in range(a.size) for chi in irr
              for x in dr
              if a.leq(E[x][phi], E[x][chi])
              and not any(E[x][lam] == E[x][chi] and a.leq(phi, lam)
                          for lam in irr)), None)
    rb.add("element_extension_lemma", w is None, w)
    strong, w = is_strongly_order_generating(a, irr)
    rb.add("strongly_order_generating", strong, w)

    f = tuple(_upset_mask(a, i, irr) for i in range(a.size))
    full = (1 << len(irr)) - 1
    _check_set_algebra_maps(rb, a, f, gset.partitions, full)
    M = lat.meet
    w = next(((i, j) for i in range(a.size) for j in range(a.size)
              if f[M[i][j]] != f[i] | f[j]), None)
    rb.add("meet_to_union", w is None, w)

    sub = lat.poset.restrict(irr)
    upsets = {sum(1 << k for k in s) for s in sub.all_upsets()}
    rb.add("image_is_all_upsets", set(f) == upsets,
           detail="the embedded carrier must be the upsets of the "
                  "irreducible order")
    w = None
    for x in dr:
        for s in sorted(upsets):
            sat = gset.partitions[x].saturate(s)
            if sat not in upsets:
                w = (x, sorted(_bits(s)))
                break
        if w:
            break
    rb.add("saturation_preserves_upsets", w is None, w)
    return EmbeddingReport("meet-irreducibles",
                           tuple(a.names[i] for i in irr),
                           f, gset.partitions, rb.build())


def finite_prime_ideal_check(a: InfoAlgebra, max_ideals: int = 20) -> Report:
    """Prime-ideal representation facts for a distributive carrier.

    Prime ideals play the universe; extraction on an ideal keeps its
    supported members, and the induced saturation must match extraction on
    the carrier side. The two extension lemmas for prime ideals are
    witnessed for every applicable input.
    """
    ok, reason, w = distributive_precondition(a)
    if not ok:
        raise PreconditionFailed(reason, w)
    lat = a.carrier_lattice()
    rb = ReportBuilder("prime_ideals")
    primes = [i.members for i in enumerate_ideals(lat, max_size=max_ideals)
              if i.prime]
    primes.sort(key=sorted)
    rb.add("prime_ideals_exist", bool(primes), detail=f"{len(primes)} found")
    images = [frozenset(a.extract[x]) for x in range(a.domains.size)]

    def eps(x, prime):
        return prime & images[x]

    dr = range(a.domains.size)
    w = next(((x, p, q) for x in dr
              for p, pm in enumerate(primes) for q, qm in enumerate(primes)
              if eps(x, qm) <= eps(x, pm)
              and not any(eps(x, rm) == eps(x, pm) and qm <= rm
                          for rm in primes)), None)
    rb.add("prime_extension_lemma", w is None, w)
    w = next(((x, p, phi) for x in dr
              for p, pm in enumerate(primes)
              for phi in range(a.size) if a.extract[x][phi] in pm
              and not any(eps(x, rm) == eps(x, pm) and phi in rm
                          for rm in primes)), None)
    rb.add("prime_element_extension_lemma", w is None, w)

    x_of = [frozenset(k for k, pm in enumerate(primes) if psi in pm)
            for psi in range(a.size)]
    w = None
    for x in dr:
        fibers = [eps(x, pm) for pm in primes]
        for phi in range(a.size):
            sat = frozenset(k for k in range(len(primes))
                            if any(fibers[k] == fibers[l]
                                   for l in x_of[phi]))
            if x_of[a.extract[x][phi]] != sat:
                w = (x, phi)
                break
        if w:
            break
    rb.add("extraction_matches_saturation", w is None, w)
    w = next(((i, j) for i in range(a.size) for j in range(a.size)
              if x_of[a.combine[i][j]] != x_of[i] & x_of[j]), None)
    rb.add("combination_to_intersection", w is None, w)
    rb.add("null_to_empty", x_of[a.null] == frozenset())
    rb.add("unit_to_all", x_of[a.unit] == frozenset(range(len(primes))))

    boolean, _ = is_boolean(lat)
    if boolean:
        maximal = {i.members for i in enumerate_ideals(lat, max_ideals)
                   if i.maximal}
        rb.add("prime_equals_maximal_on_boolean_carrier",
               set(primes) == maximal)
    else:
        rb.skip("prime_equals_maximal_on_boolean_carrier",
                detail="carrier is not Boolean")
    return rb.build()


# induced conditional independence

def induced_ci(a: InfoAlgebra, gset: GeneratingSet) -> CIRelation:
    """The independence relation pulled back from the partitions of a
    generating set: a triple holds when the partitions of its domains are
    conditionally independent."""
    dr = range(a.domains.size)
    parts = gset.partitions
    triples = [(x, y, z) for x in dr for y in dr for z in dr
               if cond_independent([parts[x], parts[y]], parts[z])]
    return CIRelation(a.domains, triples)


def verify_comb_extr_properties(a: InfoAlgebra, r: CIRelation) -> Report:
    """For every triple of the relation: combining over the conditioner
    factorizes, and extraction to one side may route through the
    conditioner."""
    rb = ReportBuilder("combination_extraction")
    C, E = a.combine, a.extract
    rng = range(a.size)
    w = None
    for x, y, z in r.sorted_triples():
        for phi in rng:
            if E[x][phi] != phi:
                continue
            for psi in rng:
                if E[y][psi] != psi:
                    continue
                if E[z][C[phi][psi]] != C[E[z][phi]][E[z][psi]]:
                    w = (x, y, z, phi, psi)
                    break
            if w:
                break
        if w:
            break
    rb.add("combination_property", w is None, w)
    w = next(((x, y, z, phi) for x, y, z in r.sorted_triples()
              for phi in rng
              if E[x][phi] == phi and E[y][phi] != E[y][E[z][phi]]), None)
    rb.add("extraction_property", w is None, w)
    return rb.build()


def ci_uniqueness_check(a: InfoAlgebra, induced: dict,
                        external: Sequence[CIRelation] = ()) -> Report:
    """Induced relations must agree regardless of the generating set, and
    any relation with the quasi-separoid axioms plus both computation
    properties must sit inside the one induced by the full set."""
    from .separoid import check_qseparoid

    rb = ReportBuilder("ci_uniqueness")
    reference = induced.get("full")
    if reference is None:
        reference = induced_ci(a, full_generating_set(a))
    for name in sorted(induced):
        rel = induced[name]
        rb.add(f"identical_to_full[{name}]",
               rel.triples == reference.triples,
               sorted(rel.triples ^ reference.triples)[:1] or None)
    for k, rel in enumerate(external):
        qualifies = (check_qseparoid(rel).passed
                     and verify_comb_extr_properties(a, rel).passed)
        if not qualifies:
            rb.skip(f"contained_in_full[{k}]",
                    detail="relation lacks the axioms or the properties")
            continue
        extra = sorted(rel.triples - reference.triples)
        rb.add(f"contained_in_full[{k}]", not extra, extra[:1] or None)
    return rb.build()


def element_level_ci_check(a: InfoAlgebra,
                           gen: Union[GeneratingSet, TupleSystem],
                           r: CIRelation) -> Report:
    """Concrete gluing behind every independence triple: members agreeing on
    the conditioner extend to a common member over both sides.

    For commutative algebras the meet-conditioned variant is checked as
    well; otherwise it is reported as not applicable.
    """
    rb = ReportBuilder("element_level_ci")
    E = a.extract
    dj = a.domain_join
    if isinstance(gen, GeneratingSet):
        xs = gen.members
        w = None
        for x, y, z in r.sorted_triples():
            xz, yz = dj[x][z], dj[y][z]
            for al in xs:
                for be in xs:
                    if E[z][al] != E[z][be]:
                        continue
                    if not any(E[xz][g] == E[xz][al]
                               and E[yz][g] == E[yz][be] for g in xs):
                        w = (x, y, z, al, be)
                        break
                if w:
                    break
            if w:
                break
        rb.add("gluing_element_exists", w is None, w)
        commutative, meet, _ = is_commutative(a)
        if not commutative:
            rb.skip("meet_conditioned_gluing",
                    detail="algebra is not commutative")
        else:
            w = None
            dr = range(a.domains.size)
            for x in dr:
                for y in dr:
                    mxy = meet[x][y]
                    for al in xs:
                        for be in xs:
                            if E[mxy][al] != E[mxy][be]:
                                continue
                            if not any(E[x][g] == E[x][al]
                                       and E[y][g] == E[y][be] for g in xs):
                                w = (x, y, al, be)
                                break
                        if w:
                            break
                    if w:
                        break
                if w:
                    break
            rb.add("meet_conditioned_gluing", w is None, w)
    else:
        sets = gen.sets
        w = None
        for x, y, z in r.sorted_triples():
            xz, yz = dj[x][z], dj[y][z]
            xyz = dj[dj[x][y]][z]
            for al in sets[x]:
                for be in sets[y]:
                    if E[z][al] != E[z][be]:
                        continue
                    if not any(E[xz][g] == E[xz][al]
                               and E[yz][g] == E[yz][be]
                               for g in sets[xyz]):
                        w = (x, y, z, al, be)
                        break
                if w:
                    break
            if w:
                break
        rb.add("gluing_element_exists", w is None, w)
        commutative, meet, _ = is_commutative(a)
        if not commutative:
            rb.skip("meet_conditioned_gluing",
                    detail="algebra is not commutative")
        else:
            w = None
            dr = range(a.domains.size)
            for x in dr:
                for y in dr:
                    mxy = meet[x][y]
                    xy = dj[x][y]
                    for al in sets[x]:
                        for be in sets[y]:
                            if E[mxy][al] != E[mxy][be]:
                                continue
                            if not any(E[x][g] == E[x][al]
                                       and E[y][g] == E[y][be]
                                       for g in sets[xy]):
                                w = (x, y, al, be)
                                break
                        if w:
                            break
                    if w:
                        break
                if w:
                    break
            rb.add("meet_conditioned_gluing", w is None, w)
    return rb.build()
