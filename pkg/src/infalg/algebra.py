"""Finite domain-free information algebras given by explicit tables.

An algebra is a finite carrier with a combination table, a unit and a null,
plus one extraction map per domain of a join-semilattice. The order on the
carrier is derived from combination: phi <= psi iff phi * psi == psi, with
the unit at the bottom and the null at the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import BoundExceeded, InfalgError, MalformedInstance
from .order import FiniteLattice, FinitePoset, all_downsets, join_table
from .report import Report, ReportBuilder

MAX_IDEAL_CARRIER = 20


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class InfoAlgebra:
    """Carrier, combination table, unit, null and extraction maps."""

    __slots__ = ("names", "combine", "unit", "null", "domains", "extract",
                 "require_e4", "size", "down", "up", "_domain_join",
                 "_domain_join_witness", "_lattice")

    def __init__(self, names: Sequence[str], combine, unit: int, null: int,
                 domains: FinitePoset, extract, require_e4: bool = True):
        m = len(names)
        self.names = tuple(str(n) for n in names)
        rows = tuple(tuple(int(v) for v in row) for row in combine)
        if len(rows) != m or any(len(r) != m for r in rows):
            raise MalformedInstance("combination table is not m x m")
        if any(not 0 <= v < m for r in rows for v in r):
            raise MalformedInstance("combination table entry out of range")
        if not 0 <= unit < m or not 0 <= null < m:
            raise MalformedInstance("unit or null index out of range")
        ext = tuple(tuple(int(v) for v in row) for row in extract)
        if len(ext) != domains.size or any(len(r) != m for r in ext):
            raise MalformedInstance("extraction tables do not match domains")
        if any(not 0 <= v < m for r in ext for v in r):
            raise MalformedInstance("extraction table entry out of range")

        self.size = m
        self.combine = rows
        self.unit = int(unit)
        self.null = int(null)
        self.domains = domains
        self.extract = ext
        self.require_e4 = bool(require_e4)

        down = [0] * m
        up = [0] * m
        for i in range(m):
            for j in range(m):
                if rows[i][j] == j:
                    down[j] |= 1 << i
                    up[i] |= 1 << j
        self.down = tuple(down)
        self.up = tuple(up)
        self._domain_join, self._domain_join_witness = join_table(domains)
        self._lattice = None

    # basic queries

    def leq(self, i: int, j: int) -> bool:
        return self.combine[i][j] == j

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def domain_index(self, name: str) -> int:
        return self.domains.index(name)

    @property
    def domain_join(self):
        if self._domain_join is None:
            raise InfalgError(
                f"domains are not a join-semilattice, witness pair "
                f"{self._domain_join_witness}")
        return self._domain_join

    def combine_many(self, items: Iterable[int]) -> int:
        acc = self.unit
        for i in items:
            acc = self.combine[acc][i]
        return acc

    def image(self, x: int) -> frozenset:
        """Elements supported by domain x (the range of its extraction)."""
        return frozenset(self.extract[x])

    def support_set(self, i: int) -> frozenset:
        return frozenset(x for x in range(self.domains.size)
                         if self.extract[x][i] == i)

    def inf_of(self, items: Iterable[int]) -> Optional[int]:
        """Greatest lower bound of a set of elements, or None.

        The infimum of the empty set is the null element (top of the order).
        """
        lower = (1 << self.size) - 1
        for i in items:
            lower &= self.down[i]
        for g in _bits(lower):
            if lower & ~self.down[g] == 0:
                return g
        return None

    def carrier_lattice(self) -> FiniteLattice:
        """The carrier as a lattice in the information order.

        A finite carrier with all joins and a bottom always has all meets,
        so this construction cannot fail on an instance passing the axioms.
        """
        if self._lattice is None:
            poset = FinitePoset(
                [[self.leq(i, j) for j in range(self.size)]
                 for i in range(self.size)], self.names)
            self._lattice = FiniteLattice.from_poset(poset)
        return self._lattice

    def to_json(self) -> dict:
        return {
            "kind": "abstract",
            "elements": list(self.names),
            "combine": [list(r) for r in self.combine],
            "unit": self.unit,
            "null": self.null,
            "domains": self.domains.to_json(),
            "extract": {self.domains.names[x]: list(self.extract[x])
                        for x in range(self.domains.size)},
            "require_e4": self.require_e4,
        }

    def __repr__(self) -> str:
        return (f"InfoAlgebra({self.size} elements, "
                f"{self.domains.size} domains)")


def _first(scan):
    """First witness produced by a generator, or None."""
    for w in scan:
        return w
    return None


def verify_axioms(a: InfoAlgebra) -> Report:
    """Check the semigroup laws, the extraction axioms and the standing
    assumption that distinct domains have distinct extraction images.

    Checks run in dependency order, each reporting its first counterexample
    as a tuple of element/domain indices.
    """
    rb = ReportBuilder("axioms")
    m, C, E = a.size, a.combine, a.extract
    rng = range(m)

    w = _first((i, j, k) for i in rng for j in rng for k in rng
               if C[C[i][j]][k] != C[i][C[j][k]])
    rb.add("combine_associative", w is None, w)
    w = _first((i, j) for i in rng for j in rng if C[i][j] != C[j][i])
    rb.add("combine_commutative", w is None, w)
    w = _first((i,) for i in rng if C[i][i] != i)
    rb.add("combine_idempotent", w is None, w)
    w = _first((i,) for i in rng if C[i][a.unit] != i)
    rb.add("unit_neutral", w is None, w)
    w = _first((i,) for i in rng if C[i][a.null] != a.null)
    rb.add("null_absorbing", w is None, w)
    w = _first((i, j) for i in rng for j in rng
               if a.up[C[i][j]] != a.up[i] & a.up[j])
    rb.add("combination_is_supremum", w is None, w,
           detail="combination must be the least upper bound of its arguments")
    rb.add("domains_join_semilattice", a._domain_join is not None,
           a._domain_join_witness)

    dr = range(a.domains.size)
    w = _first((x,) for x in dr if E[x][a.null] != a.null)
    rb.add("extraction_e1", w is None, w,
           detail="extraction must preserve the null element")
    w = _first((x, i) for x in dr for i in rng if C[i][E[x][i]] != i)
    rb.add("extraction_e2", w is None, w,
           detail="extracted information must be contained in the original")
    w = _first((x, i, j) for x in dr for i in rng for j in rng
               if E[x][C[E[x][i]][j]] != C[E[x][i]][E[x][j]])
    rb.add("extraction_e3", w is None, w)
    if a.require_e4:
        w = _first((i,) for i in rng
                   if all(E[x][i] != i for x in dr))
        rb.add("extraction_e4", w is None, w,
               detail="every element needs a supporting domain")
    else:
        rb.skip("extraction_e4", detail="disabled for this instance")
    dleq = a.domains.leq
    w = _first((x, y, i) for x in dr for y in dr if dleq[x][y]
               for i in rng if E[x][i] == i and E[y][i] != i)
    rb.add("extraction_e5", w is None, w,
           detail="support must persist on finer domains")
    images = {}
    w = None
    for x in dr:
        key = E[x]
        if key in images:
            w = (images[key], x)
            break
        images[key] = x
    rb.add("domain_images_distinct", w is None, w,
           detail="distinct domains must extract differently")
    return rb.build()


def support_lemma_check(a: InfoAlgebra) -> Report:
    """Elementary support and extraction facts that hold in every algebra
    passing the axioms; a failure here indicates corrupted tables."""
    rb = ReportBuilder("support_lemma")
    m, C, E = a.size, a.combine, a.extract
    rng = range(m)
    dr = range(a.domains.size)
    dleq = a.domains.leq

    w = _first((x,) for x in dr if E[x][a.unit] != a.unit)
    rb.add("unit_fixed", w is None, w)
    w = _first((x, i, j) for x in dr for i in rng for j in _bits(a.up[i])
               if not a.leq(E[x][i], E[x][j]))
    rb.add("monotone", w is None, w)
    w = _first((x, i) for x in dr for i in rng if E[x][E[x][i]] != E[x][i])
    rb.add("idempotent", w is None, w)
    w = _first((x, y, i) for x in dr for y in dr if dleq[x][y]
               for i in rng if not a.leq(E[x][i], E[y][i]))
    rb.add("coarser_extracts_less", w is None, w)
    w = _first((x, y, i) for x in dr for y in dr if dleq[x][y]
               for i in rng if E[x][E[y][i]] != E[x][i])
    rb.add("coarse_of_fine_collapses", w is None, w)
    w = _first((x, i, j) for x in dr for i in rng for j in rng
               if E[x][i] == i and E[x][j] == j and E[x][C[i][j]] != C[i][j])
    rb.add("support_closed_under_combination", w is None, w)
    dj = a.domain_join
    w = _first((x, y, i, j) for x in dr for y in dr
               for i in rng if E[x][i] == i
               for j in rng if E[y][j] == j
               if E[dj[x][y]][C[i][j]] != C[i][j])
    rb.add("joint_support", w is None, w)
    return rb.build()


def support_set(a: InfoAlgebra, psi: int) -> frozenset:
    """Domains supporting the element; upward closed when E5 holds."""
    return a.support_set(psi)


def subalgebra_at(a: InfoAlgebra, x: int) -> InfoAlgebra:
    """The algebra of elements supported by x, over the domains below x."""
    carrier = sorted(set(a.extract[x]))
    pos = {e: k for k, e in enumerate(carrier)}
    sub_domains = sorted(y for y in range(a.domains.size)
                         if a.domains.leq[y][x])
    for i in carrier:
        for j in carrier:
            if a.combine[i][j] not in pos:
                raise InfalgError(
                    f"image of domain {x} not closed under combination "
                    f"at ({i},{j})")
        for y in sub_domains:
            if a.extract[y][i] not in pos:
                raise InfalgError(
                    f"image of domain {x} not closed under extraction "
                    f"from domain {y} at {i}")
    combine = [[pos[a.combine[i][j]] for j in carrier] for i in carrier]
    extract = [[pos[a.extract[y][i]] for i in carrier] for y in sub_domains]
    domains = a.domains.restrict(sub_domains)
    return InfoAlgebra([a.names[i] for i in carrier], combine,
                       pos[a.extract[x][a.unit]], pos[a.extract[x][a.null]],
                       domains, extract, require_e4=a.require_e4)


@dataclass(frozen=True)
class IdealCompletion:
    """The algebra of ideals of a carrier plus the principal-ideal embedding.

    ``ideal_masks[k]`` is the member bitmask of ideal k; ``embed[i]`` is the
    index of the principal ideal generated by element i.
    """

    algebra: InfoAlgebra
    ideal_masks: tuple
    embed: tuple

    def members(self, k: int) -> frozenset:
        return frozenset(_bits(self.ideal_masks[k]))


def ideal_completion(a: InfoAlgebra,
                     max_size: int = MAX_IDEAL_CARRIER) -> IdealCompletion:
    """Build the algebra of all ideals of the carrier.

    Combination of two ideals collects every element below some combination
    of members; extraction collects every element below some extracted
    member. The map psi -> (down-set of psi) embeds the original algebra.
    """
    if a.size > max_size:
        raise BoundExceeded(
            f"carrier size {a.size} exceeds ideal completion bound {max_size}")
    poset = FinitePoset([[a.leq(i, j) for j in range(a.size)]
                         for i in range(a.size)])
    masks = []
    for s in all_downsets(poset):
        if not s:
            continue
        if all(a.combine[i][j] in s for i in s for j in s):
            masks.append(sum(1 << i for i in s))
    masks.sort(key=lambda mk: (bin(mk).count("1"), mk))
    index = {mk: k for k, mk in enumerate(masks)}

    def gen_of(mk: int) -> int:
        for g in _bits(mk):
            if mk & ~a.down[g] == 0:
                return g
        raise InfalgError("non-principal ideal in a finite carrier")

    names = ["v " + a.names[gen_of(mk)] for mk in masks]
    combine = []
    for m1 in masks:
        row = []
        for m2 in masks:
            res = 0
            for i in _bits(m1):
                crow = a.combine[i]
                for j in _bits(m2):
                    res |= a.down[crow[j]]
            row.append(index[res])
        combine.append(row)
    extract = []
    for x in range(a.domains.size):
        erow = a.extract[x]
        col = []
        for mk in masks:
            res = 0
            for i in _bits(mk):
                res |= a.down[erow[i]]
            col.append(index[res])
        extract.append(col)
    embed = tuple(index[a.down[i]] for i in range(a.size))
    algebra = InfoAlgebra(names, combine, embed[a.unit], embed[a.null],
                          a.domains, extract, require_e4=a.require_e4)
    return IdealCompletion(algebra, tuple(masks), embed)


def ideal_extraction_lemma(a: InfoAlgebra, comp: IdealCompletion) -> Report:
    """Extractions of two ideals agree exactly when the ideals share the
    same supported members; checked over all ideal pairs and domains."""
    rb = ReportBuilder("ideal_extraction")
    masks = comp.ideal_masks
    ext = comp.algebra.extract
    witness = None
    for x in range(a.domains.size):
        img = sum(1 << i for i in set(a.extract[x]))
        for k1, m1 in enumerate(masks):
            for k2, m2 in enumerate(masks):
                same_extract = ext[x][k1] == ext[x][k2]
                same_trace = (m1 & img) == (m2 & img)
                if same_extract != same_trace:
                    witness = (x, k1, k2)
                    break
            if witness:
                break
        if witness:
            break
    rb.add("extraction_agrees_iff_supported_members_agree",
           witness is None, witness)
    return rb.build()


def is_commutative(a: InfoAlgebra):
    """Whether extraction maps commute and compose within the family.

    Returns (verdict, meet_table, witness). When the verdict is true the
    table gives, for each pair of domains, the domain whose extraction is
    the composition; it is verified to be the meet in the domain order, so
    the domain semilattice is in fact a lattice.
    """
    E = a.extract
    dr = range(a.domains.size)
    rows = {E[x]: x for x in dr}
    meet = [[0] * a.domains.size for _ in dr]
    for x in dr:
        for y in dr:
            xy = tuple(E[x][E[y][i]] for i in range(a.size))
            yx = tuple(E[y][E[x][i]] for i in range(a.size))
            if xy != yx:
                return False, None, (x, y)
            z = rows.get(xy)
            if z is None:
                return False, None, (x, y)
            if a.domains.meet_of(x, y) != z:
                return False, None, (x, y)
            meet[x][y] = z
    return True, tuple(tuple(r) for r in meet), None
