"""Finite posets and lattices given by explicit order tables.

The global orientation convention: when a lattice carries an information
algebra, the bottom element is the unit (vacuous information) and the top
element is the null (contradiction). Structural predicates below are
orientation-neutral; ``meet_irreducibles`` follows the convention and
excludes the top.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import BoundExceeded, MalformedInstance

MAX_IDEAL_LATTICE = 20


class FinitePoset:
    """An explicit finite partial order.

    ``leq`` is an m x m tuple-of-tuples of bools; validation rejects anything
    that is not reflexive, antisymmetric and transitive.
    """

    __slots__ = ("size", "leq", "names")

    def __init__(self, leq: Sequence[Sequence[bool]], names: Sequence[str] = None):
        m = len(leq)
        rows = tuple(tuple(bool(v) for v in row) for row in leq)
        if any(len(row) != m for row in rows):
            raise MalformedInstance("leq matrix is not square")
        for i in range(m):
            if not rows[i][i]:
                raise MalformedInstance(f"order not reflexive at {i}")
            for j in range(m):
                if i != j and rows[i][j] and rows[j][i]:
                    raise MalformedInstance(f"order not antisymmetric at ({i},{j})")
                if rows[i][j]:
                    for k in range(m):
                        if rows[j][k] and not rows[i][k]:
                            raise MalformedInstance(
                                f"order not transitive at ({i},{j},{k})")
        self.size = m
        self.leq = rows
        self.names = tuple(names) if names is not None else tuple(
            str(i) for i in range(m))
        if len(self.names) != m:
            raise MalformedInstance("name list does not match order size")

    @classmethod
    def from_pairs(cls, names: Sequence[str], pairs: Iterable[Sequence[int]]
                   ) -> "FinitePoset":
        """Build from generating <= facts; reflexive-transitive closure applied."""
        m = len(names)
        leq = [[i == j for j in range(m)] for i in range(m)]
        for i, j in pairs:
            leq[i][j] = True
        for k in range(m):
            for i in range(m):
                if leq[i][k]:
                    row_k = leq[k]
                    row_i = leq[i]
                    for j in range(m):
                        if row_k[j]:
                            row_i[j] = True
        return cls(leq, names)

    @classmethod
    def from_order_function(cls, elements: Sequence, leq_fn: Callable,
                            names: Sequence[str] = None) -> "FinitePoset":
        leq = [[leq_fn(a, b) for b in elements] for a in elements]
        return cls(leq, names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def upper_bounds(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.size) if self.leq[i][k] and self.leq[j][k]]

    def lower_bounds(self, i: int, j: int) -> list[int]:
        return [k for k in range(self.size) if self.leq[k][i] and self.leq[k][j]]

    def join_of(self, i: int, j: int) -> Optional[int]:
        ubs = self.upper_bounds(i, j)
        for u in ubs:
            if all(self.leq[u][v] for v in ubs):
                return u
        return None

    def meet_of(self, i: int, j: int) -> Optional[int]:
        lbs = self.lower_bounds(i, j)
        for u in lbs:
            if all(self.leq[v][u] for v in lbs):
                return u
        return None

    def top(self) -> Optional[int]:
        for i in range(self.size):
            if all(self.leq[j][i] for j in range(self.size)):
                return i
        return None

    def bottom(self) -> Optional[int]:
        for i in range(self.size):
            if all(self.leq[i][j] for j in range(self.size)):
                return i
        return None

    def downset(self, i: int) -> frozenset:
        return frozenset(j for j in range(self.size) if self.leq[j][i])

    def upset(self, i: int) -> frozenset:
        return frozenset(j for j in range(self.size) if self.leq[i][j])

    def linear_extension(self) -> list[int]:
        """Indices ordered compatibly with the order (smaller first)."""
        return sorted(range(self.size), key=lambda i: (len(self.downset(i)), i))

    def restrict(self, keep: Sequence[int], names=None) -> "FinitePoset":
        keep = list(keep)
        leq = [[self.leq[i][j] for j in keep] for i in keep]
        return FinitePoset(leq, names or [self.names[i] for i in keep])

    def is_upset(self, members: frozenset) -> bool:
        return all(j in members
                   for i in members for j in range(self.size) if self.leq[i][j])

    def all_upsets(self) -> list[frozenset]:
        """Every upward-closed subset, including the empty one."""
        order = self.linear_extension()[::-1]
        out: list[frozenset] = [frozenset()]
        for i in order:
            above = self.upset(i) - {i}
            out += [s | {i} for s in out if above <= s]
        return out

    def to_json(self) -> dict:
        pairs = [[i, j] for i in range(self.size) for j in range(self.size)
                 if i != j and self.leq[i][j]]
        return {"elements": list(self.names), "leq": pairs}

    @classmethod
    def from_json(cls, data: dict) -> "FinitePoset":
        return cls.from_pairs(data["elements"], data.get("leq", []))

    def __repr__(self) -> str:
        return f"FinitePoset({self.size} elements)"


def join_table(poset: FinitePoset):
    """(table, None) when every pair has a least upper bound, else (None, pair)."""
    table = []
    for i in range(poset.size):
        row = []
        for j in range(poset.size):
            v = poset.join_of(i, j)
            if v is None:
                return None, (i, j)
            row.append(v)
        table.append(tuple(row))
    return tuple(table), None


def meet_table(poset: FinitePoset):
    table = []
    for i in range(poset.size):
        row = []
        for j in range(poset.size):
            v = poset.meet_of(i, j)
            if v is None:
                return None, (i, j)
            row.append(v)
        table.append(tuple(row))
    return tuple(table), None


def check_join_semilattice(poset: FinitePoset):
    """(True, None) or (False, witness pair without a least upper bound)."""
    table, witness = join_table(poset)
    return (witness is None), witness


class FiniteLattice:
    """A poset together with its join and meet tables."""

    __slots__ = ("poset", "join", "meet", "top", "bottom")

    def __init__(self, poset: FinitePoset, join, meet):
        self.poset = poset
        self.join = join
        self.meet = meet
        self.top = poset.top()
        self.bottom = poset.bottom()
        if self.top is None or self.bottom is None:
            raise MalformedInstance("lattice must be bounded")

    @classmethod
    def from_poset(cls, poset: FinitePoset) -> "FiniteLattice":
        jt, w = join_table(poset)
        if jt is None:
            raise MalformedInstance(f"pair {w} has no join")
        mt, w = meet_table(poset)
        if mt is None:
            raise MalformedInstance(f"pair {w} has no meet")
        return cls(poset, jt, mt)

    @classmethod
    def from_order_function(cls, elements: Sequence, leq_fn: Callable,
                            names: Sequence[str] = None) -> "FiniteLattice":
        return cls.from_poset(FinitePoset.from_order_function(elements, leq_fn, names))

    @classmethod
    def from_json(cls, data: dict) -> "FiniteLattice":
        return cls.from_poset(FinitePoset.from_json(data))

    @property
    def size(self) -> int:
        return self.poset.size

    @property
    def names(self):
        return self.poset.names

    def leq(self, i: int, j: int) -> bool:
        return self.poset.leq[i][j]

    def __repr__(self) -> str:
        return f"FiniteLattice({self.size} elements)"


def is_modular(lat: FiniteLattice):
    """(verdict, witness): z <= x must give x /\\ (y \\/ z) = (x /\\ y) \\/ z."""
    for x in range(lat.size):
        for y in range(lat.size):
            for z in range(lat.size):
                if lat.leq(z, x):
                    if lat.meet[x][lat.join[y][z]] != lat.join[lat.meet[x][y]][z]:
                        return False, (x, y, z)
    return True, None


def is_distributive(lat: FiniteLattice):
    """(verdict, witness) for x /\\ (y \\/ z) = (x /\\ y) \\/ (x /\\ z)."""
    for x in range(lat.size):
        for y in range(lat.size):
            for z in range(lat.size):
                lhs = lat.meet[x][lat.join[y][z]]
                rhs = lat.join[lat.meet[x][y]][lat.meet[x][z]]
                if lhs != rhs:
                    return False, (x, y, z)
    return True, None


def is_boolean(lat: FiniteLattice):
    """(verdict, complement map or None).

    Boolean means distributive and every element complemented; the complement
    map is unique in that case.
    """
    ok, _ = is_distributive(lat)
    if not ok:
        return False, None
    comps = []
    for x in range(lat.size):
        comp = None
        for y in range(lat.size):
            if lat.join[x][y] == lat.top and lat.meet[x][y] == lat.bottom:
                comp = y
                break
        if comp is None:
            return False, None
        comps.append(comp)
    return True, tuple(comps)


def meet_irreducibles(lat: FiniteLattice) -> frozenset:
    """Elements other than the top that never arise as a meet of two others."""
    out = []
    for c in range(lat.size):
        if c == lat.top:
            continue
        above = [x for x in range(lat.size) if lat.leq(c, x)]
        if all(c in (x, y)
               for x in above for y in above if lat.meet[x][y] == c):
            out.append(c)
    return frozenset(out)


def meet_prime_elements(lat: FiniteLattice) -> frozenset:
    """Elements c != top with x /\\ y <= c forcing x <= c or y <= c.

    Coincides with the meet-irreducibles on distributive lattices; used to
    cross-check them.
    """
    out = []
    for c in range(lat.size):
        if c == lat.top:
            continue
        if all(lat.leq(x, c) or lat.leq(y, c)
               for x in range(lat.size) for y in range(lat.size)
               if lat.leq(lat.meet[x][y], c)):
            out.append(c)
    return frozenset(out)


@dataclass(frozen=True)
class OrderIdeal:
    """A nonempty, downward-closed, join-closed subset of a lattice."""

    members: frozenset
    principal_generator: Optional[int]
    proper: bool
    prime: bool
    maximal: bool

    @property
    def principal(self) -> bool:
        return self.principal_generator is not None


def all_downsets(poset: FinitePoset) -> list[frozenset]:
    """Every downward-closed subset, including the empty one."""
    order = poset.linear_extension()
    out: list[frozenset] = [frozenset()]
    for i in order:
        below = poset.downset(i) - {i}
        out += [s | {i} for s in out if below <= s]
    return out


def enumerate_ideals(lat: FiniteLattice,
                     max_size: int = MAX_IDEAL_LATTICE) -> list[OrderIdeal]:
    """All ideals of the lattice with prime/maximal/principal flags.

    Enumerates downsets of the order, then keeps the nonempty join-closed
    ones. In a finite lattice every ideal turns out to be principal.
    """
    if lat.size > max_size:
        raise BoundExceeded(
            f"lattice size {lat.size} exceeds ideal enumeration bound {max_size}")
    ideals: list[frozenset] = []
    for s in all_downsets(lat.poset):
        if not s:
            continue
        if all(lat.join[i][j] in s for i in s for j in s):
            ideals.append(s)

    full = frozenset(range(lat.size))
    propers = [s for s in ideals if s != full]
    out = []
    for s in ideals:
        gen = None
        for g in s:
            if all(lat.leq(e, g) for e in s):
                gen = g
                break
        prime = s != full and all(
            x in s or y in s
            for x in range(lat.size) for y in range(lat.size)
            if lat.meet[x][y] in s)
        maximal = s != full and not any(s < t for t in propers)
        out.append(OrderIdeal(s, gen, s != full, prime, maximal))
    return out


# small fixed lattices used as a structural test corpus

def chain(n: int, names: Sequence[str] = None) -> FiniteLattice:
    poset = FinitePoset([[i <= j for j in range(n)] for i in range(n)], names)
    return FiniteLattice.from_poset(poset)


def powerset_lattice(k: int) -> FiniteLattice:
    masks = list(range(1 << k))
    names = ["{" + ",".join(str(i) for i in range(k) if m >> i & 1) + "}"
             for m in masks]
    poset = FinitePoset([[(a & b) == a for b in masks] for a in masks], names)
    return FiniteLattice.from_poset(poset)


def diamond_m3() -> FiniteLattice:
    """M3: bottom, three incomparable middles, top. Modular, not distributive."""
    return FiniteLattice.from_poset(FinitePoset.from_pairs(
        ["bot", "a", "b", "c", "top"],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]))


def pentagon_n5() -> FiniteLattice:
    """N5: bottom < a < c < top and bottom < b < top. Not modular."""
    return FiniteLattice.from_poset(FinitePoset.from_pairs(
        ["bot", "a", "b", "c", "top"],
        [(0, 1), (1, 3), (3, 4), (0, 2), (2, 4)]))
