"""Partitions of a finite universe, their lattice, and conditional independence.

Subsets of the universe are plain integer bitmasks: bit u set means element u
belongs to the subset. Partitions are immutable and canonical (blocks ordered
by their minimum element), so equal partitions compare and hash equal.

The order used throughout is the information order: P <= Q iff every block of
Q lies inside a block of P, i.e. the finer partition is the larger one. Under
this order the coarsest partition {U} is the bottom and the partition into
singletons is the top.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BoundExceeded, UniverseMismatch

MAX_SUBSET_UNIVERSE = 16
MAX_PARTITION_UNIVERSE = 8


@dataclass(frozen=True)
class Universe:
    """The base set {0, ..., size-1}."""

    size: int

    def __post_init__(self) -> None:
        if self.size < 1:
            raise ValueError("universe needs at least one element")

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def mask(self, members: Iterable[int]) -> int:
        out = 0
        for u in members:
            if not 0 <= u < self.size:
                raise ValueError(f"element {u} not in universe of size {self.size}")
            out |= 1 << u
        return out

    def members(self, mask: int) -> tuple[int, ...]:
        return tuple(u for u in range(self.size) if mask >> u & 1)

    def subsets(self) -> range:
        """All subset masks; refuses universes too large to enumerate."""
        if self.size > MAX_SUBSET_UNIVERSE:
            raise BoundExceeded(
                f"2^{self.size} subsets exceed the enumeration bound "
                f"(universe size limit {MAX_SUBSET_UNIVERSE})")
        return range(1 << self.size)


def _check_same_universe(a: "Partition", b: "Partition") -> None:
    if a.universe != b.universe:
        raise UniverseMismatch(f"{a.universe} vs {b.universe}")


class Partition:
    """A partition of a universe, in canonical block order."""

    __slots__ = ("universe", "blocks", "block_of", "block_masks")

    def __init__(self, universe: Universe, blocks: Iterable[Iterable[int]]):
        seen: list[list[int]] = [sorted(set(b)) for b in blocks]
        if any(not b for b in seen):
            raise ValueError("empty block")
        seen.sort(key=lambda b: b[0])
        block_of = [-1] * universe.size
        for i, block in enumerate(seen):
            for u in block:
                if not 0 <= u < universe.size:
                    raise ValueError(f"element {u} outside universe")
                if block_of[u] != -1:
                    raise ValueError(f"element {u} in two blocks")
                block_of[u] = i
        if -1 in block_of:
            raise ValueError("blocks do not cover the universe")
        self.universe = universe
        self.blocks = tuple(tuple(b) for b in seen)
        self.block_of = tuple(block_of)
        self.block_masks = tuple(universe.mask(b) for b in seen)

    @classmethod
    def from_assignment(cls, universe: Universe, labels: Sequence) -> "Partition":
        """Partition grouping elements that carry the same label."""
        groups: dict[object, list[int]] = {}
        for u, lab in enumerate(labels):
            groups.setdefault(lab, []).append(u)
        return cls(universe, groups.values())

    @classmethod
    def coarsest(cls, universe: Universe) -> "Partition":
        return cls(universe, [range(universe.size)])

    @classmethod
    def finest(cls, universe: Universe) -> "Partition":
        return cls(universe, [[u] for u in range(universe.size)])

    @classmethod
    def from_json(cls, universe: Universe, data) -> "Partition":
        return cls(universe, data)

    def to_json(self) -> list:
        return [list(b) for b in self.blocks]

    def __eq__(self, other) -> bool:
        return (isinstance(other, Partition)
                and self.universe == other.universe
                and self.blocks == other.blocks)

    def __hash__(self) -> int:
        return hash((self.universe, self.blocks))

    def __repr__(self) -> str:
        body = "|".join("".join(map(str, b)) for b in self.blocks)
        return f"Partition({body})"

    def __len__(self) -> int:
        return len(self.blocks)

    # lattice structure (information order)

    def leq(self, other: "Partition") -> bool:
        """True iff self is coarser than (or equal to) other."""
        return refines(self, other)

    def __or__(self, other: "Partition") -> "Partition":
        """Join: common refinement, blocks are the nonempty intersections."""
        _check_same_universe(self, other)
        pairs = list(zip(self.block_of, other.block_of))
        return Partition.from_assignment(self.universe, pairs)

    def __and__(self, other: "Partition") -> "Partition":
        """Meet: finest common coarsening.

        Computed as the connected components of "same block in either
        partition", via union-find. Equals the fixpoint of alternately
        saturating with both partitions.
        """
        _check_same_universe(self, other)
        parent = list(range(self.universe.size))

        def find(u: int) -> int:
            while parent[u] != u:
                parent[u] = parent[parent[u]]
                u = parent[u]
            return u

        for blocks in (self.blocks, other.blocks):
            for block in blocks:
                root = find(block[0])
                for u in block[1:]:
                    parent[find(u)] = root
        return Partition.from_assignment(self.universe, [find(u) for u in parent])

    # saturation

    def saturate(self, mask: int) -> int:
        """Union of the blocks meeting the given subset."""
        out = 0
        for bm in self.block_masks:
            if bm & mask:
                out |= bm
        return out

    def block_mask_of(self, u: int) -> int:
        return self.block_masks[self.block_of[u]]

    def commutes_with(self, other: "Partition") -> bool:
        """Whether the two saturation operators commute.

        Uses the block criterion: inside every block of the meet, each block
        of one partition must intersect each block of the other.
        """
        _check_same_universe(self, other)
        for cm in (self & other).block_masks:
            mine = [bm for bm in self.block_masks if bm & cm]
            theirs = [bm for bm in other.block_masks if bm & cm]
            for b1, b2 in itertools.product(mine, theirs):
                if not b1 & b2:
                    return False
        return True


def refines(p_coarse: Partition, p_fine: Partition) -> bool:
    """True iff every block of p_fine lies inside a block of p_coarse."""
    _check_same_universe(p_coarse, p_fine)
    for bm, block in zip(p_fine.block_masks, p_fine.blocks):
        if bm & ~p_coarse.block_mask_of(block[0]):
            return False
    return True


def partition_join(p1: Partition, p2: Partition) -> Partition:
    return p1 | p2


def partition_meet(p1: Partition, p2: Partition) -> Partition:
    return p1 & p2


def commute(p1: Partition, p2: Partition) -> bool:
    return p1.commutes_with(p2)


def cond_independent(partitions: Sequence[Partition], given: Partition) -> bool:
    """Conditional independence of a family of partitions given another.

    Holds iff for every block B of ``given``, every tuple of blocks (one per
    partition, each meeting B) has a nonempty common intersection with B.
    Block tuples are generated lazily and the scan stops at the first
    violation.
    """
    if not partitions:
        raise ValueError("need at least one partition")
    for p in partitions:
        _check_same_universe(p, given)
    for b in given.block_masks:
        compatible = [[bm for bm in p.block_masks if bm & b] for p in partitions]
        for combo in itertools.product(*compatible):
            acc = b
            for bm in combo:
                acc &= bm
                if not acc:
                    return False
    return True


def independent(partitions: Sequence[Partition]) -> bool:
    """Unconditional independence: every tuple of blocks intersects."""
    if len(partitions) < 2:
        raise ValueError("need at least two partitions")
    return cond_independent(partitions, Partition.coarsest(partitions[0].universe))


def all_partitions(universe: Universe,
                   max_size: int = MAX_PARTITION_UNIVERSE) -> Iterator[Partition]:
    """All partitions of the universe, via restricted-growth strings.

    The enumeration order makes every partition come out already canonical;
    the count is the Bell number of the universe size.
    """
    n = universe.size
    if n > max_size:
        raise BoundExceeded(f"universe size {n} exceeds partition bound {max_size}")

    def rec(labels: list[int], used: int) -> Iterator[Partition]:
        if len(labels) == n:
            yield Partition.from_assignment(universe, labels)
            return
        for b in range(used + 1):
            labels.append(b)
            yield from rec(labels, used + (b == used))
            labels.pop()

    yield from rec([0], 1)
