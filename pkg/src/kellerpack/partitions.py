"""Finite ground sets, partitions, independence, and partition systems.

Elements of a ground set are dense indices 0..size-1 and every block is a
bit mask over them; ground sets at desk scale stay below a few hundred
cells, so Python ints are the natural fixed-width bit vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    AxisMismatchError,
    CoverageError,
    DuplicateError,
    EmptyBlockError,
    IndependenceError,
    NotProperSubfamilyError,
    OverlapError,
)


def mask_of(elems: Iterable[int]) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


def elems_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """A partition of {0,...,axis_size-1} into nonempty blocks.

    Blocks are bit masks stored in canonical order (sorted by minimum
    element).  Construct through make_partition, which validates.
    """

    axis_size: int
    blocks: tuple[int, ...]

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1

    def block_elems(self, b: int) -> tuple[int, ...]:
        return elems_of(self.blocks[b])

    def block_containing(self, elem: int) -> int:
        bit = 1 << elem
        for b, mask in enumerate(self.blocks):
            if mask & bit:
                return b
        raise ValueError(f"element {elem} outside ground set")

    def block_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(elems_of(m)) for m in self.blocks)


def make_partition(axis_size: int, blocks: Sequence[Iterable[int]]) -> Partition:
    """Validate and canonicalize a partition given as element sets."""
    if axis_size < 2:
        raise ValueError("ground sets must have at least two elements")
    masks = []
    seen = 0
    for block in blocks:
        m = mask_of(block)
        if m == 0:
            raise EmptyBlockError("empty block in partition")
        if m & seen:
            raise OverlapError(f"blocks overlap on elements {elems_of(m & seen)}")
        seen |= m
        masks.append(m)
    full = (1 << axis_size) - 1
    if seen != full:
        raise CoverageError(f"blocks miss elements {elems_of(full & ~seen)}")
    masks.sort(key=lambda m: (m & -m).bit_length())
    return Partition(axis_size, tuple(masks))


def trivial_partition(axis_size: int) -> Partition:
    return make_partition(axis_size, [range(axis_size)])


def join(p1: Partition, p2: Partition) -> Partition:
    """Finest common coarsening: connected components of the block-overlap
    graph between the two partitions."""
    if p1.axis_size != p2.axis_size:
        raise AxisMismatchError("partitions on different ground sets")
    # Union-find over the blocks of both partitions, merged via shared elements.
    parent = list(range(p1.n_blocks + p2.n_blocks))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, a in enumerate(p1.blocks):
        for j, b in enumerate(p2.blocks):
            if a & b:
                ri, rj = find(i), find(p1.n_blocks + j)
                if ri != rj:
                    parent[rj] = ri
    unions: dict[int, int] = {}
    for i, a in enumerate(p1.blocks):
        unions[find(i)] = unions.get(find(i), 0) | a
    for j, b in enumerate(p2.blocks):
        r = find(p1.n_blocks + j)
        unions[r] = unions.get(r, 0) | b
    return make_partition(p1.axis_size, [elems_of(m) for m in unions.values()])


def independent(p1: Partition, p2: Partition) -> bool:
    """True iff the only partition coarser than both is the trivial one."""
    return join(p1, p2).is_trivial


def check_c_forte(
    p1: Partition, p2: Partition, sub1: Iterable[int], sub2: Iterable[int]
) -> bool:
    """Whether the unions of two proper block subfamilies coincide.

    For independent partitions this must come out False for every choice of
    proper nonempty subfamilies; the function exists as a property probe of
    `independent`, not as something expected to return True.
    """
    if p1.axis_size != p2.axis_size:
        raise AxisMismatchError("partitions on different ground sets")
    s1, s2 = set(sub1), set(sub2)
    for sub, p in ((s1, p1), (s2, p2)):
        if not sub or len(sub) >= p.n_blocks:
            raise NotProperSubfamilyError("subfamily must be nonempty and proper")
    u1 = 0
    for b in s1:
        u1 |= p1.blocks[b]
    u2 = 0
    for b in s2:
        u2 |= p2.blocks[b]
    return u1 == u2


@dataclass(frozen=True)
class PartitionSystem:
    """Per-axis ground sets with families of pairwise independent partitions."""

    axis_sizes: tuple[int, ...]
    families: tuple[tuple[Partition, ...], ...]

    def __post_init__(self) -> None:
        if len(self.axis_sizes) != len(self.families):
            raise AxisMismatchError("one partition family required per axis")
        for size, family in zip(self.axis_sizes, self.families):
            if size < 2:
                raise ValueError("ground sets must have at least two elements")
            for p in family:
                if p.axis_size != size:
                    raise AxisMismatchError("partition does not match its axis")
            for a, b in combinations(family, 2):
                if a == b:
                    raise DuplicateError("duplicate partition in family")
                if not independent(a, b):
                    raise IndependenceError(
                        f"partitions {a.block_sets()} and {b.block_sets()} "
                        "are not independent"
                    )

    @property
    def dimension(self) -> int:
        return len(self.axis_sizes)

    @property
    def is_unital(self) -> bool:
        return all(
            any(p.is_trivial for p in family) for family in self.families
        )

    def partition(self, axis: int, p: int) -> Partition:
        return self.families[axis][p]

    def nontrivial_indices(self, axis: int) -> tuple[int, ...]:
        return tuple(
            i for i, p in enumerate(self.families[axis]) if not p.is_trivial
        )


def arc_partition(n: int, q: int, offset: int) -> Partition:
    """Partition of the cyclic ground set of size n*q into n arcs of length q
    whose start cells are congruent to `offset` mod q."""
    size = n * q
    blocks = []
    for k in range(n):
        start = offset + k * q
        blocks.append([(start + r) % size for r in range(q)])
    return make_partition(size, blocks)


def arc_system_mixed(ns: Sequence[int], qs: Sequence[int]) -> PartitionSystem:
    """Discretized unit-segment tilings of a product of circles: axis i has
    ground set of size ns[i]*qs[i] and one arc partition per offset class,
    plus the trivial partition."""
    if len(ns) != len(qs):
        raise AxisMismatchError("per-axis arc counts and resolutions differ")
    families = []
    for n, q in zip(ns, qs):
        if n < 2 or q < 1:
            raise ValueError("need n >= 2 arcs and resolution q >= 1")
        family = [arc_partition(n, q, j) for j in range(q)]
        family.append(trivial_partition(n * q))
        families.append(tuple(family))
    return PartitionSystem(tuple(n * q for n, q in zip(ns, qs)), tuple(families))


def arc_system(n: int, q: int, d: int) -> PartitionSystem:
    """arc_system_mixed with d identical axes."""
    return arc_system_mixed([n] * d, [q] * d)


def binary_system(
    axis_sizes: Sequence[int], chosen_splits: Sequence[Sequence[Iterable[int]]]
) -> PartitionSystem:
    """Two-block partitions {A, U \\ A} for explicitly chosen subsets A.

    The full family of all two-block splits is exponential, so the caller
    names the splits.  Choosing A or its complement yields the same
    partition and is rejected as a duplicate.
    """
    if len(axis_sizes) != len(chosen_splits):
        raise AxisMismatchError("one split list required per axis")
    families = []
    for size, splits in zip(axis_sizes, chosen_splits):
        full = (1 << size) - 1
        family: list[Partition] = []
        seen_masks: set[int] = set()
        for split in splits:
            a = mask_of(split)
            if a == 0 or a == full:
                raise EmptyBlockError("split must be a proper nonempty subset")
            if a in seen_masks or (full & ~a) in seen_masks:
                raise DuplicateError("split duplicates an earlier partition")
            seen_masks.add(a)
            p = make_partition(size, [elems_of(a), elems_of(full & ~a)])
            for other in family:
                if not independent(p, other):
                    raise IndependenceError(
                        f"splits {p.block_sets()} and {other.block_sets()} "
                        "are not independent"
                    )
            family.append(p)
        family.append(trivial_partition(size))
        families.append(tuple(family))
    return PartitionSystem(tuple(axis_sizes), tuple(families))
