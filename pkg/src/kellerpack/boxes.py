"""Boxes, Keller families, restriction/pile machinery, and the c-statistic.

A box is a product of per-axis factors; each factor is either the full
axis (stored as None) or a block of one of the system's partitions
(stored as a BlockRef).  Point sets are materialized as bit vectors over
the dense cell enumeration of X, which is fine at desk scale.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import (
    CompletenessError,
    DuplicateBoxError,
    EmptyFamilyError,
    NotHiddenError,
    NotKellerError,
    NotPartitionOfXError,
    NotPileError,
    SystemMismatchError,
    TrivialPartitionError,
)
from .partitions import Partition, PartitionSystem, elems_of


class BlockRef(NamedTuple):
    """A block of a partition on one axis: (partition index, block index)."""

    partition: int
    block: int


Factor = Optional[BlockRef]  # None means the full axis X_i


@dataclass(frozen=True)
class Box:
    """One box of a system: a per-axis choice of Full or a partition block.

    Factors referring to the single block of a trivial partition are
    normalized to Full at construction, so 'proper' and Keller-pair logic
    never need to special-case them.
    """

    system: PartitionSystem
    factors: tuple[Factor, ...]

    def __post_init__(self) -> None:
        if len(self.factors) != self.system.dimension:
            raise SystemMismatchError("one factor per axis required")
        normalized = []
        changed = False
        for axis, f in enumerate(self.factors):
            if f is not None:
                f = BlockRef(*f)
                p = self.system.partition(axis, f.partition)
                if not 0 <= f.block < p.n_blocks:
                    raise IndexError(f"block index {f.block} out of range")
                if p.is_trivial:
                    f = None
                changed = True
            normalized.append(f)
        if changed:
            object.__setattr__(self, "factors", tuple(normalized))

    @property
    def is_proper(self) -> bool:
        return all(f is not None for f in self.factors)

    def factor_elems(self, axis: int) -> tuple[int, ...]:
        f = self.factors[axis]
        if f is None:
            return tuple(range(self.system.axis_sizes[axis]))
        return self.system.partition(axis, f.partition).block_elems(f.block)

    def with_factor(self, axis: int, factor: Factor) -> "Box":
        factors = list(self.factors)
        factors[axis] = factor
        return Box(self.system, tuple(factors))

    def volume(self) -> int:
        v = 1
        for axis in range(self.system.dimension):
            v *= len(self.factor_elems(axis))
        return v


@dataclass(frozen=True)
class PointSet:
    """Subset of X = X_1 x ... x X_d as a bit vector, row-major (axis 0 is
    the most significant coordinate)."""

    sizes: tuple[int, ...]
    bits: int

    @property
    def strides(self) -> tuple[int, ...]:
        strides = [1] * len(self.sizes)
        for i in range(len(self.sizes) - 2, -1, -1):
            strides[i] = strides[i + 1] * self.sizes[i + 1]
        return tuple(strides)

    def cardinality(self) -> int:
        return self.bits.bit_count()

    def is_full(self) -> bool:
        total = 1
        for s in self.sizes:
            total *= s
        return self.bits == (1 << total) - 1

    def contains(self, point: Sequence[int]) -> bool:
        idx = sum(x * s for x, s in zip(point, self.strides))
        return bool(self.bits >> idx & 1)

    def points(self) -> Iterable[tuple[int, ...]]:
        for point in product(*(range(s) for s in self.sizes)):
            if self.contains(point):
                yield point


def line_mask(sizes: Sequence[int], point: Sequence[int], axis: int) -> int:
    """Bit mask of the full axis line through `point`."""
    strides = PointSet(tuple(sizes), 0).strides
    base = sum(
        (0 if i == axis else x) * s for i, (x, s) in enumerate(zip(point, strides))
    )
    mask = 0
    for v in range(sizes[axis]):
        mask |= 1 << (base + v * strides[axis])
    return mask


def is_cylinder(P: PointSet, axis: int) -> bool:
    """Point-scan test: every covered point's full axis line is covered.

    This is the slow oracle; classify_partition uses a shadow comparison as
    the fast path and the two are cross-checked in the test suite.
    """
    strides = P.strides
    other = [range(s) for i, s in enumerate(P.sizes) if i != axis]
    axis_stride = strides[axis]
    other_strides = [s for i, s in enumerate(strides) if i != axis]
    for coords in product(*other):
        base = sum(x * s for x, s in zip(coords, other_strides))
        lm = 0
        for v in range(P.sizes[axis]):
            lm |= 1 << (base + v * axis_stride)
        hit = P.bits & lm
        if hit and hit != lm:
            return False
    return True


@dataclass(frozen=True)
class BoxFamily:
    """A duplicate-free finite family of boxes of one system.

    Empty families are legal values (restrictions produce them naturally)
    but are rejected by every operation that needs a suit.
    """

    system: PartitionSystem
    boxes: tuple[Box, ...]

    def __post_init__(self) -> None:
        for box in self.boxes:
            if box.system != self.system:
                raise SystemMismatchError("box from a different system")
        if len(set(self.boxes)) != len(self.boxes):
            raise DuplicateBoxError("duplicate box in family")

    def __len__(self) -> int:
        return len(self.boxes)

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    def require_nonempty(self) -> None:
        if not self.boxes:
            raise EmptyFamilyError("operation requires a nonempty family")


def keller_pair(K: Box, L: Box) -> bool:
    """Keller's condition for one pair: some axis carries two different
    blocks of one and the same partition."""
    if K.system != L.system:
        raise SystemMismatchError("boxes from different systems")
    for a, b in zip(K.factors, L.factors):
        if (
            a is not None
            and b is not None
            and a.partition == b.partition
            and a.block != b.block
        ):
            return True
    return False


def is_keller_family(G: BoxFamily) -> bool:
    G.require_nonempty()
    return all(keller_pair(K, L) for K, L in combinations(G.boxes, 2))


def require_keller(G: BoxFamily) -> None:
    if not is_keller_family(G):
        raise NotKellerError("family violates Keller's condition")


def realize_box(K: Box) -> PointSet:
    sizes = K.system.axis_sizes
    ps = PointSet(sizes, 0)
    strides = ps.strides
    bits = 0
    for point in product(*(K.factor_elems(a) for a in range(len(sizes)))):
        bits |= 1 << sum(x * s for x, s in zip(point, strides))
    return PointSet(sizes, bits)


def realize(G: BoxFamily) -> PointSet:
    """Union of the family's boxes as a point set."""
    sizes = G.system.axis_sizes
    bits = reduce(lambda acc, K: acc | realize_box(K).bits, G.boxes, 0)
    return PointSet(sizes, bits)


def restrict(G: BoxFamily, axis: int, V: Iterable[BlockRef]) -> BoxFamily:
    """Subfamily of boxes whose factor on `axis` lies in V; may be empty."""
    wanted = {BlockRef(*v) for v in V}
    kept = tuple(K for K in G.boxes if K.factors[axis] in wanted)
    return BoxFamily(G.system, kept)


def restrict_to_partition(G: BoxFamily, axis: int, p: int) -> BoxFamily:
    n = G.system.partition(axis, p).n_blocks
    return restrict(G, axis, [BlockRef(p, b) for b in range(n)])


def restrict_to_block(G: BoxFamily, axis: int, p: int, b: int) -> BoxFamily:
    return restrict(G, axis, [BlockRef(p, b)])


class PartitionStatus(enum.Enum):
    ABSENT = "absent"
    HIDDEN = "hidden"
    EXPOSED = "exposed"


def _shadow(K: Box, axis: int) -> set[tuple[int, ...]]:
    axes = [a for a in range(K.system.dimension) if a != axis]
    return set(product(*(K.factor_elems(a) for a in axes)))


def _family_shadow(G: BoxFamily, axis: int) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    for K in G.boxes:
        out |= _shadow(K, axis)
    return out


def classify_partition(
    G: BoxFamily, axis: int, p: int, method: str = "fast"
) -> PartitionStatus:
    """Absent / Hidden / Exposed status of a nontrivial partition.

    Hidden means the restriction to the partition is a suit for an
    axis-cylinder; the fast path checks that every block of the partition
    projects to one and the same shadow on the remaining axes.
    """
    part = G.system.partition(axis, p)
    if part.is_trivial:
        raise TrivialPartitionError("classification is for nontrivial partitions")
    G.require_nonempty()
    present = any(
        f is not None and f.partition == p
        for f in (K.factors[axis] for K in G.boxes)
    )
    if not present:
        return PartitionStatus.ABSENT
    if method == "scan":
        Gp = restrict_to_partition(G, axis, p)
        hidden = is_cylinder(realize(Gp), axis)
    else:
        shadows = [
            _family_shadow(restrict_to_block(G, axis, p, b), axis)
            for b in range(part.n_blocks)
        ]
        hidden = all(s == shadows[0] for s in shadows[1:])
    return PartitionStatus.HIDDEN if hidden else PartitionStatus.EXPOSED


@dataclass(frozen=True)
class CStats:
    """Hidden partition indices per axis and the derived c totals."""

    hidden: tuple[frozenset[int], ...]
    c_per_axis: tuple[int, ...]
    c_total: int


def c_stats(G: BoxFamily, method: str = "fast") -> CStats:
    require_keller(G)
    hidden = []
    c_per_axis = []
    for axis in range(G.system.dimension):
        hid = frozenset(
            p
            for p in G.system.nontrivial_indices(axis)
            if classify_partition(G, axis, p, method) is PartitionStatus.HIDDEN
        )
        hidden.append(hid)
        c_per_axis.append(
            sum(G.system.partition(axis, p).n_blocks - 1 for p in hid)
        )
    return CStats(tuple(hidden), tuple(c_per_axis), sum(c_per_axis))


def is_laminated(G: BoxFamily, axis: int, p: int) -> bool:
    """True iff every box's factor on `axis` is a block of partition p."""
    return all(
        f is not None and f.partition == p
        for f in (K.factors[axis] for K in G.boxes)
    )


def is_pile(C: BoxFamily, axis: int, p: int) -> bool:
    """Laminated with respect to p and a suit for an axis-cylinder."""
    if C.is_empty or not is_keller_family(C) or not is_laminated(C, axis, p):
        return False
    part = C.system.partition(axis, p)
    shadows = [
        _family_shadow(restrict_to_block(C, axis, p, b), axis)
        for b in range(part.n_blocks)
    ]
    return all(s == shadows[0] for s in shadows[1:])


def elementary_aggregate(C: BoxFamily, axis: int, p: int, A: int) -> BoxFamily:
    """Replace the axis factor of every box over block A with the full axis.

    The result is another suit for the pile's cylinder.
    """
    part = C.system.partition(axis, p)
    if part.is_trivial:
        raise TrivialPartitionError("piles are laminated by nontrivial partitions")
    if not 0 <= A < part.n_blocks:
        raise IndexError(f"block index {A} out of range")
    if not is_pile(C, axis, p):
        raise NotPileError("family is not a pile for this axis and partition")
    CA = restrict_to_block(C, axis, p, A)
    return BoxFamily(C.system, tuple(K.with_factor(axis, None) for K in CA.boxes))


def pile_rewrite(G: BoxFamily, axis: int, p: int, A: int) -> BoxFamily:
    """The suit rewrite used in the complexity bound's induction:
    (G minus G|p) united with the elementary aggregate of G|p over A.

    Preserves the realized point set and the Keller property."""
    if classify_partition(G, axis, p) is not PartitionStatus.HIDDEN:
        raise NotHiddenError("partition is not hidden in the family")
    C = restrict_to_partition(G, axis, p)
    agg = elementary_aggregate(C, axis, p, A)
    remaining = tuple(K for K in G.boxes if K not in set(C.boxes))
    return BoxFamily(G.system, remaining + agg.boxes)


@dataclass(frozen=True)
class TheoremBReport:
    c: int
    size: int
    inequality_holds: bool
    equality: bool


def theorem_b_report(G: BoxFamily) -> TheoremBReport:
    """c(G) against |G| - 1.  inequality_holds must always be true; a False
    here means a library bug, never a quiet data point."""
    stats = c_stats(G)
    size = len(G)
    return TheoremBReport(
        c=stats.c_total,
        size=size,
        inequality_holds=stats.c_total <= size - 1,
        equality=stats.c_total == size - 1,
    )


def line_partition_check(
    G: BoxFamily, point: Sequence[int], axis: int
) -> Partition:
    """Identify the family partition induced on an axis line of a partition
    of X; raising if the induced partition is missing from the family.

    This is the operational completeness check: the abstract completeness
    quantifier over all partitions of the ground set is infeasible, but the
    proofs only ever consume line-induced partitions.
    """
    P = realize(G)
    if not P.is_full():
        raise NotPartitionOfXError("family does not cover X")
    if sum(K.volume() for K in G.boxes) != P.cardinality():
        raise NotPartitionOfXError("family boxes overlap")
    lm = line_mask(G.system.axis_sizes, point, axis)
    induced: list[int] = []
    for K in G.boxes:
        if realize_box(K).bits & lm:
            induced.append(sum(1 << e for e in K.factor_elems(axis)))
    induced_sets = sorted(set(induced), key=lambda m: (m & -m).bit_length())
    for cand in G.system.families[axis]:
        if list(cand.blocks) == induced_sets:
            return cand
    raise CompletenessError(
        "line-induced partition uses family blocks but is not a family member"
    )
