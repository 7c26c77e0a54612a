"""Symbolic hat embedding of boxes.

Each box maps to a product over the nontrivial partitions of the system:
the coordinate of the partition containing a proper factor is pinned to
that block, every other coordinate is free.  Disjointness of hats mirrors
Keller's condition and suit equality becomes plain union equality, which
makes counting arguments available.  The ambient product Y is never fully
materialized: measures and union sizes are computed combinatorially, with
optional materialization over the coordinates actually pinned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .boxes import (
    BlockRef,
    Box,
    BoxFamily,
    realize,
    require_keller,
)
from .errors import (
    NotPartitionError,
    PreconditionError,
    SystemMismatchError,
)
from .partitions import PartitionSystem

DEFAULT_MATERIALIZE_CAP = 1 << 24


@dataclass(frozen=True)
class HatBox:
    """Per-axis factors: None is free, a BlockRef pins one partition's
    coordinate to one block.  Trivial-partition coordinates never appear
    (they are constant and carry no information)."""

    system: PartitionSystem
    factors: tuple[Optional[BlockRef], ...]


def hat(system: PartitionSystem, K: Box) -> HatBox:
    if K.system != system:
        raise SystemMismatchError("box from a different system")
    return HatBox(system, K.factors)


def hats_disjoint(a: HatBox, b: HatBox) -> bool:
    """True iff some axis pins the same partition to different blocks."""
    if a.system != b.system:
        raise SystemMismatchError("hats from different systems")
    for fa, fb in zip(a.factors, b.factors):
        if (
            fa is not None
            and fb is not None
            and fa.partition == fb.partition
            and fa.block != fb.block
        ):
            return True
    return False


def hat_measure(K: Box) -> Fraction:
    """|hat(K)| / |Y| exactly: one factor 1/|rho| per pinned partition."""
    m = Fraction(1)
    for axis, f in enumerate(K.factors):
        if f is not None:
            m /= K.system.partition(axis, f.partition).n_blocks
    return m


def _pinned_coordinates(families: Sequence[BoxFamily]) -> list[tuple[int, int]]:
    coords = set()
    for G in families:
        for K in G.boxes:
            for axis, f in enumerate(K.factors):
                if f is not None:
                    coords.add((axis, f.partition))
    return sorted(coords)


def _hat_over(
    K: Box, coords: Sequence[tuple[int, int]]
) -> tuple[tuple[int, ...], ...]:
    """The hat of K restricted to the given (axis, partition) coordinates,
    as per-coordinate allowed block tuples."""
    out = []
    for axis, p in coords:
        f = K.factors[axis]
        if f is not None and f.partition == p:
            out.append((f.block,))
        else:
            out.append(tuple(range(K.system.partition(axis, p).n_blocks)))
    return tuple(out)


def _union_size_counting(
    G1: BoxFamily, G2: BoxFamily, coords: Sequence[tuple[int, int]]
) -> tuple[int, int, int]:
    """(|U1|, |U2|, |U1 union U2|) over the restricted product.

    Within a Keller family hats are pairwise disjoint, so each union size
    is a plain sum and the cross term is a sum of pairwise box-hat
    intersection sizes."""
    h1 = [_hat_over(K, coords) for K in G1.boxes]
    h2 = [_hat_over(K, coords) for K in G2.boxes]

    def size(h):
        v = 1
        for choices in h:
            v *= len(choices)
        return v

    u1 = sum(size(h) for h in h1)
    u2 = sum(size(h) for h in h2)
    cross = 0
    for a in h1:
        for b in h2:
            v = 1
            for ca, cb in zip(a, b):
                v *= len(set(ca) & set(cb))
                if v == 0:
                    break
            cross += v
    return u1, u2, u1 + u2 - cross


def _union_materialized(
    G: BoxFamily, coords: Sequence[tuple[int, int]]
) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    for K in G.boxes:
        out.update(product(*_hat_over(K, coords)))
    return out


def suits_equivalent(
    G1: BoxFamily, G2: BoxFamily, cap: int = DEFAULT_MATERIALIZE_CAP
) -> bool:
    """Whether the hat images of two Keller families have equal unions.

    Unreferenced coordinates are free in every hat involved, so the
    comparison over the pinned coordinates alone is lossless.  Below `cap`
    points the restricted product is materialized; beyond it the counting
    path is used.
    """
    if G1.system != G2.system:
        raise SystemMismatchError("families from different systems")
    require_keller(G1)
    require_keller(G2)
    coords = _pinned_coordinates([G1, G2])
    total = 1
    for axis, p in coords:
        total *= G1.system.partition(axis, p).n_blocks
    if total <= cap:
        return _union_materialized(G1, coords) == _union_materialized(G2, coords)
    u1, u2, u = _union_size_counting(G1, G2, coords)
    return u1 == u2 == u


@dataclass(frozen=True)
class BoxCountReport:
    measure_sum: Fraction
    implied_size: Optional[int]
    holds: bool


def verify_box_count(G: BoxFamily) -> BoxCountReport:
    """Counting identity for Keller partitions of X into proper boxes.

    The hat measures of a partition sum to exactly 1.  When every axis has
    a uniform nontrivial-partition cardinality n_i, every proper box has
    measure 1/(n_1...n_d), so the family size is forced to n_1...n_d;
    with mixed cardinalities only the measure sum is asserted.
    """
    require_keller(G)
    if not all(K.is_proper for K in G.boxes):
        raise NotPartitionError("all boxes must be proper")
    P = realize(G)
    if not P.is_full() or sum(K.volume() for K in G.boxes) != P.cardinality():
        raise NotPartitionError("family is not a partition of X")
    measure_sum = sum((hat_measure(K) for K in G.boxes), Fraction(0))
    implied: Optional[int] = 1
    for axis in range(G.system.dimension):
        cards = {
            G.system.partition(axis, p).n_blocks
            for p in G.system.nontrivial_indices(axis)
        }
        if len(cards) == 1 and implied is not None:
            implied *= cards.pop()
        else:
            implied = None
    holds = measure_sum == 1 and (implied is None or len(G) == implied)
    return BoxCountReport(measure_sum, implied, holds)


def suit_swap_check(
    Gs: Sequence[BoxFamily], Hs: Sequence[BoxFamily]
) -> bool:
    """Swap each suit in a union for an equivalent one and confirm the
    union stays a suit for the same polybox.  Must always return True when
    the preconditions hold; PreconditionError otherwise."""
    if len(Gs) != len(Hs) or not Gs:
        raise PreconditionError("need matching nonempty sequences of families")
    system = Gs[0].system
    for G, H in zip(Gs, Hs):
        if G.system != system or H.system != system:
            raise PreconditionError("all families must share one system")
        if not suits_equivalent(G, H):
            raise PreconditionError("paired families are not equivalent suits")
    union_g = _union_family(Gs)
    union_h = _union_family(Hs)
    from .boxes import is_keller_family

    if not is_keller_family(union_g):
        raise PreconditionError("the union of the first sequence is not Keller")
    return is_keller_family(union_h) and suits_equivalent(union_g, union_h)


def _union_family(families: Sequence[BoxFamily]) -> BoxFamily:
    boxes: list[Box] = []
    for G in families:
        boxes.extend(G.boxes)
    if len(set(boxes)) != len(boxes):
        raise PreconditionError("families in a union must be pairwise disjoint")
    return BoxFamily(families[0].system, tuple(boxes))
