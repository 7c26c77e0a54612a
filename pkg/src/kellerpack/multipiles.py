"""Recursive recognizer and constructor for multipiles.

A multipile is either a singleton box family, or a pile laminated with
respect to some nontrivial partition whose per-block restrictions are
multipiles hiding pairwise disjoint partition sets on every other axis.
Multipiles are exactly the families attaining c(G) = |G| - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .boxes import (
    BlockRef,
    Box,
    BoxFamily,
    _family_shadow,
    c_stats,
    is_pile,
    require_keller,
    restrict_to_block,
)
from .errors import DisjointnessError, IllFormedTreeError
from .partitions import PartitionSystem


@dataclass(frozen=True)
class Leaf:
    box: Box


@dataclass(frozen=True)
class Node:
    axis: int
    partition: int
    children: tuple["MultipileTree", ...]  # one child per block, in block order


MultipileTree = Union[Leaf, Node]


@dataclass(frozen=True)
class MultipileResult:
    verdict: bool
    tree: Optional[MultipileTree] = None


def _candidate_laminations(G: BoxFamily) -> list[tuple[int, int]]:
    """(axis, partition) pairs that could laminate G: the lamination
    partition must contain every box's factor on that axis, so only
    factors actually in use need be tried."""
    out = []
    for axis in range(G.system.dimension):
        parts = {
            f.partition for f in (K.factors[axis] for K in G.boxes) if f is not None
        }
        if len(parts) == 1:
            p = parts.pop()
            if not G.system.partition(axis, p).is_trivial and all(
                K.factors[axis] is not None for K in G.boxes
            ):
                out.append((axis, p))
    return sorted(out)


def _recognize(
    G: BoxFamily, memo: dict[frozenset[Box], MultipileResult]
) -> MultipileResult:
    key = frozenset(G.boxes)
    if key in memo:
        return memo[key]
    if len(G) == 1:
        result = MultipileResult(True, Leaf(G.boxes[0]))
        memo[key] = result
        return result
    result = MultipileResult(False)
    for axis, p in _candidate_laminations(G):
        if not is_pile(G, axis, p):
            continue
        part = G.system.partition(axis, p)
        children = []
        child_stats = []
        ok = True
        for b in range(part.n_blocks):
            sub = restrict_to_block(G, axis, p, b)
            if sub.is_empty:
                ok = False
                break
            sub_result = _recognize(sub, memo)
            if not sub_result.verdict:
                ok = False
                break
            children.append(sub_result.tree)
            child_stats.append(c_stats(sub))
        if not ok:
            continue
        if _hidden_sets_disjoint(child_stats, axis):
            result = MultipileResult(True, Node(axis, p, tuple(children)))
            break
    memo[key] = result
    return result


def _hidden_sets_disjoint(child_stats, axis: int) -> bool:
    for k in range(len(child_stats[0].hidden)):
        if k == axis:
            continue
        seen: set[int] = set()
        for st in child_stats:
            if seen & st.hidden[k]:
                return False
            seen |= st.hidden[k]
    return True


def is_multipile(
    G: BoxFamily, memo: Optional[dict[frozenset[Box], MultipileResult]] = None
) -> MultipileResult:
    """Decide whether G is a multipile; on success return a witness tree.

    Candidates are tried axis-ascending then partition-ascending, so the
    returned witness is deterministic.
    """
    require_keller(G)
    if memo is None:
        memo = {}
    return _recognize(G, memo)


def _build(system: PartitionSystem, tree: MultipileTree) -> BoxFamily:
    if isinstance(tree, Leaf):
        if tree.box.system != system:
            raise IllFormedTreeError("leaf box belongs to a different system")
        return BoxFamily(system, (tree.box,))
    if not isinstance(tree, Node):
        raise IllFormedTreeError(f"not a multipile tree: {tree!r}")
    try:
        part = system.partition(tree.axis, tree.partition)
    except IndexError as exc:
        raise IllFormedTreeError(str(exc)) from exc
    if part.is_trivial:
        raise IllFormedTreeError("lamination partition must be nontrivial")
    if len(tree.children) != part.n_blocks:
        raise IllFormedTreeError(
            f"node needs exactly {part.n_blocks} children, got {len(tree.children)}"
        )
    child_families = []
    for b, child in enumerate(tree.children):
        sub = _build(system, child)
        boxes = tuple(
            K.with_factor(tree.axis, BlockRef(tree.partition, b)) for K in sub.boxes
        )
        child_families.append(BoxFamily(system, boxes))
    shadows = [_family_shadow(fam, tree.axis) for fam in child_families]
    if any(s != shadows[0] for s in shadows[1:]):
        raise IllFormedTreeError(
            "sibling subtrees realize different shadows; the node is not a pile"
        )
    for k in range(system.dimension):
        if k == tree.axis:
            continue
        seen: set[int] = set()
        for fam in child_families:
            hid = c_stats(fam).hidden[k]
            if seen & hid:
                raise DisjointnessError(
                    f"sibling subtrees both hide a partition on axis {k}"
                )
            seen |= hid
    all_boxes = tuple(K for fam in child_families for K in fam.boxes)
    try:
        return BoxFamily(system, all_boxes)
    except Exception as exc:
        raise IllFormedTreeError(str(exc)) from exc


def build_multipile(system: PartitionSystem, tree: MultipileTree) -> BoxFamily:
    """Construct the family encoded by a tree.

    At each node the axis factor of every box below a block is overridden
    to that block, so leaves only need to fix the axes no ancestor splits.
    """
    G = _build(system, tree)
    result = is_multipile(G)
    if not result.verdict:
        raise IllFormedTreeError("constructed family is not a multipile")
    return G


def extremal_p_value(m: Sequence[int], ordering: Sequence[int]) -> int:
    """1 + m_{i1} + m_{i1} m_{i2} + ... for the given axis ordering."""
    if sorted(ordering) != list(range(len(m))):
        raise ValueError("ordering must be a permutation of the axes")
    if any(v < 2 for v in m):
        raise ValueError("all sides must be at least 2")
    total = 1
    prod = 1
    for idx in ordering[:-1]:
        prod *= m[idx]
        total += prod
    return total
