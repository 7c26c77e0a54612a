"""Exact-rational unit-cube tilings of discrete tori.

A torus with sides m_1..m_d is discretized at per-axis offset resolution
q_i: axis-i coordinates are integers in 0..m_i*q_i-1 standing for the
rational j/q_i, so a unit cube occupies q_i consecutive cells per axis,
cyclically.  All arithmetic is integer; no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

from .boxes import BlockRef, Box, BoxFamily
from .errors import (
    InvalidTilingError,
    NonUniformTorusError,
    RecipeError,
)
from .multipiles import extremal_p_value, is_multipile
from .partitions import PartitionSystem, arc_system_mixed


@dataclass(frozen=True)
class TorusSpec:
    m: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.m) != len(self.q):
            raise ValueError("m and q must have the same dimension")
        if any(v < 2 for v in self.m) or any(v < 1 for v in self.q):
            raise ValueError("need sides m_i >= 2 and resolutions q_i >= 1")

    @property
    def dimension(self) -> int:
        return len(self.m)

    @property
    def cell_sizes(self) -> tuple[int, ...]:
        return tuple(m * q for m, q in zip(self.m, self.q))

    @property
    def n_cells(self) -> int:
        total = 1
        for s in self.cell_sizes:
            total *= s
        return total

    @property
    def n_cubes(self) -> int:
        total = 1
        for v in self.m:
            total *= v
        return total

    def is_uniform(self) -> bool:
        return len(set(self.m)) == 1


@dataclass(frozen=True)
class TorusTiling:
    spec: TorusSpec
    starts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        canon = tuple(sorted(tuple(s) for s in self.starts))
        if canon != self.starts:
            object.__setattr__(self, "starts", canon)
        sizes = self.spec.cell_sizes
        for s in self.starts:
            if len(s) != self.spec.dimension:
                raise InvalidTilingError("start has wrong dimension")
            if any(not 0 <= v < size for v, size in zip(s, sizes)):
                raise InvalidTilingError(f"start {s} outside the torus grid")


def cube_cells(spec: TorusSpec, start: Sequence[int]):
    """Cells covered by the unit cube at `start`, as coordinate tuples."""
    ranges = [
        [(s + r) % size for r in range(q)]
        for s, q, size in zip(start, spec.q, spec.cell_sizes)
    ]
    return product(*ranges)


def find_defect(t: TorusTiling) -> Optional[tuple[int, ...]]:
    """A cell covered != once, or None for a valid tiling."""
    counts: dict[tuple[int, ...], int] = {}
    for s in t.starts:
        for cell in cube_cells(t.spec, s):
            counts[cell] = counts.get(cell, 0) + 1
            if counts[cell] > 1:
                return cell
    for cell in product(*(range(s) for s in t.spec.cell_sizes)):
        if cell not in counts:
            return cell
    return None


def validate_tiling(t: TorusTiling) -> bool:
    if len(t.starts) != t.spec.n_cubes:
        return False
    return find_defect(t) is None


def require_valid(t: TorusTiling) -> None:
    if not validate_tiling(t):
        raise InvalidTilingError(f"not a tiling; defect at {find_defect(t)}")


@dataclass(frozen=True)
class PParams:
    per_axis: tuple[frozenset[int], ...]
    total: int


def p_params(t: TorusTiling) -> PParams:
    """Per-axis sets of fractional offset classes (start mod q_i)."""
    require_valid(t)
    per_axis = tuple(
        frozenset(s[i] % t.spec.q[i] for s in t.starts)
        for i in range(t.spec.dimension)
    )
    return PParams(per_axis, sum(len(v) for v in per_axis))


def tiling_system(spec: TorusSpec) -> PartitionSystem:
    """The discretized unit-segment system bridging tilings to box families."""
    return arc_system_mixed(spec.m, spec.q)


def to_box_family(
    t: TorusTiling, system: Optional[PartitionSystem] = None
) -> BoxFamily:
    """Map each cube to the box of arcs containing it.

    The cube at start s occupies, on axis i, the arc of partition
    pi_{s_i mod q_i} that starts at cell s_i.  A valid tiling always maps
    to a Keller family.
    """
    require_valid(t)
    if system is None:
        system = tiling_system(t.spec)
    boxes = []
    for s in t.starts:
        factors = []
        for axis, (v, q) in enumerate(zip(s, t.spec.q)):
            p = v % q
            block = system.partition(axis, p).block_containing(v)
            factors.append(BlockRef(p, block))
        boxes.append(Box(system, tuple(factors)))
    return BoxFamily(system, tuple(boxes))


@dataclass(frozen=True)
class TheoremCReport:
    p_total: int
    bound: int
    holds: bool
    equality: bool
    is_multipile: bool


def theorem_c_report(t: TorusTiling) -> TheoremCReport:
    """p(T) against (n^d - 1)/(n - 1) for a uniform torus, with the
    equality case cross-checked against the multipile recognizer."""
    if not t.spec.is_uniform():
        raise NonUniformTorusError(
            "the bound is proved for uniform side lengths only; "
            "use the census's conjectural reporting for mixed sides"
        )
    require_valid(t)
    n = t.spec.m[0]
    d = t.spec.dimension
    bound = (n**d - 1) // (n - 1)
    params = p_params(t)
    verdict = is_multipile(to_box_family(t)).verdict
    return TheoremCReport(
        p_total=params.total,
        bound=bound,
        holds=params.total <= bound,
        equality=params.total == bound,
        is_multipile=verdict,
    )


Recipe = Sequence[tuple[int, Sequence[int]]]


def laminated_construction(spec: TorusSpec, recipe: Recipe) -> TorusTiling:
    """Build an extremal laminated tiling from a per-level recipe.

    recipe[k] = (axis, offsets): level 0 splits the torus into unit slabs
    along its axis at a single fractional offset; level k assigns one
    offset to each of the m_{i_1}*...*m_{i_k} slabs produced so far, in
    lexicographic slab order.  Offsets are integers in 0..q_axis-1.
    Extremality needs all offsets of a level to be pairwise distinct;
    a collision raises RecipeError.
    """
    d = spec.dimension
    if sorted(axis for axis, _ in recipe) != list(range(d)):
        raise RecipeError("recipe must use each axis exactly once")
    expected = 1
    for axis, offsets in recipe:
        if len(offsets) != expected:
            raise RecipeError(
                f"level for axis {axis} needs {expected} offsets, "
                f"got {len(offsets)}"
            )
        if any(not 0 <= o < spec.q[axis] for o in offsets):
            raise RecipeError("offset outside 0..q-1")
        if len(set(offsets)) != len(offsets):
            raise RecipeError("sibling slabs reuse an offset")
        expected *= spec.m[axis]

    # Walk the slab tree: each path of per-level slab indices is one cube.
    starts = []
    for path in product(*(range(spec.m[axis]) for axis, _ in recipe)):
        start = [0] * d
        slab_index = 0
        for level, (axis, offsets) in enumerate(recipe):
            offset = offsets[slab_index]
            start[axis] = (offset + path[level] * spec.q[axis]) % (
                spec.m[axis] * spec.q[axis]
            )
            slab_index = slab_index * spec.m[axis] + path[level]
        starts.append(tuple(start))
    t = TorusTiling(spec, tuple(starts))
    require_valid(t)
    return t


def extremal_recipe(spec: TorusSpec, ordering: Sequence[int]) -> Recipe:
    """A canonical extremal recipe for the given axis ordering: level k
    uses offsets 0,1,...  Requires q on the level-k axis to admit enough
    distinct offsets."""
    recipe = []
    width = 1
    for axis in ordering:
        if spec.q[axis] < width:
            raise RecipeError(
                f"resolution q={spec.q[axis]} on axis {axis} cannot host "
                f"{width} distinct offsets"
            )
        recipe.append((axis, list(range(width))))
        width *= spec.m[axis]
    return recipe


def expected_extremal_p(spec: TorusSpec, ordering: Sequence[int]) -> int:
    return extremal_p_value(spec.m, ordering)
