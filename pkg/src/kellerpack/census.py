"""Exhaustive, symmetry-reduced enumeration of cube tilings and censuses.

The search is an exact-cover backtracker over the cell grid: always place
a cube covering the lexicographically least uncovered cell.  Cover state
is one big int; candidate placements per cell are precomputed masks, so
the inner loop is a bit test.  Symmetry reduction canonicalizes each found
tiling (translations, axis permutations among equal axes, per-axis
reflections) and keeps one orbit representative; with translations
enabled the search itself is restricted to tilings containing the cube at
the origin, which meets every translation orbit.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator, Optional

from .errors import (
    BudgetExceededError,
    InvalidTilingError,
    TheoremViolationError,
)
from .multipiles import extremal_p_value
from .torus import (
    TorusSpec,
    TorusTiling,
    p_params,
    theorem_c_report,
    to_box_family,
    validate_tiling,
)

ALL_SYMMETRIES = frozenset({"translate", "permute", "reflect"})
DEFAULT_CELL_BUDGET = 1024


def default_cell_budget() -> int:
    env = os.environ.get("KELLERPACK_CELL_BUDGET")
    return int(env) if env else DEFAULT_CELL_BUDGET


# --- symmetry action ----------------------------------------------------

def translate(t: TorusTiling, v: Iterable[int]) -> TorusTiling:
    sizes = t.spec.cell_sizes
    v = tuple(v)
    starts = tuple(
        tuple((x + dx) % size for x, dx, size in zip(s, v, sizes))
        for s in t.starts
    )
    return TorusTiling(t.spec, starts)


def permute_axes(t: TorusTiling, sigma: tuple[int, ...]) -> TorusTiling:
    # coordinate i of the image is coordinate sigma[i] of the source;
    # only valid when (m, q) agree on every swapped pair
    starts = tuple(tuple(s[sigma[i]] for i in range(len(sigma))) for s in t.starts)
    return TorusTiling(t.spec, starts)


def reflect(t: TorusTiling, axes: Iterable[int]) -> TorusTiling:
    """Reflect the offset circle on the given axes: a cube over cells
    [s, s+q) maps to one over [-s-q, -s)."""
    axes = set(axes)
    sizes = t.spec.cell_sizes
    qs = t.spec.q
    starts = tuple(
        tuple(
            (-x - qs[i]) % sizes[i] if i in axes else x
            for i, x in enumerate(s)
        )
        for s in t.starts
    )
    return TorusTiling(t.spec, starts)


def _axis_permutations(spec: TorusSpec) -> list[tuple[int, ...]]:
    keys = list(zip(spec.m, spec.q))
    return [
        sigma
        for sigma in permutations(range(spec.dimension))
        if all(keys[sigma[i]] == keys[i] for i in range(spec.dimension))
    ]


def _reflection_subsets(d: int) -> list[tuple[int, ...]]:
    out = []
    for bits in range(1 << d):
        out.append(tuple(i for i in range(d) if bits >> i & 1))
    return out


def canonical_form(
    t: TorusTiling, symmetry: frozenset[str] = ALL_SYMMETRIES
) -> TorusTiling:
    """Lexicographically least orbit element under the enabled symmetries.

    With translations enabled only translations bringing some cube to the
    origin need be tried: the sorted start list of the minimum begins with
    the all-zero start, which such a translation always achieves.
    """
    if not validate_tiling(t):
        raise InvalidTilingError("cannot canonicalize an invalid tiling")
    spec = t.spec
    perms = _axis_permutations(spec) if "permute" in symmetry else [
        tuple(range(spec.dimension))
    ]
    refls = (
        _reflection_subsets(spec.dimension) if "reflect" in symmetry else [()]
    )
    best: Optional[tuple[tuple[int, ...], ...]] = None
    for sigma in perms:
        t1 = permute_axes(t, sigma)
        for axes in refls:
            t2 = reflect(t1, axes)
            if "translate" in symmetry:
                for s in t2.starts:
                    cand = translate(t2, tuple(-x for x in s)).starts
                    if best is None or cand < best:
                        best = cand
            else:
                if best is None or t2.starts < best:
                    best = t2.starts
    assert best is not None
    return TorusTiling(spec, best)


def orbit(
    t: TorusTiling, symmetry: frozenset[str] = ALL_SYMMETRIES
) -> set[TorusTiling]:
    """All distinct images of t under the enabled symmetry group."""
    spec = t.spec
    perms = _axis_permutations(spec) if "permute" in symmetry else [
        tuple(range(spec.dimension))
    ]
    refls = (
        _reflection_subsets(spec.dimension) if "reflect" in symmetry else [()]
    )
    if "translate" in symmetry:
        shifts = list(product(*(range(s) for s in spec.cell_sizes)))
    else:
        shifts = [tuple([0] * spec.dimension)]
    out = set()
    for sigma in perms:
        t1 = permute_axes(t, sigma)
        for axes in refls:
            t2 = reflect(t1, axes)
            for v in shifts:
                out.add(translate(t2, v))
    return out


# --- exact-cover search -------------------------------------------------

@lru_cache(maxsize=16)
def _tables(spec: TorusSpec):
    """Per-spec placement tables: cube masks for every start and, per
    cell, the placements covering that cell."""
    sizes = spec.cell_sizes
    d = spec.dimension
    strides = [1] * d
    for i in range(d - 2, -1, -1):
        strides[i] = strides[i + 1] * sizes[i + 1]

    def cell_index(cell):
        return sum(x * st for x, st in zip(cell, strides))

    all_starts = list(product(*(range(s) for s in sizes)))
    masks = {}
    for s in all_starts:
        bits = 0
        for cell in product(
            *(
                [(v + r) % size for r in range(q)]
                for v, q, size in zip(s, spec.q, sizes)
            )
        ):
            bits |= 1 << cell_index(cell)
        masks[s] = bits
    n_cells = spec.n_cells
    cands: list[list[tuple[tuple[int, ...], int]]] = [[] for _ in range(n_cells)]
    for s, bits in masks.items():
        m = bits
        while m:
            low = m & -m
            cands[low.bit_length() - 1].append((s, bits))
            m ^= low
    return n_cells, masks, cands


def _search(
    spec: TorusSpec, covered: int, placed: tuple[tuple[int, ...], ...]
) -> Iterator[tuple[tuple[int, ...], ...]]:
    n_cells, _, cands = _tables(spec)
    full = (1 << n_cells) - 1
    stack = [(covered, placed)]
    while stack:
        covered, placed = stack.pop()
        if covered == full:
            yield placed
            continue
        cell = _lowest_zero(covered)
        for s, bits in cands[cell]:
            if not bits & covered:
                stack.append((covered | bits, placed + (s,)))


def _lowest_zero(x: int) -> int:
    return (~x & (x + 1)).bit_length() - 1


def enumerate_all_tilings(spec: TorusSpec, budget: Optional[int] = None) -> list[TorusTiling]:
    """Brute-force enumeration of every tiling, no symmetry reduction.

    This is the slow oracle the reduced enumerator is checked against.
    """
    _check_budget(spec, budget)
    found = [TorusTiling(spec, placed) for placed in _search(spec, 0, ())]
    return sorted(found, key=lambda t: t.starts)


def _check_budget(spec: TorusSpec, budget: Optional[int]) -> None:
    limit = budget if budget is not None else default_cell_budget()
    if spec.n_cells > limit:
        raise BudgetExceededError(
            f"{spec.n_cells} cells exceed the budget of {limit}"
        )


def _origin_branches(spec: TorusSpec):
    """Search prefixes after forcing the cube at the origin, split at the
    next branching cell for parallel subtree tasks."""
    n_cells, masks, cands = _tables(spec)
    origin = tuple([0] * spec.dimension)
    covered = masks[origin]
    full = (1 << n_cells) - 1
    if covered == full:
        return [(covered, (origin,))], True
    cell = _lowest_zero(covered)
    branches = []
    for s, bits in cands[cell]:
        if not bits & covered:
            branches.append((covered | bits, (origin, s)))
    return branches, False


def _run_branch(args) -> list[tuple[tuple[int, ...], ...]]:
    spec, covered, placed, symmetry = args
    out = []
    for placed_full in _search(spec, covered, placed):
        t = TorusTiling(spec, placed_full)
        out.append(canonical_form(t, symmetry).starts)
    return sorted(set(out))


def enumerate_tilings(
    spec: TorusSpec,
    symmetry: frozenset[str] = ALL_SYMMETRIES,
    jobs: int = 1,
    budget: Optional[int] = None,
) -> list[TorusTiling]:
    """One canonical representative per orbit, in sorted order.

    With translations enabled the search fixes a cube at the origin, which
    every translation orbit contains; otherwise it falls back to the full
    search.  Subtrees below the first branching cell are independent and
    may run on a process pool; the merged result does not depend on the
    worker count.
    """
    _check_budget(spec, budget)
    if "translate" in symmetry:
        branches, _ = _origin_branches(spec)
        tasks = [(spec, covered, placed, symmetry) for covered, placed in branches]
    else:
        tasks = [(spec, 0, (), symmetry)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_branch, tasks, chunksize=1))
    else:
        results = [_run_branch(task) for task in tasks]
    canon: set[tuple[tuple[int, ...], ...]] = set()
    for chunk in results:
        canon.update(chunk)
    return [TorusTiling(spec, starts) for starts in sorted(canon)]


# --- census -------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    m: tuple[int, ...]
    q: tuple[int, ...]
    symmetry: tuple[str, ...]
    tilings_total: int
    p_histogram: dict[int, int]
    max_p: int
    bound: Optional[int]
    equality_count: int
    multipile_count: int
    conjectural: bool
    attaining_multipile: tuple[bool, ...]


def census(
    spec: TorusSpec,
    symmetry: frozenset[str] = ALL_SYMMETRIES,
    jobs: int = 1,
    budget: Optional[int] = None,
) -> CensusRow:
    """Fold the tight-bound report over the canonical tiling stream.

    For uniform side lengths the proved bound is asserted and any
    violation aborts loudly.  For mixed side lengths the bound is only
    conjectural: the observed maximum is reported against the lamination
    value for the descending side ordering, with the multipile verdict of
    every attaining tiling recorded, and nothing is asserted.
    """
    tilings = enumerate_tilings(spec, symmetry, jobs=jobs, budget=budget)
    uniform = spec.is_uniform()
    if uniform:
        n = spec.m[0]
        bound: Optional[int] = (n ** spec.dimension - 1) // (n - 1)
    else:
        desc = sorted(range(spec.dimension), key=lambda i: -spec.m[i])
        bound = extremal_p_value(spec.m, desc)
    hist: dict[int, int] = {}
    equality_count = 0
    multipile_count = 0
    attaining: list[bool] = []
    max_p = 0
    for t in tilings:
        if uniform:
            report = theorem_c_report(t)
            if not report.holds:
                raise TheoremViolationError(
                    f"tiling {t.starts} exceeds the proved bound"
                )
            if report.equality != report.is_multipile:
                raise TheoremViolationError(
                    f"equality/multipile mismatch on {t.starts}"
                )
            p_total, mp = report.p_total, report.is_multipile
        else:
            from .multipiles import is_multipile

            p_total = p_params(t).total
            mp = is_multipile(to_box_family(t)).verdict
        hist[p_total] = hist.get(p_total, 0) + 1
        max_p = max(max_p, p_total)
        if p_total == bound:
            equality_count += 1
            attaining.append(mp)
        if mp:
            multipile_count += 1
    if uniform and equality_count != multipile_count:
        raise TheoremViolationError("equality count differs from multipile count")
    return CensusRow(
        m=spec.m,
        q=spec.q,
        symmetry=tuple(sorted(symmetry)),
        tilings_total=len(tilings),
        p_histogram=dict(sorted(hist.items())),
        max_p=max_p,
        bound=bound,
        equality_count=equality_count,
        multipile_count=multipile_count,
        conjectural=not uniform,
        attaining_multipile=tuple(attaining),
    )
