"""Randomized generators for property sweeps.

Everything is driven by a caller-supplied random.Random so sweeps are
reproducible from a seed.
"""

from __future__ import annotations

import random
from typing import Optional

from .boxes import BlockRef, Box, BoxFamily, keller_pair
from .partitions import (
    Partition,
    PartitionSystem,
    independent,
    make_partition,
    trivial_partition,
)


def random_partition(size: int, rng: random.Random) -> Partition:
    """Uniform-ish random nontrivial partition of 0..size-1."""
    while True:
        n_blocks = rng.randint(2, size)
        labels = [rng.randrange(n_blocks) for _ in range(size)]
        used = sorted(set(labels))
        if len(used) < 2:
            continue
        blocks = [[e for e, l in zip(range(size), labels) if l == u] for u in used]
        return make_partition(size, blocks)


def random_system(
    rng: random.Random,
    max_dimension: int = 3,
    max_size: int = 6,
    max_partitions: int = 3,
) -> PartitionSystem:
    """Random system of pairwise independent partition families, built by
    rejection: candidate partitions are kept only if independent of all
    earlier ones on the axis."""
    d = rng.randint(1, max_dimension)
    sizes = [rng.randint(2, max_size) for _ in range(d)]
    families = []
    for size in sizes:
        family: list[Partition] = []
        target = rng.randint(1, max_partitions)
        attempts = 0
        while len(family) < target and attempts < 50:
            attempts += 1
            p = random_partition(size, rng)
            if p not in family and all(independent(p, other) for other in family):
                family.append(p)
        family.append(trivial_partition(size))
        families.append(tuple(family))
    return PartitionSystem(tuple(sizes), tuple(families))


def random_box(system: PartitionSystem, rng: random.Random) -> Box:
    factors = []
    for axis in range(system.dimension):
        nontrivial = system.nontrivial_indices(axis)
        if not nontrivial or rng.random() < 0.15:
            factors.append(None)
        else:
            p = rng.choice(nontrivial)
            b = rng.randrange(system.partition(axis, p).n_blocks)
            factors.append(BlockRef(p, b))
    return Box(system, tuple(factors))


def random_keller_family(
    system: PartitionSystem,
    rng: random.Random,
    max_boxes: int = 6,
    attempts: int = 60,
) -> Optional[BoxFamily]:
    """Greedy sampler: draw boxes and keep those forming a Keller pair
    with everything kept so far.  Returns None when not even one box
    could be drawn (cannot happen for systems with nontrivial partitions)."""
    boxes: list[Box] = []
    for _ in range(attempts):
        if len(boxes) >= max_boxes:
            break
        K = random_box(system, rng)
        if K in boxes:
            continue
        if all(keller_pair(K, L) for L in boxes):
            boxes.append(K)
    if not boxes:
        return None
    return BoxFamily(system, tuple(boxes))
