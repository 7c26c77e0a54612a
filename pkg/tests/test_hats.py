import random
from fractions import Fraction
from itertools import combinations

import pytest

from kellerpack import (
    BlockRef,
    Box,
    BoxFamily,
    PartitionSystem,
    TorusSpec,
    TorusTiling,
    arc_system,
    elementary_aggregate,
    hat,
    hat_measure,
    hats_disjoint,
    keller_pair,
    make_partition,
    realize,
    suit_swap_check,
    suits_equivalent,
    to_box_family,
    trivial_partition,
    verify_box_count,
)
from kellerpack.errors import (
    NotPartitionError,
    PreconditionError,
    SystemMismatchError,
)
from kellerpack.hats import _pinned_coordinates, _union_materialized, _union_size_counting
from kellerpack.sampling import random_keller_family, random_system


@pytest.fixture(scope="module")
def sys222():
    return arc_system(2, 2, 2)


def laminated_family(sys_):
    spec = TorusSpec((2, 2), (2, 2))
    t = TorusTiling(spec, ((0, 0), (0, 2), (2, 1), (2, 3)))
    return to_box_family(t, sys_)


def grid_family(sys_):
    spec = TorusSpec((2, 2), (2, 2))
    t = TorusTiling(spec, ((0, 0), (0, 2), (2, 0), (2, 2)))
    return to_box_family(t, sys_)


class TestHatsDisjoint:
    def test_same_partition_different_blocks(self, sys222):
        K = Box(sys222, (BlockRef(0, 0), None))
        L = Box(sys222, (BlockRef(0, 1), None))
        assert hats_disjoint(hat(sys222, K), hat(sys222, L))

    def test_different_partitions_not_disjoint(self, sys222):
        K = Box(sys222, (BlockRef(0, 0), None))
        L = Box(sys222, (BlockRef(1, 0), None))
        assert not hats_disjoint(hat(sys222, K), hat(sys222, L))

    def test_system_mismatch(self, sys222):
        other = arc_system(2, 2, 1)
        with pytest.raises(SystemMismatchError):
            hats_disjoint(
                hat(sys222, Box(sys222, (None, None))),
                hat(other, Box(other, (None,))),
            )

    def test_mirrors_keller_exhaustive(self, sys222):
        boxes = _all_boxes(sys222)
        for K, L in combinations(boxes, 2):
            assert hats_disjoint(hat(sys222, K), hat(sys222, L)) == keller_pair(K, L)

    def test_mirrors_keller_randomized(self):
        rng = random.Random(11)
        for _ in range(200):
            system = random_system(rng)
            G = random_keller_family(system, rng)
            if G is None or len(G) < 2:
                continue
            for K, L in combinations(G.boxes, 2):
                assert hats_disjoint(hat(system, K), hat(system, L))


def _all_boxes(system):
    from itertools import product

    per_axis = []
    for axis in range(system.dimension):
        opts = [None]
        for p in system.nontrivial_indices(axis):
            for b in range(system.partition(axis, p).n_blocks):
                opts.append(BlockRef(p, b))
        per_axis.append(opts)
    return [Box(system, factors) for factors in product(*per_axis)]


class TestHatMeasure:
    def test_full_box(self, sys222):
        assert hat_measure(Box(sys222, (None, None))) == 1

    def test_proper_box_two_pins(self, sys222):
        K = Box(sys222, (BlockRef(0, 0), BlockRef(1, 1)))
        assert hat_measure(K) == Fraction(1, 4)

    def test_mixed_cardinality_sixth(self):
        # one axis split into two blocks, the other into three
        p2 = make_partition(2, [{0}, {1}])
        p3 = make_partition(3, [{0}, {1}, {2}])
        sys_ = PartitionSystem(
            (2, 3),
            (
                (p2, trivial_partition(2)),
                (p3, trivial_partition(3)),
            ),
        )
        K = Box(sys_, (BlockRef(0, 1), BlockRef(0, 2)))
        assert hat_measure(K) == Fraction(1, 6)

    def test_tiling_measures_sum_to_one(self, sys222):
        G = laminated_family(sys222)
        assert sum(hat_measure(K) for K in G.boxes) == 1


class TestSuitsEquivalent:
    def test_pile_and_its_aggregate(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, tuple(K for K in G.boxes if K.factors[0] == BlockRef(0, 0)))
        assert len(C) == 2
        H = elementary_aggregate(C, 1, 0, 0)
        assert realize(C).bits == realize(H).bits
        assert suits_equivalent(C, H)

    def test_grid_and_laminated_tilings(self, sys222):
        # both are suits for the full polybox
        assert suits_equivalent(grid_family(sys222), laminated_family(sys222))

    def test_inequivalent(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, G.boxes[:2])
        D = BoxFamily(sys222, G.boxes[2:])
        assert not suits_equivalent(C, D)

    def test_counting_path_matches_materialized(self, sys222):
        cases = [
            (grid_family(sys222), laminated_family(sys222)),
            (
                BoxFamily(sys222, laminated_family(sys222).boxes[:2]),
                BoxFamily(sys222, laminated_family(sys222).boxes[2:]),
            ),
        ]
        for G1, G2 in cases:
            assert suits_equivalent(G1, G2, cap=0) == suits_equivalent(G1, G2)

    def test_counting_sizes_match_materialized(self, sys222):
        G1 = grid_family(sys222)
        G2 = laminated_family(sys222)
        coords = _pinned_coordinates([G1, G2])
        u1 = _union_materialized(G1, coords)
        u2 = _union_materialized(G2, coords)
        assert _union_size_counting(G1, G2, coords) == (
            len(u1),
            len(u2),
            len(u1 | u2),
        )


class TestVerifyBoxCount:
    def test_laminated_tiling(self, sys222):
        rep = verify_box_count(laminated_family(sys222))
        assert rep.measure_sum == 1
        assert rep.implied_size == 4
        assert rep.holds

    def test_improper_box_rejected(self, sys222):
        G = BoxFamily(sys222, (Box(sys222, (None, None)),))
        with pytest.raises(NotPartitionError):
            verify_box_count(G)

    def test_incomplete_family_rejected(self, sys222):
        G = BoxFamily(sys222, laminated_family(sys222).boxes[:2])
        with pytest.raises(NotPartitionError):
            verify_box_count(G)

    def test_mixed_cardinality_gives_no_implied_size(self):
        # a size-6 axis carrying independent 2-block and 3-block
        # partitions: the measure identity still holds, the product
        # formula does not
        p2 = make_partition(6, [{0, 1, 2}, {3, 4, 5}])
        p3 = make_partition(6, [{0, 3}, {1, 4}, {2, 5}])
        sys_ = PartitionSystem((6,), ((p2, p3, trivial_partition(6)),))
        G = BoxFamily(
            sys_,
            tuple(Box(sys_, (BlockRef(1, b),)) for b in range(3)),
        )
        rep = verify_box_count(G)
        assert rep.measure_sum == 1
        assert rep.implied_size is None
        assert rep.holds


class TestSuitSwap:
    def test_swap_pile_for_aggregate(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, G.boxes[:2])
        D = BoxFamily(sys222, G.boxes[2:])
        agg = elementary_aggregate(C, 1, 0, 0)
        assert suit_swap_check([C, D], [agg, D])

    def test_identity_swap(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, G.boxes[:2])
        D = BoxFamily(sys222, G.boxes[2:])
        assert suit_swap_check([C, D], [C, D])

    def test_length_mismatch(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, G.boxes[:2])
        with pytest.raises(PreconditionError):
            suit_swap_check([C], [])

    def test_inequivalent_pair_rejected(self, sys222):
        G = laminated_family(sys222)
        C = BoxFamily(sys222, G.boxes[:2])
        D = BoxFamily(sys222, G.boxes[2:])
        with pytest.raises(PreconditionError):
            suit_swap_check([C], [D])
