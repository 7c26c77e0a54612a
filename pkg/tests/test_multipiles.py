import random
from itertools import product

import pytest

from kellerpack import (
    BlockRef,
    Box,
    BoxFamily,
    Leaf,
    Node,
    TorusSpec,
    TorusTiling,
    arc_system,
    build_multipile,
    c_stats,
    extremal_p_value,
    is_multipile,
    realize,
    to_box_family,
)
from kellerpack.errors import DisjointnessError, IllFormedTreeError, NotKellerError
from kellerpack.serialization import tree_from_obj, tree_to_obj


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


class TestIsMultipile:
    def test_singleton(self, sys222):
        G = BoxFamily(sys222, (Box(sys222, (BlockRef(0, 0), BlockRef(1, 1))),))
        res = is_multipile(G)
        assert res.verdict and isinstance(res.tree, Leaf)

    def test_laminated_tiling_is_multipile(self, sys222):
        res = is_multipile(laminated_family(sys222))
        assert res.verdict
        assert isinstance(res.tree, Node)
        assert (res.tree.axis, res.tree.partition) == (0, 0)
        # the two column piles laminate axis 1 by different partitions
        child_partitions = {child.partition for child in res.tree.children}
        assert child_partitions == {0, 1}

    def test_grid_tiling_is_not(self, sys222):
        G = grid_family(sys222)
        # both columns hide the same axis-1 partition
        cols = [c_stats(BoxFamily(sys222, G.boxes[:2])),
                c_stats(BoxFamily(sys222, G.boxes[2:]))]
        assert cols[0].hidden[1] == cols[1].hidden[1] != frozenset()
        assert not is_multipile(G).verdict

    def test_requires_keller(self, sys222):
        K = Box(sys222, (BlockRef(0, 0), BlockRef(0, 0)))
        L = Box(sys222, (BlockRef(1, 0), BlockRef(1, 0)))
        with pytest.raises(NotKellerError):
            is_multipile(BoxFamily(sys222, (K, L)))


class TestBuildMultipile:
    def test_leaf_full_box(self, sys222):
        G = build_multipile(sys222, Leaf(Box(sys222, (None, None))))
        assert len(G) == 1
        assert realize(G).is_full()

    def test_extremal_tree(self, sys222):
        leaf = Leaf(Box(sys222, (None, None)))
        tree = Node(
            0,
            0,
            (
                Node(1, 0, (leaf, leaf)),
                Node(1, 1, (leaf, leaf)),
            ),
        )
        G = build_multipile(sys222, tree)
        assert BoxFamily(sys222, tuple(sorted(G.boxes, key=str))).boxes == tuple(
            sorted(laminated_family(sys222).boxes, key=str)
        )

    def test_sibling_partition_reuse_rejected(self, sys222):
        leaf = Leaf(Box(sys222, (None, None)))
        tree = Node(
            0,
            0,
            (
                Node(1, 0, (leaf, leaf)),
                Node(1, 0, (leaf, leaf)),
            ),
        )
        with pytest.raises(DisjointnessError):
            build_multipile(sys222, tree)

    def test_wrong_child_count_rejected(self, sys222):
        leaf = Leaf(Box(sys222, (None, None)))
        with pytest.raises(IllFormedTreeError):
            build_multipile(sys222, Node(0, 0, (leaf,)))

    def test_round_trip_randomized(self):
        rng = random.Random(23)
        for _ in range(40):
            d = rng.randint(1, 3)
            sys_ = arc_system(2, 2, d)
            tree = _random_tree(sys_, rng, axes=list(range(d)), depth=0)
            G = build_multipile(sys_, tree)
            res = is_multipile(G)
            assert res.verdict
            assert c_stats(G).c_total == len(G) - 1

    def test_realization_is_a_box(self):
        # every multipile is a suit for a box: the realized set equals the
        # product of its per-axis projections
        rng = random.Random(29)
        for _ in range(20):
            d = rng.randint(1, 2)
            sys_ = arc_system(2, 2, d)
            tree = _random_tree(sys_, rng, axes=list(range(d)), depth=0)
            G = build_multipile(sys_, tree)
            P = realize(G)
            projections = []
            for axis in range(d):
                proj = sorted({pt[axis] for pt in P.points()})
                projections.append(proj)
            expected = {pt for pt in product(*projections)}
            assert set(P.points()) == expected


def _random_tree(sys_, rng, axes, depth):
    """Random well-formed multipile tree; sibling nodes take distinct
    partitions on their shared axis so the disjointness condition holds."""
    if not axes or depth >= 3 or rng.random() < 0.3:
        return Leaf(Box(sys_, tuple(None for _ in range(sys_.dimension))))
    axis = rng.choice(axes)
    remaining = [a for a in axes if a != axis]
    p = rng.choice(sys_.nontrivial_indices(axis))
    n = sys_.partition(axis, p).n_blocks
    children = []
    used: dict[int, set[int]] = {}
    for _ in range(n):
        child = _random_subtree(sys_, rng, remaining, depth + 1, used)
        children.append(child)
    return Node(axis, p, tuple(children))


def _random_subtree(sys_, rng, axes, depth, used):
    if not axes:
        return Leaf(Box(sys_, tuple(None for _ in range(sys_.dimension))))
    axis = axes[0]
    options = [
        p
        for p in sys_.nontrivial_indices(axis)
        if p not in used.get(axis, set())
    ]
    if not options:
        return Leaf(Box(sys_, tuple(None for _ in range(sys_.dimension))))
    p = rng.choice(options)
    used.setdefault(axis, set()).add(p)
    leaf = Leaf(Box(sys_, tuple(None for _ in range(sys_.dimension))))
    n = sys_.partition(axis, p).n_blocks
    return Node(axis, p, tuple(leaf for _ in range(n)))


class TestEqualityLaw:
    def test_equality_iff_multipile_small_exhaustive(self):
        # all Keller families of up to 3 proper boxes in a 2x2 system
        sys_ = arc_system(2, 1, 2)
        boxes = [
            Box(sys_, (BlockRef(0, a), BlockRef(0, b)))
            for a in range(2)
            for b in range(2)
        ]
        from itertools import combinations

        from kellerpack import is_keller_family, theorem_b_report

        for r in (1, 2, 3, 4):
            for combo in combinations(boxes, r):
                G = BoxFamily(sys_, combo)
                if not is_keller_family(G):
                    continue
                rep = theorem_b_report(G)
                assert rep.inequality_holds
                assert rep.equality == is_multipile(G).verdict


class TestExtremalPValue:
    def test_uniform(self):
        assert extremal_p_value((2, 2), (0, 1)) == 3
        assert extremal_p_value((3, 3), (0, 1)) == 4
        assert extremal_p_value((2, 2, 2), (0, 1, 2)) == 7

    def test_uniform_equals_geometric_sum(self):
        for n in (2, 3, 4):
            for d in (1, 2, 3):
                assert extremal_p_value((n,) * d, tuple(range(d))) == (
                    n**d - 1
                ) // (n - 1)

    def test_mixed_ordering(self):
        assert extremal_p_value((2, 3), (1, 0)) == 4
        assert extremal_p_value((2, 3), (0, 1)) == 3

    def test_bad_ordering(self):
        with pytest.raises(ValueError):
            extremal_p_value((2, 2), (0, 0))


def test_tree_json_round_trip(sys222):
    leaf = Leaf(Box(sys222, (None, None)))
    tree = Node(0, 0, (Node(1, 0, (leaf, leaf)), Node(1, 1, (leaf, leaf))))
    obj = tree_to_obj(tree)
    assert tree_from_obj(obj, sys222) == tree
