"""Multipiles: the families attaining c(G) = |G| - 1.

A multipile is a singleton, or a pile laminated by one partition whose
per-block restrictions are again multipiles with pairwise disjoint hidden
sets on the other axes.  build_multipile constructs one from its
lamination tree; is_multipile recognizes and returns the tree.
"""

from kellerpack import (
    Box,
    Leaf,
    Node,
    TorusSpec,
    TorusTiling,
    arc_system,
    build_multipile,
    c_stats,
    is_multipile,
    pile_rewrite,
    to_box_family,
)

system = arc_system(2, 2, 2)
leaf = Leaf(Box(system, (None, None)))
tree = Node(0, 0, (Node(1, 0, (leaf, leaf)), Node(1, 1, (leaf, leaf))))
G = build_multipile(system, tree)
print("built family of", len(G), "boxes; c =", c_stats(G).c_total)
print("recognized as multipile:", is_multipile(G).verdict)

spec = TorusSpec((2, 2), (2, 2))
grid = to_box_family(TorusTiling(spec, ((0, 0), (0, 2), (2, 0), (2, 2))))
print("\ngrid tiling is a multipile:", is_multipile(grid).verdict)

# rewriting a hidden partition replaces its pile with an aggregate and
# keeps both the realized point set and the Keller property
G2 = pile_rewrite(grid, 0, 0, 0)
print("after one rewrite:", len(G2), "boxes, c =", c_stats(G2).c_total)
