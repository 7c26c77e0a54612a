"""Partitions of a finite axis, their join, and independence.

A partition system fixes, per axis, a family of pairwise independent
partitions: independent means the finest common coarsening is the trivial
one-block partition.  Arc systems discretize a circle into q rotated
interval partitions and are the backbone of the torus-tiling bridge.
"""

from kellerpack import arc_system, independent, join, make_partition

p1 = make_partition(4, [{0, 1}, {2, 3}])
p2 = make_partition(4, [{0, 2}, {1, 3}])
print("p1 blocks:", [set(b) for b in p1.block_sets()])
print("p2 blocks:", [set(b) for b in p2.block_sets()])
print("join is trivial:", join(p1, p2).is_trivial)
print("independent:", independent(p1, p2))

p3 = make_partition(4, [{0}, {1}, {2, 3}])
print("\njoin of", [set(b) for b in p3.block_sets()], "with p1:",
      [set(b) for b in join(p3, p1).block_sets()])

system = arc_system(2, 2, 2)
print("\narc system, 2 arcs of length 2 per axis, resolution 2:")
for axis, family in enumerate(system.families):
    for p in family:
        tag = "trivial" if p.is_trivial else "arcs"
        print(f"  axis {axis} {tag}:", [sorted(b) for b in p.block_sets()])
