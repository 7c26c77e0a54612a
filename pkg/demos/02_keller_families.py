"""Keller families of boxes and the complexity statistic.

Two boxes form a Keller pair when some axis assigns them distinct blocks
of one and the same partition.  For a Keller family, every nontrivial
partition is absent, exposed, or hidden on each axis; the c-statistic
sums (blocks - 1) over the hidden ones and is bounded by |G| - 1.
"""

from kellerpack import (
    TorusSpec,
    TorusTiling,
    c_stats,
    classify_partition,
    is_keller_family,
    theorem_b_report,
    to_box_family,
)

spec = TorusSpec((2, 2), (2, 2))
grid = to_box_family(TorusTiling(spec, ((0, 0), (0, 2), (2, 0), (2, 2))))
laminated = to_box_family(TorusTiling(spec, ((0, 0), (0, 2), (2, 1), (2, 3))))

for name, G in [("grid", grid), ("laminated", laminated)]:
    print(f"{name}: Keller family: {is_keller_family(G)}")
    stats = c_stats(G)
    for axis in range(2):
        for p in G.system.nontrivial_indices(axis):
            status = classify_partition(G, axis, p)
            print(f"  axis {axis} partition {p}: {status.name.lower()}")
    rep = theorem_b_report(G)
    print(f"  c(G) = {stats.c_total}, |G| - 1 = {rep.size - 1}, "
          f"equality: {rep.equality}")
    print()
