"""The hat embedding: boxes as cylinders in a block-index product.

Each box maps to the product over the system's nontrivial partitions that
pins its own partitions to its own blocks.  Hats of two boxes are
disjoint exactly when the boxes form a Keller pair, and suit equality
becomes plain union equality, so exact rational measures settle counting
questions without materializing anything large.
"""

from kellerpack import (
    TorusSpec,
    TorusTiling,
    hat_measure,
    suits_equivalent,
    to_box_family,
    verify_box_count,
)

spec = TorusSpec((2, 2), (2, 2))
grid = to_box_family(TorusTiling(spec, ((0, 0), (0, 2), (2, 0), (2, 2))))
laminated = to_box_family(TorusTiling(spec, ((0, 0), (0, 2), (2, 1), (2, 3))))

for K in laminated.boxes:
    print("box", K.factors, "hat measure", hat_measure(K))

report = verify_box_count(laminated)
print("\nmeasure sum:", report.measure_sum,
      "implied family size:", report.implied_size,
      "holds:", report.holds)

print("grid and laminated tile the same polybox:",
      suits_equivalent(grid, laminated))
