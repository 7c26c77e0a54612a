"""Cube tilings of discrete tori and their symmetry-reduced census.

A unit cube on a torus with sides m at offset resolution q occupies q
consecutive cells per axis.  p(T) counts the distinct fractional offset
classes used per axis; for uniform sides it is bounded by
(n^d - 1)/(n - 1), with equality exactly on multipiles.
"""

from kellerpack import (
    TorusSpec,
    census,
    enumerate_tilings,
    extremal_recipe,
    laminated_construction,
    p_params,
    theorem_c_report,
)

spec = TorusSpec((2, 2), (2, 2))
for t in enumerate_tilings(spec):
    rep = theorem_c_report(t)
    print("tiling", t.starts, "p =", rep.p_total,
          "bound =", rep.bound, "multipile:", rep.is_multipile)

row = census(spec)
print("\ncensus:", row.tilings_total, "orbits, histogram", row.p_histogram)

big = TorusSpec((2, 2, 2), (4, 4, 4))
witness = laminated_construction(big, extremal_recipe(big, (0, 1, 2)))
print("\nextremal 3d witness: p =", p_params(witness).total,
      "(bound 7)")

mixed = census(TorusSpec((2, 3), (6, 6)))
print("\nmixed sides (2,3): max_p =", mixed.max_p,
      "conjectural bound =", mixed.bound,
      "attaining tilings all multipile:", all(mixed.attaining_multipile))
