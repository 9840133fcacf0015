"""Simplicial bases inside ordered rational vector spaces.

Run with ``python3 demos/simplicial_subspaces.py``.
"""

from ordcone import QSpaceCone, dominated_by, is_simplicial_basis, simplicial_extension_search
from ordcone.catalog import quadrant, strict_quadrant

q = QSpaceCone.from_monoid(quadrant(2))
print("quadrant, basis (1,0),(0,1) simplicial:", is_simplicial_basis(q, [(1, 0), (0, 1)]))
print("quadrant, basis (1,0),(1,1) simplicial:", is_simplicial_basis(q, [(1, 0), (1, 1)]))
basis = simplicial_extension_search(q, [(1, 1)], 3)
print("extension of span{(1,1)}:", ["(" + ", ".join(map(str, b)) + ")" for b in basis])

s = strict_quadrant()
print("strict quadrant: (7,-3) dominated by a multiple of (1,2):", dominated_by(s, (7, -3), (1, 2)))
print("strict quadrant: one-dimensional basis (1,1) simplicial:", is_simplicial_basis(s, [(1, 1)]))
for budget in (0, 4, 8):
    print(f"  span{{(1,-1)}} at budget {budget}:", simplicial_extension_search(s, [(1, -1)], budget))
