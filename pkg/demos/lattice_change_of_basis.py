"""Integer normal forms and the unimodular maps that reach them.

Run with ``python3 demos/lattice_change_of_basis.py``.
"""

from ordcone import (bezout, hermite_normal_form, kernel_lattice_basis, positive_normalization_lattice,
                     smith_normal_form)

m = ((2, 4, 4), (-6, 6, 12), (10, -4, -16))
h, u = hermite_normal_form(m)
print("Hermite form      ", h)
print("  with U @ M = H, U =", u.matrix)

d, left, right = smith_normal_form(m)
print("Smith diagonal    ", [d[i][i] for i in range(3)])
print("  both transforms unimodular:", abs(left.det()) == 1, abs(right.det()) == 1)

r = (6, 10, 15)
g, coeffs = bezout(r)
print(f"gcd{r} = {g} via coefficients {coeffs}")
print("kernel of r as a lattice:", kernel_lattice_basis(r))

# Pushing a pointed family into the strictly positive orthant by a lattice automorphism.
xs = [(1, -1), (0, 1), (-1, 3)]
phi = positive_normalization_lattice(xs)
print("normalizing map   ", phi.matrix, "det", phi.det())
for x in xs:
    print(f"  {x} -> {phi(x)}")
