"""From generators and relations to a concrete cone in Z^n.

Three positive generators a, b, c with a + b = 2c.  Run with
``python3 demos/presentations.py``.
"""

from ordcone import (GroupPresentation, OrdconeError, group_normal_form, induced_subgroup, is_directed,
                     realize)
from ordcone.catalog import a_plus_b_eq_2c

p = a_plus_b_eq_2c().presentation
print("presentation:", p)
print("group normal form (rank, torsion):", group_normal_form(p))

g = realize(p)
print("realized rank", g.rank, "cone generators", g.cone.gens)
print("images of a, b, c:", g.gen_images)
print("directed:", is_directed(g))

# The subgroup generated by the images of a and c inherits a cone of its own.
h = induced_subgroup(g, [g.gen_images[0], g.gen_images[2]], 8)
print("subgroup on a, c: rank", h.rank, "cone", h.cone.gens)

for bad in (GroupPresentation(2, ((2, 0),), ((1, 0), (0, 1))),
            GroupPresentation(1, (), ((1,), (-1,)))):
    try:
        realize(bad)
    except OrdconeError as exc:
        print("rejected:", exc)
