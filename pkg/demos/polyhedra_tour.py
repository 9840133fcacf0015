"""Convex domains in exact arithmetic: satisfiability, projection and hull conversions.

Run with ``python3 demos/polyhedra_tour.py``.
"""

from fractions import Fraction

from ordcone import (ConvexDomain, VPolytope, functional_range, halfspaces_to_hull,
                     hull_to_halfspaces, is_satisfiable, project, separate_from_origin)


def fmt(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        inner = ", ".join(fmt(x) for x in v)
        return f"({inner})" if isinstance(v, tuple) else f"[{inner}]"
    return str(v)


def show(title, value):
    print(f"{title:<38} {fmt(value)}")


# A triangle x + y <= 1, x >= 0, y >= 0, given as rows of  a.x <= b.
tri = ConvexDomain.from_leq([(1, 1), (-1, 0), (0, -1)], [1, 0, 0])
show("triangle satisfiable, witness", is_satisfiable(tri))
show("projection onto x (a.x <= b rows)", project(tri, [0]).to_leq())
show("vertices", halfspaces_to_hull(tri).points)

# Tightening x + y >= 2 empties it; the verdict comes without a witness.
show("add x + y >= 2", is_satisfiable(tri.with_constraints(ConvexDomain.from_leq([(-1, -1)], [-2]).constraints)))

# The other direction: facets of a point set, then back to its extreme points.
square = VPolytope(2, ((1, 1), (2, 1), (1, 2), (2, 2), (Fraction(3, 2), Fraction(3, 2))))
h = hull_to_halfspaces(square)
show("facets of the shifted square", h.to_leq())
show("extreme points recovered", halfspaces_to_hull(h).points)
show("range of x + y on it", functional_range(h, (1, 1)))

# A functional p with p.x >= 1 on every point: the origin is strictly separated.
show("separating functional", separate_from_origin(h))
