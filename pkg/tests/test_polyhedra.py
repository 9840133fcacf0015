from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import convex_combination_exists, grid, grid_satisfies, integer_rows
from ordcone.errors import OrdconeError
from ordcone.polyhedra import (AffineFunctional, ConvexDomain, VPolytope, cone_to_halfspaces,
                               eliminate_variable, functional_range, halfspaces_to_hull,
                               hull_membership, hull_to_halfspaces, in_cone, is_bounded,
                               is_satisfiable, project, separate_from_origin,
                               separate_on_hyperplane)


def leq(a, b, dim=None):
    return ConvexDomain.from_leq(a, b, dim)


def rows_of(d: ConvexDomain):
    return [(*c.linear, c.constant) for c in d.constraints]


def same_grid_set(d1: ConvexDomain, d2: ConvexDomain, lo=-3, hi=3) -> bool:
    pts = grid(d1.dim, lo, hi)
    return bool(np.array_equal(grid_satisfies(integer_rows(rows_of(d1)), pts),
                               grid_satisfies(integer_rows(rows_of(d2)), pts)))


TRIANGLE = leq([(1, 1), (-1, 0), (0, -1)], [1, 0, 0])
SQUARE = leq([(1, 0), (-1, 0), (0, 1), (0, -1)], [1, 0, 1, 0])


@st.composite
def domains(draw, max_dim=3, max_cons=6):
    dim = draw(st.integers(1, max_dim))
    k = draw(st.integers(0, max_cons))
    coef = st.integers(-3, 3)
    cons = tuple(AffineFunctional(draw(st.lists(coef, min_size=dim, max_size=dim)), draw(coef))
                 for _ in range(k))
    return ConvexDomain(dim, cons)


@st.composite
def point_sets(draw, max_dim=3, max_pts=6):
    dim = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_pts))
    return VPolytope(dim, tuple(tuple(draw(st.lists(st.integers(-3, 3), min_size=dim, max_size=dim)))
                                for _ in range(n)))


# -- types ------------------------------------------------------------------------------

def test_from_leq_orientation():
    d = leq([(1, 2)], [3])
    (c,) = d.constraints
    assert c.linear == (-1, -2) and c.constant == 3
    assert (1, 1) in d and (2, 1) not in d
    a, b = d.to_leq()
    assert a == [(1, 2)] and b == [3]


def test_dimension_checks():
    with pytest.raises(OrdconeError):
        ConvexDomain(2, (AffineFunctional((1,), 0),))
    with pytest.raises(OrdconeError):
        VPolytope(2, ((1, 2, 3),))
    assert VPolytope(1, ((1,), (0,), (1,))).canonical().points == ((0,), (1,))


# -- elimination ---------------------------------------------------------------------------

def test_eliminate_examples():
    d = eliminate_variable(TRIANGLE, 1)
    assert same_grid_set(d, leq([(1,), (-1,)], [1, 0]))
    whole = eliminate_variable(ConvexDomain(2), 0)
    assert whole.dim == 1 and whole.constraints == ()
    bad = eliminate_variable(leq([(0, -1), (0, 1)], [-1, 0]), 1)
    assert bad.dim == 1 and not is_satisfiable(bad)[0]
    with pytest.raises(OrdconeError, match="index out of range"):
        eliminate_variable(TRIANGLE, 2)


@given(domains(), st.data())
def test_elimination_preserves_satisfiability(d, data):
    j = data.draw(st.integers(0, d.dim - 1))
    assert is_satisfiable(d)[0] == is_satisfiable(eliminate_variable(d, j))[0]


# -- satisfiability ---------------------------------------------------------------------------

def test_satisfiable_examples():
    assert is_satisfiable(ConvexDomain(2)) == (True, (0, 0))
    assert is_satisfiable(leq([(1,), (-1,)], [0, -1])) == (False, None)
    ok, w = is_satisfiable(TRIANGLE)
    assert ok and w in TRIANGLE


def test_witness_rule_is_fixed():
    # x >= 1 unbounded above -> lower + 1; x <= 5 unbounded below -> upper - 1
    assert is_satisfiable(leq([(-1,)], [-1]))[1] == (2,)
    assert is_satisfiable(leq([(1,)], [5]))[1] == (4,)
    assert is_satisfiable(leq([(1,), (-1,)], [3, -1]))[1] == (2,)


@given(domains())
def test_witness_substitution(d):
    ok, w = is_satisfiable(d)
    if ok:
        assert all(c(w) >= 0 for c in d.constraints)
    else:
        assert w is None


# -- projection ----------------------------------------------------------------------------------

def test_project_examples():
    assert project(TRIANGLE, [0, 1]).constraints == TRIANGLE.constraints
    seg = project(SQUARE, [0])
    assert same_grid_set(seg, leq([(1,), (-1,)], [1, 0]))
    half = ConvexDomain(2, (AffineFunctional((1, -1), 0),))
    assert project(half, [1]).constraints == ()


# -- separation ------------------------------------------------------------------------------------

def test_separate_from_origin_examples():
    assert separate_from_origin(ConvexDomain(1, (AffineFunctional((1,), -1),))) == (1,)
    assert separate_from_origin(ConvexDomain(2, (AffineFunctional((1, 1), -2),))) == (F(1, 2), F(1, 2))
    d = ConvexDomain(2, (AffineFunctional((1, 0), 0), AffineFunctional((0, 1), 0),
                         AffineFunctional((1, 1), -3)))
    assert separate_from_origin(d) == (F(1, 3), F(1, 3))


def test_separate_from_origin_errors():
    with pytest.raises(OrdconeError, match="empty domain"):
        separate_from_origin(leq([(1,), (-1,)], [0, -1]))
    with pytest.raises(OrdconeError, match="origin not separated"):
        separate_from_origin(TRIANGLE)


@given(point_sets())
def test_separation_bounds_vertices(v):
    if hull_membership((0,) * v.dim, v):
        return
    p = separate_from_origin(hull_to_halfspaces(v))
    assert all(sum(a * b for a, b in zip(p, x)) >= 1 for x in v.points)


def test_separate_on_hyperplane_examples():
    seg = hull_to_halfspaces(VPolytope(2, ((1, 0), (0, 1))))
    p = separate_on_hyperplane(seg, (1, 1), (2, -1))
    assert 2 * p[0] - p[1] == 0
    assert p[0] >= 1 and p[1] >= 1
    pt = hull_to_halfspaces(VPolytope(3, ((1, 0, 0),)))
    p = separate_on_hyperplane(pt, (1, 1, 1), (0, 1, 0))
    assert p[1] == 0 and p[0] >= 1


def test_separate_on_hyperplane_errors():
    pt = hull_to_halfspaces(VPolytope(1, ((1,),)))
    with pytest.raises(OrdconeError, match="point lies in the domain"):
        separate_on_hyperplane(pt, (1,), (1,))
    seg = hull_to_halfspaces(VPolytope(2, ((1, 0), (0, 1))))
    with pytest.raises(OrdconeError, match="not on hyperplane"):
        separate_on_hyperplane(seg, (1, 1), (1, 1))
    with pytest.raises(OrdconeError, match="not contained in the hyperplane"):
        separate_on_hyperplane(SQUARE, (1, 1), (2, -1))


def test_functional_range():
    assert functional_range(SQUARE, (1, 1)) == (0, 2)
    assert functional_range(leq([(-1,)], [0]), (1,)) == (0, None)


# -- V and H ---------------------------------------------------------------------------------

def test_hull_to_halfspaces_examples():
    seg = hull_to_halfspaces(VPolytope(1, ((0,), (1,))))
    assert same_grid_set(seg, leq([(1,), (-1,)], [1, 0]))
    tri = hull_to_halfspaces(VPolytope(2, ((0, 0), (1, 0), (0, 1))))
    assert same_grid_set(tri, TRIANGLE)
    pin = hull_to_halfspaces(VPolytope(2, ((2, 5),)))
    assert (2, 5) in pin and is_satisfiable(pin.with_constraints([AffineFunctional((1, 0), -3)]))[0] is False
    assert halfspaces_to_hull(pin).points == ((2, 5),)
    with pytest.raises(OrdconeError, match="empty hull"):
        hull_to_halfspaces(VPolytope(2, ()))


def test_hull_to_halfspaces_on_denominator_three_grid():
    v = VPolytope(2, ((0, 0), (1, 0), (0, 1)))
    h = hull_to_halfspaces(v)
    for i in range(-3, 6):
        for j in range(-3, 6):
            x = (F(i, 3), F(j, 3))
            assert (x in h) == convex_combination_exists(x, v.points)


def test_halfspaces_to_hull_examples():
    assert halfspaces_to_hull(leq([(1,), (-1,)], [1, 0])).points == ((0,), (1,))
    assert set(halfspaces_to_hull(SQUARE).points) == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert set(halfspaces_to_hull(TRIANGLE).points) == {(0, 0), (1, 0), (0, 1)}
    assert halfspaces_to_hull(leq([(1,), (-1,)], [0, -1])).points == ()
    with pytest.raises(OrdconeError, match="not a polytope"):
        halfspaces_to_hull(leq([(-1, 0), (0, -1)], [0, 0]))


def test_is_bounded_examples():
    assert not is_bounded(leq([(-1, 0), (0, -1)], [0, 0]))
    assert is_bounded(SQUARE)
    assert is_bounded(leq([(1,), (-1,)], [0, -1]))


def test_hull_membership_examples():
    assert hull_membership((F(1, 2),), VPolytope(1, ((0,), (1,))))
    tri = VPolytope(2, ((0, 0), (1, 0), (0, 1)))
    assert not hull_membership((1, 1), tri)
    assert hull_membership((F(1, 3), F(1, 3)), tri)


@given(point_sets(max_pts=5))
def test_roundtrip_preserves_hull(v):
    w = halfspaces_to_hull(hull_to_halfspaces(v))
    assert all(hull_membership(p, w) for p in v.points)
    assert all(hull_membership(p, v) for p in w.points)
    # every returned point is extreme
    for k, p in enumerate(w.points):
        rest = w.points[:k] + w.points[k + 1:]
        assert not rest or not hull_membership(p, VPolytope(v.dim, rest))


@given(point_sets(max_dim=2, max_pts=4), st.lists(st.fractions(-3, 3, max_denominator=3), min_size=2, max_size=2))
def test_hull_membership_matches_caratheodory_oracle(v, x):
    x = tuple(x[:v.dim])
    assert hull_membership(x, v) == convex_combination_exists(x, v.points)


# -- cones -------------------------------------------------------------------------------------

def test_cone_helpers():
    h = cone_to_halfspaces([(1, 0), (1, 2)], 2)
    assert (3, 1) in h and (0, 1) not in h
    assert in_cone([(2, 0), (1, 1)], (1, F(1, 2)))
    assert not in_cone([(2, 0), (1, 1)], (0, 1))
    assert in_cone([], (0, 0)) and not in_cone([], (1, 0))
    zero = cone_to_halfspaces([], 2)
    assert (0, 0) in zero and (1, 0) not in zero
