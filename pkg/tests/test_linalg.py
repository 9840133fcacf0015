from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from oracles import exact_det
from ordcone.errors import OrdconeError
from ordcone.linalg import (UnimodularMap, bezout, hermite_normal_form, identity,
                            integer_kernel_basis, kernel_lattice_basis, lattice_coordinates,
                            matmul, primitive_vector, rational_nullspace, saturated_lattice_basis,
                            smith_normal_form, solve_rational, transpose)

small = st.integers(-9, 9)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def is_row_hnf(h) -> bool:
    last_pivot = -1
    seen_zero = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            seen_zero = True
            continue
        if seen_zero:
            return False
        p = nz[0]
        if p <= last_pivot or row[p] <= 0:
            return False
        if any(not 0 <= h[k][p] < row[p] for k in range(i)):
            return False
        last_pivot = p
    return True


# -- bezout / primitive ----------------------------------------------------------

def test_bezout_examples():
    assert bezout((0, 0)) == (0, (0, 0))
    assert bezout((6, 4)) == (2, (1, -1))
    g, c = bezout((6, 10, 15))
    assert g == 1 and 6 * c[0] + 10 * c[1] + 15 * c[2] == 1


def test_bezout_is_deterministic_fold():
    assert bezout((6, 10, 15)) == (1, (-14, 7, 1))
    assert bezout((-4,)) == (4, (-1,))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=6))
def test_bezout_identity(v):
    g, c = bezout(v)
    assert g >= 0
    assert sum(a * b for a, b in zip(c, v)) == g
    assert all(x % g == 0 for x in v) if g else not any(v)
    expect = 0
    for x in v:
        expect = gcd(expect, x)
    assert g == expect


def test_primitive_vector_examples():
    assert primitive_vector((2, 4, 6)) == (1, 2, 3)
    assert primitive_vector((-3, 6)) == (-1, 2)
    assert primitive_vector((5,)) == (1,)
    with pytest.raises(OrdconeError, match="zero vector has no primitive form"):
        primitive_vector((0, 0))


# -- Hermite ----------------------------------------------------------------------

def test_hnf_identity_and_zero():
    h, u = hermite_normal_form(identity(3))
    assert h == identity(3) and u.matrix == identity(3)
    h, u = hermite_normal_form(((0, 0), (0, 0)))
    assert h == ((0, 0), (0, 0)) and u.matrix == identity(2)


def test_hnf_small_example():
    m = ((2, 4), (1, 1))
    h, u = hermite_normal_form(m)
    assert matmul(u.matrix, m) == h
    assert abs(exact_det(u.matrix)) == 1
    assert is_row_hnf(h)
    # the lattice spanned by the rows has determinant |2 - 4| = 2
    assert h == ((1, 1), (0, 2))


@given(matrices())
def test_hnf_properties(m):
    h, u = hermite_normal_form(m)
    assert matmul(u.matrix, m) == h
    assert abs(exact_det(u.matrix)) == 1
    assert is_row_hnf(h)
    assert sympy.Matrix(m).rank() == sum(1 for r in h if any(r))


# -- Smith ------------------------------------------------------------------------

def test_snf_examples():
    assert smith_normal_form(identity(3))[0] == identity(3)
    assert smith_normal_form(((2, 0), (0, 2)))[0] == ((2, 0), (0, 2))
    d, u, v = smith_normal_form(((1, 1, -2),))
    assert d == ((1, 0, 0),)
    assert matmul(matmul(u.matrix, ((1, 1, -2),)), v.matrix) == d


@given(matrices())
def test_snf_properties(m):
    d, u, v = smith_normal_form(m)
    assert matmul(matmul(u.matrix, m), v.matrix) == d
    assert abs(exact_det(u.matrix)) == 1 and abs(exact_det(v.matrix)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i, row in enumerate(d):
        for j, x in enumerate(row):
            assert x == 0 or i == j
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[:len(nonzero)] == nonzero
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    oracle = [abs(int(x)) for x in invariant_factors(sympy.Matrix(m)) if x]
    assert nonzero == oracle


# -- kernels and lattices --------------------------------------------------------------

def test_kernel_examples():
    assert kernel_lattice_basis((1, 0)) == [(0, 1)]
    assert kernel_lattice_basis((1, 1)) == [(1, -1)]
    ks = kernel_lattice_basis((2, 3, 5))
    assert len(ks) == 2
    _, e = bezout((2, 3, 5))
    assert abs(exact_det(transpose(ks + [e]))) == 1


def test_kernel_rejects_non_primitive():
    with pytest.raises(OrdconeError, match="not primitive"):
        kernel_lattice_basis((2, 4))


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5).filter(lambda v: any(v)))
def test_kernel_basis_completes_to_unimodular(v):
    r = primitive_vector(v)
    ks = kernel_lattice_basis(r)
    assert len(ks) == len(r) - 1
    assert all(sum(a * b for a, b in zip(k, r)) == 0 for k in ks)
    _, e = bezout(r)
    assert abs(exact_det(transpose(ks + [e]))) == 1


@given(matrices(3, 4))
def test_integer_kernel_basis(m):
    n = len(m[0])
    basis = integer_kernel_basis(m, n)
    assert len(basis) == n - sympy.Matrix(m).rank()
    for b in basis:
        assert all(sum(a * x for a, x in zip(row, b)) == 0 for row in m)
    # saturated: the basis extends to a unimodular matrix iff its SNF has unit invariants
    if basis:
        assert all(x == 1 for x in invariant_factors(sympy.Matrix(basis)))


def test_saturated_lattice_and_coordinates():
    basis = saturated_lattice_basis([(2, 0), (0, 2)], 2)
    assert abs(exact_det(basis)) == 1
    line = saturated_lattice_basis([(2, 2)], 2)
    assert len(line) == 1 and lattice_coordinates(line, (3, 3)) is not None
    assert lattice_coordinates([(2, 0)], (1, 0)) is None


def test_rational_helpers():
    assert solve_rational(((1, 1), (1, -1)), (2, 0)) == (1, 1)
    assert solve_rational(((1, 1), (2, 2)), (1, 3)) is None
    ns = rational_nullspace(((1, 2, 3),), 3)
    assert len(ns) == 2 and all(sum(a * b for a, b in zip((1, 2, 3), w)) == 0 for w in ns)


def test_unimodular_map_validation():
    u = UnimodularMap.from_matrix(((2, 1), (1, 1)))
    assert u((1, 0)) == (2, 1)
    assert u.inverse_map()(u((3, -4))) == (3, -4)
    assert u.compose(u.inverse_map()).matrix == identity(2)
    with pytest.raises(OrdconeError):
        UnimodularMap.from_matrix(((2, 0), (0, 1)))


@given(st.tuples(*[st.fractions(min_value=-20, max_value=20, max_denominator=30)] * 3))
def test_rational_field_laws(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert isinstance(a + b, Fraction) and (a + b).denominator > 0
