import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import monoid_members, multiset_member
from ordcone.catalog import quadrant, seven_gen
from ordcone.errors import OrdconeError
from ordcone.monoid import (FinGenMonoid, algebraic_leq, cone_membership_rational, contains,
                            graded_key, interval, is_unperforated, minimal_elements,
                            non_archimedean_witness, saturation_hilbert_basis,
                            upward_closure_basis)
from ordcone.polyhedra import in_cone

TWO_THREE = FinGenMonoid(1, ((2,), (3,)))


@st.composite
def monoids(draw, max_dim=3, max_gens=4, max_entry=3):
    dim = draw(st.integers(1, max_dim))
    k = draw(st.integers(1, max_gens))
    gen = st.lists(st.integers(0, max_entry), min_size=dim, max_size=dim).filter(any)
    return FinGenMonoid(dim, tuple(tuple(draw(gen)) for _ in range(k)))


def test_construction_rejects_non_normalized():
    with pytest.raises(OrdconeError, match="not normalized"):
        FinGenMonoid(2, ((1, -1),))
    with pytest.raises(OrdconeError, match="not normalized"):
        FinGenMonoid(2, ((0, 0),))
    with pytest.raises(OrdconeError, match="dimension mismatch"):
        FinGenMonoid(2, ((1,),))
    assert FinGenMonoid(2).gens == ()


def test_graded_order():
    assert sorted([(0, 3), (3, 0), (1, 1), (0, 2), (2, 0)], key=graded_key) == \
        [(2, 0), (1, 1), (0, 2), (3, 0), (0, 3)]


# -- membership --------------------------------------------------------------------------------

def test_contains_examples():
    m = FinGenMonoid(2, ((2, 0), (1, 1)))
    ok, cert = contains(m, (3, 1))
    assert ok and cert.coefficients == (1, 1)
    assert contains(m, (1, 0)) == (False, None)
    ok, cert = contains(seven_gen(), (4, 2))
    assert ok and cert.evaluate(seven_gen()) == (4, 2)
    assert contains(m, (-1, 2)) == (False, None)
    with pytest.raises(OrdconeError):
        contains(m, (1, 2, 3))


@given(monoids(max_gens=4), st.data())
def test_contains_matches_multiset_oracle(m, data):
    x = tuple(data.draw(st.lists(st.integers(0, 6), min_size=m.dim, max_size=m.dim)))
    ok, cert = contains(m, x)
    assert ok == multiset_member(m.gens, x)
    if ok:
        assert cert.evaluate(m) == x and all(c >= 0 for c in cert.coefficients)


def test_contains_exhaustive_on_box():
    rng = random.Random(11)
    for _ in range(25):
        dim = rng.randint(1, 3)
        gens = [g for g in (tuple(rng.randint(0, 3) for _ in range(dim)) for _ in range(rng.randint(1, 4))) if any(g)]
        m = FinGenMonoid(dim, tuple(gens))
        members = monoid_members(gens, (6,) * dim)
        for x in itertools.product(range(7), repeat=dim):
            assert contains(m, x)[0] == (x in members)


def test_algebraic_leq_examples():
    q = quadrant(2)
    assert algebraic_leq(q, (1, 2), (1, 2))
    assert algebraic_leq(q, (1, 0), (2, 1))
    assert not algebraic_leq(seven_gen(), (2, 0), (3, 0))


# -- minimal elements and up-sets ------------------------------------------------------------------

def test_minimal_elements_examples():
    assert minimal_elements(TWO_THREE) == [(2,), (3,)]
    assert minimal_elements(FinGenMonoid(2, ((1, 1), (2, 2)))) == [(1, 1)]
    assert minimal_elements(seven_gen()) == list(seven_gen().gens)
    assert minimal_elements(FinGenMonoid(2)) == []


@given(monoids())
def test_minimal_elements_generate_and_are_irreducible(m):
    mins = minimal_elements(m)
    sub = FinGenMonoid(m.dim, tuple(mins))
    assert all(contains(sub, g)[0] for g in m.gens)
    for x in mins:
        for y in monoid_members(m.gens, x):
            if any(y) and y != x:
                assert not contains(m, tuple(a - b for a, b in zip(x, y)))[0]


def test_upward_closure_examples():
    q = quadrant(2)
    assert upward_closure_basis(q, [(3, 1)]) == [(3, 1)]
    assert upward_closure_basis(q, [(1, 1), (2, 2), (0, 3)]) == [(1, 1), (0, 3)]
    assert upward_closure_basis(q, [(2, 2), (1, 1)]) == [(1, 1)]
    assert upward_closure_basis(q, [(1, 1), (1, 1)]) == [(1, 1)]
    with pytest.raises(OrdconeError, match=r"\(1, 0\)"):
        upward_closure_basis(seven_gen(), [(2, 0), (1, 0)])


# -- intervals ----------------------------------------------------------------------------------

def brute_interval(m, a, b):
    c = tuple(y - x for x, y in zip(a, b))
    members = monoid_members(m.gens, c)
    return sorted(tuple(x + y for x, y in zip(a, z)) for z in members
                  if tuple(u - v for u, v in zip(c, z)) in members)


def test_interval_examples():
    q = quadrant(2)
    assert interval(q, (2, 3), (2, 3)) == [(2, 3)]
    assert interval(q, (0, 0), (1, 1)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert interval(seven_gen(), (0, 0), (2, 2)) == [(0, 0), (0, 2), (1, 1), (2, 0), (2, 2)]
    with pytest.raises(OrdconeError, match="empty interval precondition"):
        interval(seven_gen(), (0, 0), (1, 0))


@given(monoids(), st.data())
def test_interval_matches_brute_force(m, data):
    k = [data.draw(st.integers(0, 2)) for _ in m.gens]
    b = tuple(sum(c * g[i] for c, g in zip(k, m.gens)) for i in range(m.dim))
    k2 = [data.draw(st.integers(0, 1)) for _ in m.gens]
    a = tuple(sum(c * g[i] for c, g in zip(k2, m.gens)) for i in range(m.dim))
    b = tuple(x + y for x, y in zip(a, b))
    res = interval(m, a, b)
    assert res == brute_interval(m, a, b)
    for x in res:
        for y in res:
            assert algebraic_leq(m, x, y) == multiset_member(m.gens, tuple(v - u for u, v in zip(x, y)))


# -- saturation ---------------------------------------------------------------------------------

def test_hilbert_basis_examples():
    assert saturation_hilbert_basis(quadrant(2)) == [(1, 0), (0, 1)]
    assert saturation_hilbert_basis(TWO_THREE) == [(1,)]
    assert saturation_hilbert_basis(FinGenMonoid(2, ((2, 0), (1, 1), (0, 2)))) == [(1, 0), (0, 1)]
    assert saturation_hilbert_basis(FinGenMonoid(2, ((1, 0), (1, 3)))) == [(1, 0), (1, 1), (1, 2), (1, 3)]
    assert saturation_hilbert_basis(FinGenMonoid(3, ((1, 0, 0), (0, 1, 0), (1, 1, 2)))) == \
        [(1, 0, 0), (0, 1, 0), (1, 1, 1), (1, 1, 2)]


def test_hilbert_basis_bound(monkeypatch):
    m = quadrant(5)
    with pytest.raises(OrdconeError, match="saturation bound exceeded"):
        saturation_hilbert_basis(m)
    monkeypatch.setenv("ORDCONE_SATURATION_DIM", "5")
    assert len(saturation_hilbert_basis(m)) == 5
    assert len(saturation_hilbert_basis(quadrant(2), max_dim=2)) == 2


@given(monoids(max_dim=2, max_gens=3))
def test_hilbert_basis_generates_saturation(m):
    hb = saturation_hilbert_basis(m)
    sat = FinGenMonoid(m.dim, tuple(hb))
    top = (8,) * m.dim
    for x in itertools.product(*(range(t + 1) for t in top)):
        in_sat = in_cone(m.gens, x)
        assert contains(sat, x)[0] == in_sat
    for h in hb:
        assert in_cone(m.gens, h)


# -- perforation and the Archimedean property ------------------------------------------------------

def test_is_unperforated_examples():
    assert is_unperforated(quadrant(2)) == (True, None, None)
    assert is_unperforated(seven_gen()) == (False, (1, 0), 2)
    assert is_unperforated(TWO_THREE) == (False, (1,), 2)


@given(monoids(max_dim=2, max_gens=3))
def test_unperforated_iff_saturated(m):
    res = is_unperforated(m)
    monoid_hits = monoid_members(m.gens, (6,) * m.dim)
    saturated_on_box = all((x in monoid_hits) == in_cone(m.gens, x)
                           for x in itertools.product(range(7), repeat=m.dim))
    if res.unperforated:
        assert saturated_on_box
    else:
        w, d = res.witness, res.multiplier
        assert not contains(m, w)[0] and contains(m, tuple(d * c for c in w))[0]
        assert all(not contains(m, tuple(k * c for c in w))[0] for k in range(2, d))


def test_cone_membership_rational_examples():
    m = FinGenMonoid(2, ((2, 0), (1, 1)))
    assert cone_membership_rational(m, (0, 0))
    assert cone_membership_rational(m, (1, F(1, 2)))
    assert not cone_membership_rational(m, (-1, 0))
    assert not cone_membership_rational(seven_gen(), (-1, 0))


def check_witness(m, w):
    a, b, d = w
    neg = tuple(-c for c in a)
    assert not contains(m, neg)[0]
    assert contains(m, tuple(d * c for c in neg))[0]
    for r in range(d):
        assert contains(m, tuple(x - r * y for x, y in zip(b, a)))[0]
    # the certified inequality n a <= b for a run of n
    for n in range(3 * d):
        assert algebraic_leq(m, tuple(n * c for c in a), b)


def test_non_archimedean_witness_examples():
    assert non_archimedean_witness(quadrant(2), 6, 8) is None
    w = non_archimedean_witness(seven_gen(), 6, 8)
    assert w == ((-1, 0), (2, 0), 2)
    check_witness(seven_gen(), w)
    w = non_archimedean_witness(TWO_THREE, 6, 8)
    assert w == ((-1,), (2,), 2)
    check_witness(TWO_THREE, w)


@given(monoids(max_dim=2, max_gens=3))
def test_witnesses_are_sound(m):
    w = non_archimedean_witness(m, 4, 5)
    if w is not None:
        check_witness(m, w)


# -- order-theoretic probes ------------------------------------------------------------------------

@given(monoids(), st.data())
def test_weakly_archimedean(m, data):
    ka = [data.draw(st.integers(0, 2)) for _ in m.gens]
    kb = [data.draw(st.integers(0, 3)) for _ in m.gens]
    a = tuple(sum(c * g[i] for c, g in zip(ka, m.gens)) for i in range(m.dim))
    b = tuple(sum(c * g[i] for c, g in zip(kb, m.gens)) for i in range(m.dim))
    if not any(a):
        return
    assert any(not algebraic_leq(m, tuple(n * c for c in a), b) for n in range(sum(b) + 2))


@given(monoids(), st.randoms(use_true_random=False))
def test_greedy_descent_terminates(m, rng):
    k = [rng.randint(0, 3) for _ in m.gens]
    x = tuple(sum(c * g[i] for c, g in zip(k, m.gens)) for i in range(m.dim))
    limit, steps = sum(x), 0
    while True:
        below = [y for y in monoid_members(m.gens, x)
                 if y != x and contains(m, tuple(a - b for a, b in zip(x, y)))[0]]
        if not below:
            break
        x = rng.choice(below)
        steps += 1
        assert steps <= limit
    assert not any(x)
