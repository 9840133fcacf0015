"""Finitely presented partially ordered abelian groups.

A presentation lists ``m`` generators, integer relations ``sum r_i g_i = 0``
and declared positive elements.  :func:`realize` turns it into a torsion-free
group ``Z^n`` whose positive cone is a normalized :class:`FinGenMonoid`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import NamedTuple, Sequence

from .errors import OrdconeError
from .linalg import (IntVector, RatVector, UnimodularMap, as_int_vector, as_rat_vector,
                     bezout, clear_denominators, dot, inverse, kernel_lattice_basis,
                     lattice_basis, lattice_coordinates, primitive_vector,
                     rational_nullspace, smith_normal_form, solve_rational, transpose)
from .monoid import (FinGenMonoid, algebraic_leq, contains, graded_key, members_in_box,
                     minimal_elements)
from .polyhedra import (AffineFunctional, ConvexDomain, VPolytope, cone_to_halfspaces,
                        halfspaces_to_hull, hull_membership, hull_to_halfspaces, in_cone,
                        separate_from_origin)


@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``g_0..g_{m-1}`` with relations and declared positive elements."""

    num_gens: int
    equalities: tuple[IntVector, ...] = ()
    positives: tuple[IntVector, ...] = ()

    def __post_init__(self):
        eqs = tuple(as_int_vector(r) for r in self.equalities)
        pos = tuple(as_int_vector(s) for s in self.positives)
        for v in eqs + pos:
            if len(v) != self.num_gens:
                raise OrdconeError(
                    f"dimension mismatch: relation {v} for {self.num_gens} generators")
        object.__setattr__(self, "equalities", eqs)
        object.__setattr__(self, "positives", pos)


@dataclass(frozen=True)
class NormalizedGroup:
    """``Z^rank`` ordered by a normalized cone.

    ``change_of_basis`` maps raw coordinates (those produced before
    normalization) to normalized ones and carries ``raw_cone_gens`` onto
    ``cone.gens``.  ``gen_images`` are the images of the presentation's
    generators in normalized coordinates.
    """

    rank: int
    cone: FinGenMonoid
    change_of_basis: UnimodularMap
    gen_images: tuple[IntVector, ...]
    raw_cone_gens: tuple[IntVector, ...] = field(default=())

    @classmethod
    def from_monoid(cls, monoid: FinGenMonoid) -> "NormalizedGroup":
        n = monoid.dim
        return cls(n, monoid, UnimodularMap.identity(n),
                   tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), monoid.gens)


class NormalForm(NamedTuple):
    rank: int
    torsion: list[int]


def _relation_smith(p: GroupPresentation):
    if not p.equalities:
        return 0, [], UnimodularMap.identity(p.num_gens)
    d, _, v = smith_normal_form(p.equalities, p.num_gens)
    diag = [d[i][i] for i in range(min(len(d), p.num_gens))]
    nonzero = [x for x in diag if x]
    return len(nonzero), nonzero, v


def group_normal_form(p: GroupPresentation) -> NormalForm:
    """Rank and torsion invariants of ``Z^m`` modulo the relations."""
    s, divisors, _ = _relation_smith(p)
    return NormalForm(p.num_gens - s, [x for x in divisors if x > 1])


def _check_cone_input(xs: Sequence[Sequence]) -> int:
    if not xs:
        raise OrdconeError("empty input: need at least one vector")
    n = len(xs[0])
    for x in xs:
        if len(x) != n:
            raise OrdconeError("dimension mismatch between input vectors")
        if not any(x):
            raise OrdconeError("zero vector in input")
    if hull_membership((0,) * n, VPolytope(n, tuple(xs))):
        raise OrdconeError("0 lies in the convex hull of the input")
    return n


def _separating_integer_functional(xs: Sequence[Sequence], n: int) -> IntVector:
    p = separate_from_origin(hull_to_halfspaces(VPolytope(n, tuple(xs))))
    return primitive_vector(clear_denominators(p))


def positive_normalization_lattice(xs: Sequence[Sequence[int]]) -> UnimodularMap:
    """Automorphism ``U`` of ``Z^n`` with ``U x`` in ``(Z++)^n`` for every ``x``.

    A primitive functional ``r`` with ``r.x >= 1`` on the inputs is completed
    to a basis ``e_0..e_{n-2}, e`` (kernel basis plus a Bezout vector with
    ``r.e = 1``).  In coordinates ``x = sum xi_i e_i + (r.x) e``, replacing
    ``e`` by ``f = e - lam (e_0 + ... + e_{n-2})`` raises every ``xi_i`` by
    ``lam (r.x)``; the least integer ``lam`` making all of them positive is
    used.  ``U`` is the inverse of the column matrix ``[e_0 .. e_{n-2} f]``.
    """
    xs = [as_int_vector(x) for x in xs]
    n = _check_cone_input(xs)
    r = _separating_integer_functional(xs, n)
    _, e = bezout(r)
    ks = kernel_lattice_basis(r)
    cols = ks + [e]
    worst = None
    for x in xs:
        t = dot(r, x)
        xi = solve_rational(transpose(cols), x)
        for c in xi[:-1]:
            q = Fraction(-c, t)
            worst = q if worst is None else max(worst, q)
    lam = 0 if worst is None else floor(worst) + 1
    f = tuple(ei - lam * sum(k[i] for k in ks) for i, ei in enumerate(e))
    basis_cols = transpose(ks + [f])
    inv = tuple(tuple(int(c) for c in row) for row in inverse(basis_cols))
    return UnimodularMap(inv, tuple(tuple(row) for row in basis_cols))


def positive_normalization_vs(xs: Sequence[Sequence]) -> tuple[tuple[Fraction, ...], ...]:
    """Invertible rational matrix sending every ``x`` into the open positive orthant.

    Inputs already strictly positive get the identity.
    """
    xs = [as_rat_vector(x) for x in xs]
    n = _check_cone_input(xs)
    ident = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    if all(c > 0 for x in xs for c in x):
        return ident
    r = separate_from_origin(hull_to_halfspaces(VPolytope(n, tuple(xs))))
    j = next(i for i, c in enumerate(r) if c)
    e = tuple(Fraction(int(i == j)) / r[j] for i in range(n))
    ks = rational_nullspace([r], n)
    cols = ks + [e]
    qs = []
    for x in xs:
        t = dot(r, x)
        xi = solve_rational(transpose(cols), x)
        qs += [-c / t for c in xi[:-1]]
    lam = max(qs, default=Fraction(0)) + 1
    f = tuple(ei - lam * sum(k[i] for k in ks) for i, ei in enumerate(e))
    return inverse(transpose(ks + [f]))


def realize(p: GroupPresentation) -> NormalizedGroup:
    """The presented group as ``Z^rank`` with a normalized positive cone."""
    s, divisors, v = _relation_smith(p)
    torsion = [x for x in divisors if x > 1]
    if torsion:
        raise OrdconeError(f"torsion-free required: torsion invariants {torsion}")
    n = p.num_gens - s

    def raw(x):
        return tuple(dot(x, [v.matrix[i][j] for i in range(p.num_gens)]) for j in range(s, p.num_gens))

    raw_gens = [raw(tuple(int(i == j) for j in range(p.num_gens))) for i in range(p.num_gens)]
    raw_cone = [y for y in (raw(x) for x in p.positives) if any(y)]
    if raw_cone and hull_membership((0,) * n, VPolytope(n, tuple(raw_cone))):
        raise OrdconeError(
            "presented order is not antisymmetric: 0 lies in the hull of positive generators")
    phi = positive_normalization_lattice(raw_cone) if raw_cone else UnimodularMap.identity(n)
    cone = FinGenMonoid(n, tuple(phi(y) for y in raw_cone))
    return NormalizedGroup(n, cone, phi, tuple(phi(y) for y in raw_gens), tuple(raw_cone))


# -- characterization checks ---------------------------------------------------

@dataclass(frozen=True)
class FPReport:
    finitely_generated: bool
    min_finite_generating: bool
    well_founded: bool
    weakly_archimedean: bool
    minimal: tuple[IntVector, ...] = ()

    @property
    def passed(self) -> bool:
        return (self.finitely_generated and self.min_finite_generating
                and self.well_founded and self.weakly_archimedean)


def _random_element(rng: random.Random, gens: Sequence[IntVector], dim: int, height: int) -> IntVector:
    x = (0,) * dim
    for g in gens:
        k = rng.randint(0, height)
        x = tuple(a + k * b for a, b in zip(x, g))
    return x


def verify_fp_conditions(g: NormalizedGroup, probes: int = 20, seed: int = 0) -> FPReport:
    """Check the conditions characterizing finitely presented ordered groups.

    The cone is finitely generated by construction.  Its irreducible elements
    must be finite and generate it.  ``probes`` greedy random descents from
    random elements must stop within the coordinate-sum of the start, and
    random pairs ``a != 0, b`` must have ``n a`` not below ``b`` for some
    ``n <= sum(b) + 1``.
    """
    rng = random.Random(seed)
    m = g.cone
    fg = all(len(x) == g.rank for x in m.gens)
    mins = minimal_elements(m)
    min_monoid = FinGenMonoid(m.dim, tuple(mins))
    generating = all(contains(min_monoid, x)[0] for x in m.gens)

    well_founded = True
    weak_arch = True
    if m.gens:
        for _ in range(probes):
            x = _random_element(rng, m.gens, m.dim, 3)
            limit, steps = sum(x), 0
            while True:
                below = [h for h in mins if all(a >= b for a, b in zip(x, h))
                         and contains(m, tuple(a - b for a, b in zip(x, h)))[0]]
                if not below:
                    break
                h = rng.choice(below)
                x = tuple(a - b for a, b in zip(x, h))
                steps += 1
                if steps > limit:
                    well_founded = False
                    break
        for _ in range(probes):
            a = _random_element(rng, m.gens, m.dim, 2)
            if not any(a):
                a = m.gens[0]
            b = _random_element(rng, m.gens, m.dim, 3)
            if not any(not algebraic_leq(m, tuple(n * c for c in a), b)
                       for n in range(sum(b) + 2)):
                weak_arch = False
    return FPReport(fg, generating, well_founded, weak_arch, tuple(mins))


def is_directed(g: NormalizedGroup) -> bool:
    """Whether the cone generates ``Z^rank`` as a group."""
    if g.rank == 0:
        return True
    if not g.cone.gens:
        return False
    d, _, _ = smith_normal_form(g.cone.gens, g.rank)
    diag = [d[i][i] for i in range(min(len(d), g.rank))]
    return len(diag) == g.rank and all(x == 1 for x in diag)


# -- induced subgroups -----------------------------------------------------------

class Inconclusive(NamedTuple):
    """The box was too small to certify the induced cone."""

    offending: IntVector
    reason: str


def _extreme_rays_of_section(cone: ConvexDomain, basis: Sequence[IntVector]) -> list[RatVector]:
    """Extreme rays (in basis coordinates) of ``span(basis)`` intersected with ``cone``.

    ``cone`` must lie in the nonnegative orthant, so the slice where the
    coordinate sum equals 1 is a polytope whose vertices are the rays.
    """
    k = len(basis)
    cons = []
    for c in cone.constraints:
        lin = tuple(sum(c.linear[t] * b[t] for t in range(len(b))) for b in basis)
        cons.append(AffineFunctional(lin, c.constant))
    total = tuple(sum(b) for b in basis)
    cons.append(AffineFunctional(total, -1))
    cons.append(AffineFunctional(tuple(-x for x in total), 1))
    return list(halfspaces_to_hull(ConvexDomain(k, tuple(cons))).points)


def induced_subgroup(g: NormalizedGroup, hgens: Sequence[Sequence[int]], box: int
                     ) -> NormalizedGroup | Inconclusive:
    """The subgroup generated by ``hgens`` with the induced order.

    Cone elements inside ``[0, box]^rank`` that lie in the subgroup are
    enumerated and their irreducible elements extracted.  The answer is
    returned only when no irreducible touches the box boundary and their
    rational cone covers every extreme ray of ``span(H) & cone``; otherwise
    the smallest offending element is reported.
    """
    hgens = [as_int_vector(h) for h in hgens]
    if any(len(h) != g.rank for h in hgens):
        raise OrdconeError("dimension mismatch between subgroup generator and group")
    basis = lattice_basis(hgens, g.rank)
    k = len(basis)
    members = members_in_box(g.cone, (box,) * g.rank)
    in_h = sorted((x for x in members if any(x) and lattice_coordinates(basis, x) is not None),
                  key=graded_key)
    in_h_set = set(in_h)
    irreducible = [x for x in in_h
                   if not any(y != x and tuple(a - b for a, b in zip(x, y)) in in_h_set
                              for y in in_h if all(a <= b for a, b in zip(y, x)))]
    touching = [x for x in irreducible if any(c == box for c in x)]
    if touching:
        return Inconclusive(touching[0], "irreducible element on the box boundary")
    if k and g.cone.gens:
        rays = _extreme_rays_of_section(cone_to_halfspaces(g.cone.gens, g.rank), basis)
        coords = [lattice_coordinates(basis, x) for x in irreducible]
        for ray in rays:
            if not in_cone(coords, ray):
                prim = primitive_vector(clear_denominators(ray))
                x = tuple(sum(c * b[t] for c, b in zip(prim, basis)) for t in range(g.rank))
                mult = 1
                while not contains(g.cone, tuple(mult * c for c in x))[0]:
                    mult += 1
                return Inconclusive(tuple(mult * c for c in x), "extreme ray not reached inside the box")
    raw = [lattice_coordinates(basis, x) for x in irreducible]
    phi = positive_normalization_lattice(raw) if raw else UnimodularMap.identity(k)
    cone = FinGenMonoid(k, tuple(phi(y) for y in raw))
    images = tuple(phi(lattice_coordinates(basis, h)) for h in hgens)
    return NormalizedGroup(k, cone, phi, images, tuple(raw))

