"""Finitely generated submonoids of Z^n in normalized position.

Normalized means every generator is a nonzero vector of (Z+)^n.  Under that
assumption the algebraic order refines the componentwise order, so every
question about an element ``a`` only involves the finite box ``[0, a]``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations, product
from typing import NamedTuple, Sequence

from .errors import OrdconeError
from .linalg import (IntVector, as_int_vector, as_rat_vector, box_points, rank,
                     saturated_lattice_basis, smith_normal_form, solve_rational,
                     transpose, vec_add, vec_sub)
from .polyhedra import cone_to_halfspaces, in_cone

DEFAULT_SATURATION_DIM = 4


def graded_key(v: Sequence[int]):
    """Sort key: total degree first, then the first coordinate largest.

    This is the order the library uses for every generator list it returns,
    e.g. ``(2,0) < (1,1) < (0,2) < (3,0)``.
    """
    return (sum(v), tuple(-x for x in v))


def _leq_c(u: Sequence[int], v: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(u, v))


@dataclass(frozen=True)
class FinGenMonoid:
    """Submonoid of Z^dim generated by nonzero vectors of the nonnegative orthant."""

    dim: int
    gens: tuple[IntVector, ...] = ()

    def __post_init__(self):
        gens = tuple(as_int_vector(g) for g in self.gens)
        for g in gens:
            if len(g) != self.dim:
                raise OrdconeError(f"dimension mismatch: generator {g} in dimension {self.dim}")
            if any(x < 0 for x in g) or not any(g):
                raise OrdconeError(
                    f"not normalized: generator {g} must be a nonzero vector of (Z+)^{self.dim}")
        object.__setattr__(self, "gens", gens)

    @property
    def zero(self) -> IntVector:
        return (0,) * self.dim


class MembershipCertificate(NamedTuple):
    """Multiplicity of each generator in a representation of the element."""

    coefficients: tuple[int, ...]

    def evaluate(self, monoid: FinGenMonoid) -> IntVector:
        total = monoid.zero
        for k, g in zip(self.coefficients, monoid.gens):
            total = vec_add(total, tuple(k * x for x in g))
        return total


class _BoxTable:
    """Reachability of every point of ``[0, top]`` from 0 by generator steps."""

    def __init__(self, monoid: FinGenMonoid, top: Sequence[int],
                 gens: Sequence[IntVector] | None = None):
        self.top = tuple(top)
        gens = monoid.gens if gens is None else tuple(gens)
        usable = [(i, g) for i, g in enumerate(gens) if _leq_c(g, self.top)]
        self.parent: dict[IntVector, int] = {}
        self.members: set[IntVector] = {monoid.zero}
        # lexicographic order visits x - g before x
        for x in box_points(self.top):
            if not any(x):
                continue
            for i, g in usable:
                if _leq_c(g, x) and vec_sub(x, g) in self.members:
                    self.members.add(x)
                    self.parent[x] = i
                    break
        self._ngens = len(gens)
        self._gens = gens

    def __contains__(self, x) -> bool:
        return tuple(x) in self.members

    def certificate(self, x: IntVector) -> MembershipCertificate:
        coeffs = [0] * self._ngens
        while any(x):
            i = self.parent[x]
            coeffs[i] += 1
            x = vec_sub(x, self._gens[i])
        return MembershipCertificate(tuple(coeffs))


def contains(monoid: FinGenMonoid, a: Sequence[int]) -> tuple[bool, MembershipCertificate | None]:
    """Membership of ``a`` with a certificate, by dynamic programming on ``[0, a]``."""
    a = as_int_vector(a)
    if len(a) != monoid.dim:
        raise OrdconeError(f"dimension mismatch: vector of length {len(a)} in dimension {monoid.dim}")
    if any(x < 0 for x in a):
        return False, None
    table = _BoxTable(monoid, a)
    if a in table:
        return True, table.certificate(a)
    return False, None


def algebraic_leq(monoid: FinGenMonoid, x: Sequence[int], y: Sequence[int]) -> bool:
    """``x <= y`` in the algebraic order, i.e. ``y - x`` lies in the monoid."""
    if len(x) != len(y):
        raise OrdconeError("length mismatch")
    return contains(monoid, vec_sub(as_int_vector(y), as_int_vector(x)))[0]


def minimal_elements(monoid: FinGenMonoid) -> list[IntVector]:
    """Irreducible elements, i.e. the minimal nonzero elements of the monoid.

    Only generators can be irreducible; a generator ``g`` is reducible when
    some ``u`` with ``0 < u < g`` componentwise has both ``u`` and ``g - u``
    in the monoid.
    """
    result = []
    for g in dict.fromkeys(monoid.gens):
        table = _BoxTable(monoid, g)
        reducible = any(u != g and any(u) and vec_sub(g, u) in table for u in table.members)
        if not reducible:
            result.append(g)
    return sorted(result, key=graded_key)


def upward_closure_basis(monoid: FinGenMonoid, xs: Sequence[Sequence[int]]) -> list[IntVector]:
    """The elements of ``xs`` minimal under the algebraic order.

    The returned list generates the same up-set as ``xs``; of exact
    duplicates only the first occurrence is kept.
    """
    xs = [as_int_vector(x) for x in xs]
    for x in xs:
        if not contains(monoid, x)[0]:
            raise OrdconeError(f"element not in monoid: {x}")
    unique = list(dict.fromkeys(xs))
    return [x for x in unique
            if not any(y != x and algebraic_leq(monoid, y, x) for y in unique)]


def interval(monoid: FinGenMonoid, a: Sequence[int], b: Sequence[int]) -> list[IntVector]:
    """All ``x`` with ``a <= x <= b``, sorted lexicographically.

    Shift to ``[0, c]`` with ``c = b - a``.  Each generator ``g_i`` can occur
    at most ``n_i`` times, the largest ``n`` with ``n g_i <= c``; the sums
    over ``prod [0, n_i]`` are filtered by ``x <= c`` and shifted back.
    """
    a, b = as_int_vector(a), as_int_vector(b)
    c = vec_sub(b, a)
    if not contains(monoid, c)[0]:
        raise OrdconeError(f"empty interval precondition: {a} is not below {b}")
    table = _BoxTable(monoid, c)
    bounds = []
    for g in monoid.gens:
        n = 0
        while vec_sub(c, tuple((n + 1) * x for x in g)) in table:
            n += 1
        bounds.append(n)
    found: set[IntVector] = set()

    def walk(i: int, partial: IntVector):
        if not _leq_c(partial, c):
            return
        if i == len(monoid.gens):
            found.add(partial)
            return
        g = monoid.gens[i]
        for k in range(bounds[i] + 1):
            walk(i + 1, vec_add(partial, tuple(k * x for x in g)))

    walk(0, monoid.zero)
    inside = [x for x in found if vec_sub(c, x) in table]
    return sorted(vec_add(x, a) for x in inside)


# -- saturation ---------------------------------------------------------------

def saturation_bound() -> int:
    raw = os.environ.get("ORDCONE_SATURATION_DIM")
    if raw is None:
        return DEFAULT_SATURATION_DIM
    try:
        return int(raw)
    except ValueError:
        raise OrdconeError(f"ORDCONE_SATURATION_DIM must be an integer, got {raw!r}") from None


def _parallelepiped_points(rays: Sequence[IntVector], basis: Sequence[IntVector]) -> list[IntVector]:
    """Lattice points ``sum q_i r_i`` with ``q`` in ``[0,1)^k`` (lattice = span of ``basis``)."""
    bt = transpose(basis)
    # coordinates of each ray in the lattice basis: rays = A^T basis
    coords = [solve_rational(bt, r) for r in rays]
    a = [[int(c) for c in col] for col in coords]  # rows = rays in basis coordinates
    k = len(rays)
    at = transpose(a)  # columns are rays: y = at q
    d, u, _ = smith_normal_form(at)
    diag = [d[i][i] for i in range(k)]
    uinv = u.inverse
    points = []
    for z in product(*(range(x) for x in diag)):
        y = tuple(sum(uinv[i][j] * z[j] for j in range(k)) for i in range(k))
        q = solve_rational(at, y)
        frac = [x - (x.numerator // x.denominator) for x in q]
        y2 = [sum(at[i][j] * frac[j] for j in range(k)) for i in range(k)]
        x = tuple(int(sum(y2[i] * basis[i][t] for i in range(k))) for t in range(len(basis[0])))
        points.append(x)
    return points


def saturation_hilbert_basis(monoid: FinGenMonoid, max_dim: int | None = None) -> list[IntVector]:
    """Hilbert basis of ``cone(gens) & Z^dim``, in graded order.

    The cone is covered by the simplicial cones on linearly independent
    generator subsets of full rank; the lattice points of their fundamental
    parallelepipeds, together with the generators, generate the saturated
    monoid, and the irreducible ones among them are kept.
    """
    bound = saturation_bound() if max_dim is None else max_dim
    if monoid.dim > bound:
        raise OrdconeError(f"saturation bound exceeded: dimension {monoid.dim} > {bound}")
    gens = list(dict.fromkeys(monoid.gens))
    if not gens:
        return []
    r = rank(gens)
    basis = saturated_lattice_basis(gens, monoid.dim)
    candidates = set(gens)
    for subset in combinations(gens, r):
        if rank(subset) < r:
            continue
        candidates.update(p for p in _parallelepiped_points(subset, basis) if any(p))
    cone = cone_to_halfspaces(gens, monoid.dim)
    cands = sorted(candidates, key=graded_key)
    hb = [x for x in cands
          if not any(h != x and _leq_c(h, x) and vec_sub(x, h) in cone for h in cands)]
    return hb


class UnperforationResult(NamedTuple):
    unperforated: bool
    witness: IntVector | None = None
    multiplier: int | None = None


def is_unperforated(monoid: FinGenMonoid, max_dim: int | None = None) -> UnperforationResult:
    """Whether the monoid equals its saturation ``Q & Z^n``.

    When it does not, the first Hilbert basis element ``x`` outside the
    monoid is returned together with the least ``d >= 2`` with ``d x`` inside.
    """
    for h in saturation_hilbert_basis(monoid, max_dim):
        if contains(monoid, h)[0]:
            continue
        d = 2
        while not contains(monoid, tuple(d * x for x in h))[0]:
            d += 1
        return UnperforationResult(False, h, d)
    return UnperforationResult(True)


def cone_membership_rational(monoid: FinGenMonoid, x: Sequence) -> bool:
    """Whether ``x`` is a nonnegative rational combination of the generators."""
    x = as_rat_vector(x)
    if len(x) != monoid.dim:
        raise OrdconeError("length mismatch")
    return in_cone(monoid.gens, x)


class NonArchimedeanWitness(NamedTuple):
    """``n a <= b`` for every ``n >= 0`` although ``a`` is not ``<= 0``."""

    a: IntVector
    b: IntVector
    d: int


def _graded_box(bound: int, dim: int) -> list[IntVector]:
    return sorted(product(range(bound + 1), repeat=dim), key=graded_key)


def non_archimedean_witness(monoid: FinGenMonoid, d_max: int, box: int) -> NonArchimedeanWitness | None:
    """Search a periodic certificate that the order is not Archimedean.

    Looks for ``c = -a`` outside the monoid with ``d c`` inside for some
    ``2 <= d <= d_max`` and ``b`` with ``b + r c`` inside for ``0 <= r < d``.
    Then ``b - n a`` lies in the monoid for every ``n >= 0``.  Candidates
    ``c`` and ``b`` range over ``[0, box]^n`` in graded order and the least
    ``d`` is used.  ``None`` means no witness within the bounds.
    """
    pts = _graded_box(box, monoid.dim)
    # every query below stays inside [0, d_max * box]
    table = _BoxTable(monoid, (max(d_max, 1) * box,) * monoid.dim)
    for c in pts:
        if c in table:
            continue
        d = next((d for d in range(2, d_max + 1) if tuple(d * x for x in c) in table), None)
        if d is None:
            continue
        for b in pts:
            if all(tuple(bx + r * cx for bx, cx in zip(b, c)) in table for r in range(d)):
                return NonArchimedeanWitness(tuple(-x for x in c), b, d)
    return None


def members_in_box(monoid: FinGenMonoid, top: Sequence[int]) -> set[IntVector]:
    """Every monoid element in ``[0, top]``."""
    return set(_BoxTable(monoid, top).members)
