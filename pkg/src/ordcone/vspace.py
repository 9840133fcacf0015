"""Positive cones in Q^n: domination and simplicial bases.

``x`` is dominated by ``y`` when ``y lam - x`` lies in the cone for some
rational ``lam >= 0``.  A linearly independent family ``B`` is a simplicial
basis when no member is dominated by the sum of the others; equivalently the
cone restricted to ``span(B)`` is exactly the cone generated by ``B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import OrdconeError
from .linalg import RatVector, as_rat_vector, rank
from .monoid import FinGenMonoid
from .polyhedra import (AffineFunctional, ConvexDomain, VPolytope, cone_to_halfspaces,
                        hull_membership, in_cone, is_satisfiable)

GENERATORS = "generators"
STRICT_QUADRANT = "strict_quadrant"
KINDS = (GENERATORS, STRICT_QUADRANT)


@dataclass(frozen=True)
class QSpaceCone:
    """Positive cone of Q^dim.

    ``kind="generators"``: nonnegative combinations of ``generators``, which
    must be pointed.  ``kind="strict_quadrant"``: ``{0}`` together with the
    open positive orthant; it is not finitely generated and has its own
    membership and domination rules.
    """

    dim: int
    kind: str = GENERATORS
    generators: tuple[RatVector, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OrdconeError(f"unknown cone kind {self.kind!r}")
        gens = tuple(as_rat_vector(g) for g in self.generators)
        if self.kind == STRICT_QUADRANT and gens:
            raise OrdconeError("strict_quadrant cones take no generators")
        for g in gens:
            if len(g) != self.dim:
                raise OrdconeError(f"dimension mismatch: generator of length {len(g)} in dimension {self.dim}")
        nonzero = tuple(g for g in gens if any(g))
        if nonzero and hull_membership((0,) * self.dim, VPolytope(self.dim, nonzero)):
            raise OrdconeError("cone is not pointed: 0 lies in the hull of the generators")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_monoid(cls, monoid: FinGenMonoid) -> "QSpaceCone":
        return cls(monoid.dim, GENERATORS, monoid.gens)

    def __contains__(self, x: Sequence) -> bool:
        x = as_rat_vector(x)
        if len(x) != self.dim:
            raise OrdconeError("dimension mismatch between point and cone")
        if self.kind == STRICT_QUADRANT:
            return not any(x) or all(c > 0 for c in x)
        return in_cone(self.generators, x)


def _strict_quadrant_dominated(x: RatVector, y: RatVector) -> bool:
    # y lam - x = 0 for some lam >= 0
    nz = [i for i, c in enumerate(y) if c]
    if not nz:
        if not any(x):
            return True
    else:
        lam = x[nz[0]] / y[nz[0]]
        if lam >= 0 and all(x[i] == lam * y[i] for i in range(len(x))):
            return True
    # y_i lam > x_i for all i, lam >= 0
    lo, hi = Fraction(0), None
    for xi, yi in zip(x, y):
        if yi > 0:
            lo = max(lo, xi / yi)
        elif yi < 0:
            hi = xi / yi if hi is None else min(hi, xi / yi)
        elif xi >= 0:
            return False
    return hi is None or lo < hi


def dominated_by(cone: QSpaceCone, x: Sequence, y: Sequence) -> bool:
    """Whether ``y lam - x`` lies in the cone for some rational ``lam >= 0``."""
    x, y = as_rat_vector(x), as_rat_vector(y)
    if len(x) != cone.dim or len(y) != cone.dim:
        raise OrdconeError("dimension mismatch between vectors and cone")
    if cone.kind == STRICT_QUADRANT:
        return _strict_quadrant_dominated(x, y)
    # variables (lam, mu_1..mu_m): y lam - sum mu_j g_j = x, all >= 0
    gens = cone.generators
    nvar = 1 + len(gens)
    cons = []
    for i in range(cone.dim):
        lin = (y[i], *(-g[i] for g in gens))
        cons.append(AffineFunctional(lin, -x[i]))
        cons.append(AffineFunctional(tuple(-c for c in lin), x[i]))
    for j in range(nvar):
        cons.append(AffineFunctional(tuple(int(k == j) for k in range(nvar)), 0))
    return is_satisfiable(ConvexDomain(nvar, tuple(cons)))[0]


def _check_basis_members(cone: QSpaceCone, basis: Sequence[RatVector]):
    for b in basis:
        if len(b) != cone.dim:
            raise OrdconeError("dimension mismatch between basis vector and cone")
        if not any(b) or b not in cone:
            raise OrdconeError(f"basis vector {tuple(str(c) for c in b)} is not a nonzero cone element")


def _domination_criterion(cone: QSpaceCone, basis: Sequence[RatVector]) -> bool:
    for k, b in enumerate(basis):
        rest = [basis[l] for l in range(len(basis)) if l != k]
        total = tuple(sum((r[i] for r in rest), Fraction(0)) for i in range(cone.dim))
        if dominated_by(cone, b, total):
            return False
    return True


def _section_criterion(cone: QSpaceCone, basis: Sequence[RatVector]) -> bool:
    """Whether ``span(B) & cone`` equals ``cone(B)``, for generator cones.

    ``P = {c : sum c_l b_l in cone}`` always contains the orthant; equality
    holds exactly when no ``c`` in ``P`` has ``c_l <= -1``.
    """
    k = len(basis)
    h = cone_to_halfspaces(cone.generators, cone.dim)
    cons = [AffineFunctional(tuple(sum(a.linear[t] * b[t] for t in range(cone.dim)) for b in basis),
                             a.constant) for a in h.constraints]
    section = ConvexDomain(k, tuple(cons))
    for l in range(k):
        unit = tuple(int(i == l) for i in range(k))
        if unit not in section:
            raise RuntimeError("basis vector outside its own section cone")
        neg = section.with_constraints([AffineFunctional(tuple(-u for u in unit), -1)])
        if is_satisfiable(neg)[0]:
            return False
    return True


def is_simplicial_basis(cone: QSpaceCone, basis: Sequence[Sequence]) -> bool:
    """Whether ``basis`` is a simplicial family of nonzero cone elements.

    For generator cones the domination criterion is cross-checked against the
    section criterion and a disagreement raises ``RuntimeError``.
    """
    basis = [as_rat_vector(b) for b in basis]
    _check_basis_members(cone, basis)
    if rank(basis) < len(basis):
        return False
    verdict = _domination_criterion(cone, basis)
    if cone.kind == GENERATORS and verdict != _section_criterion(cone, basis):
        raise RuntimeError("simplicial criteria disagree")
    return verdict


def _extreme_generators(gens: Sequence[RatVector]) -> list[RatVector]:
    """Extreme rays of a pointed cone given by generators, one per ray."""
    directions: list[RatVector] = []
    for g in gens:
        if not any(directions_parallel(g, d) for d in directions):
            directions.append(g)
    return [d for d in directions if not in_cone([e for e in directions if e is not d], d)]


def directions_parallel(u: RatVector, v: RatVector) -> bool:
    """Whether ``u`` is a positive multiple of ``v``."""
    j = next((i for i, c in enumerate(v) if c), None)
    if j is None or not u[j] or (u[j] > 0) != (v[j] > 0):
        return False
    lam = u[j] / v[j]
    return all(a == lam * b for a, b in zip(u, v))


def _height_candidates(cone: QSpaceCone, h: int) -> list[RatVector]:
    """Cone elements of height exactly ``h``, in a fixed order."""
    if cone.kind == STRICT_QUADRANT:
        pts = (p for p in product(range(1, h + 1), repeat=cone.dim) if max(p) == h)
        return [tuple(Fraction(c) for c in p) for p in pts]
    out = []
    for coeffs in product(range(h + 1), repeat=len(cone.generators)):
        if max(coeffs, default=0) != h:
            continue
        v = tuple(sum((c * g[i] for c, g in zip(coeffs, cone.generators)), Fraction(0))
                  for i in range(cone.dim))
        if any(v) and v not in out:
            out.append(v)
    return out


def simplicial_extension_search(cone: QSpaceCone, f_gens: Sequence[Sequence], budget: int
                                ) -> list[RatVector] | None:
    """Search a simplicial basis whose span contains ``span(f_gens)``.

    Candidates are tried in order: independent subsets of ``f_gens`` spanning
    the same space, families of extreme rays of ``cone(f_gens)``, then
    families of cone elements of height ``1..budget``.  Any returned basis
    has been verified with :func:`is_simplicial_basis`; ``None`` only means
    the budget was exhausted.
    """
    f_gens = [as_rat_vector(f) for f in f_gens]
    if any(len(f) != cone.dim for f in f_gens):
        raise OrdconeError("dimension mismatch between subspace generator and cone")
    f_rank = rank(f_gens) if f_gens else 0
    if f_rank == 0:
        return []
    tried: set[frozenset] = set()

    def ok(family) -> bool:
        key = frozenset(family)
        if key in tried:
            return False
        tried.add(key)
        if rank(list(family)) < len(family) or rank(list(family) + f_gens) != len(family):
            return False
        if any(not any(b) or b not in cone for b in family):
            return False
        return is_simplicial_basis(cone, list(family))

    members = [f for f in dict.fromkeys(f_gens) if any(f) and f in cone]
    for family in combinations(members, f_rank):
        if ok(family):
            return list(family)
    nonzero = [f for f in dict.fromkeys(f_gens) if any(f)]
    if not hull_membership((0,) * cone.dim, VPolytope(cone.dim, tuple(nonzero))):
        rays = [r for r in _extreme_generators(nonzero) if r in cone]
        for size in range(f_rank, cone.dim + 1):
            for family in combinations(rays, size):
                if ok(family):
                    return list(family)
    pool: list[RatVector] = []
    for h in range(1, budget + 1):
        fresh = _height_candidates(cone, h)
        pool_old = list(pool)
        pool += [v for v in fresh if v not in pool]
        for size in range(f_rank, cone.dim + 1):
            for family in combinations(pool, size):
                if all(v in pool_old for v in family):
                    continue
                if ok(family):
                    return list(family)
    return None
