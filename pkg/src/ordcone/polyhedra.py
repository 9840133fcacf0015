"""Convex domains over Q: Fourier-Motzkin elimination and friends.

A :class:`ConvexDomain` is a finite intersection of upper half-spaces
``{x : a.x + b >= 0}``.  Internally every constraint is kept as a primitive
integer row ``(a_0, ..., a_{n-1}, b)``; positive rescaling does not change the
half-space, so primitive rows double as a canonical form for deduplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import OrdconeError
from .linalg import RatVector, as_rat_vector, dot, lcm, rank

Row = tuple[int, ...]


@dataclass(frozen=True)
class AffineFunctional:
    """The map ``x -> linear . x + constant``."""

    linear: RatVector
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "linear", as_rat_vector(self.linear))
        object.__setattr__(self, "constant", Fraction(self.constant))

    @property
    def dim(self) -> int:
        return len(self.linear)

    def __call__(self, x: Sequence) -> Fraction:
        return dot(self.linear, x) + self.constant

    def is_constant(self) -> bool:
        return not any(self.linear)


@dataclass(frozen=True)
class ConvexDomain:
    """``dim``-dimensional domain cut out by ``p(x) >= 0`` for each constraint."""

    dim: int
    constraints: tuple[AffineFunctional, ...] = ()

    def __post_init__(self):
        cons = tuple(c if isinstance(c, AffineFunctional) else AffineFunctional(*c)
                     for c in self.constraints)
        for c in cons:
            if c.dim != self.dim:
                raise OrdconeError(
                    f"dimension mismatch: constraint of length {c.dim} in a {self.dim}-dimensional domain")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def from_leq(cls, a: Sequence[Sequence], b: Sequence, dim: int | None = None) -> "ConvexDomain":
        """Domain of the system ``a x <= b`` (rows of ``a`` against entries of ``b``)."""
        if dim is None:
            if not a:
                raise OrdconeError("dimension required for an empty system")
            dim = len(a[0])
        if len(a) != len(b):
            raise OrdconeError("dimension mismatch: rows of A and entries of b differ")
        return cls(dim, tuple(AffineFunctional([-Fraction(x) for x in row], Fraction(y))
                              for row, y in zip(a, b)))

    def to_leq(self) -> tuple[list[RatVector], list[Fraction]]:
        """Inverse of :meth:`from_leq`."""
        return ([tuple(-x for x in c.linear) for c in self.constraints],
                [c.constant for c in self.constraints])

    def __contains__(self, x: Sequence) -> bool:
        return all(c(x) >= 0 for c in self.constraints)

    def with_constraints(self, extra: Iterable[AffineFunctional]) -> "ConvexDomain":
        return ConvexDomain(self.dim, self.constraints + tuple(extra))


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of a finite point set."""

    dim: int
    points: tuple[RatVector, ...] = field(default=())

    def __post_init__(self):
        pts = tuple(as_rat_vector(p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise OrdconeError(f"dimension mismatch: point of length {len(p)} in dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    def canonical(self) -> "VPolytope":
        return VPolytope(self.dim, tuple(sorted(set(self.points))))


# -- integer row kernel -------------------------------------------------------

def _primitive_row(values: Sequence) -> Row:
    d = reduce(lcm, (Fraction(x).denominator for x in values), 1)
    ints = [int(Fraction(x) * d) for x in values]
    g = reduce(gcd, ints, 0)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _rows(domain: ConvexDomain) -> list[Row]:
    return [_primitive_row((*c.linear, c.constant)) for c in domain.constraints]


def _domain(dim: int, rows: Iterable[Row]) -> ConvexDomain:
    return ConvexDomain(dim, tuple(AffineFunctional(r[:-1], r[-1]) for r in rows))


def _is_trivial(row: Row) -> bool:
    return not any(row[:-1]) and row[-1] >= 0


def _is_contradiction(row: Row) -> bool:
    return not any(row[:-1]) and row[-1] < 0


def _clean(rows: Iterable[Row]) -> list[Row]:
    """Drop trivially true rows and duplicates, keeping first occurrences."""
    seen: set[Row] = set()
    out = []
    for r in rows:
        if _is_trivial(r) or r in seen:
            continue
        seen.add(r)
        out.append(r)
    return out


def _combine(y: Row, z: Row, j: int) -> Row:
    # y[j] > 0 > z[j]: the positive combination cancelling column j
    cy, cz = -z[j], y[j]
    return _primitive_row([cy * a + cz * b for k, (a, b) in enumerate(zip(y, z)) if k != j])


def _drop(row: Row, j: int) -> Row:
    return row[:j] + row[j + 1:]


def _eliminate_rows(rows: Sequence[Row], j: int) -> list[Row]:
    xs = [r for r in rows if r[j] == 0]
    ys = [r for r in rows if r[j] > 0]
    zs = [r for r in rows if r[j] < 0]
    zset = set(zs)
    pair = next((y for y in ys if tuple(-c for c in y) in zset), None)
    out = [_drop(r, j) for r in xs]
    if pair is None:
        out += [_combine(y, z, j) for y in ys for z in zs]
    else:
        # An equality pair +-e implies every other Y x Z combination as a sum
        # of (y, -e) and (e, z); substituting through e alone is exact.
        neg = tuple(-c for c in pair)
        out += [_combine(pair, z, j) for z in zs if z != neg]
        out += [_combine(y, neg, j) for y in ys if y != pair]
    return _clean(out)


def _find_contradiction(rows: Iterable[Row]) -> bool:
    return any(_is_contradiction(r) for r in rows)


def _solve_rows(rows: Sequence[Row], dim: int) -> RatVector | None:
    """Satisfiability with a witness by elimination and back-substitution."""
    stack = [_clean(rows)]
    if _find_contradiction(stack[0]):
        return None
    for j in range(dim - 1, -1, -1):
        nxt = _eliminate_rows(stack[-1], j)
        if _find_contradiction(nxt):
            return None
        stack.append(nxt)
    # stack[k] involves the variables 0 .. dim-1-k
    x: list[Fraction] = []
    for j in range(dim):
        lo = hi = None
        for r in stack[dim - 1 - j]:
            a = r[j]
            if a == 0:
                continue
            rest = sum((c * v for c, v in zip(r[:j], x)), Fraction(0)) + r[-1]
            bound = -rest / a
            if a > 0:
                lo = bound if lo is None or bound > lo else lo
            else:
                hi = bound if hi is None or bound < hi else hi
        if lo is not None and hi is not None:
            assert lo <= hi
            x.append((lo + hi) / 2)
        elif lo is not None:
            x.append(lo + 1)
        elif hi is not None:
            x.append(hi - 1)
        else:
            x.append(Fraction(0))
    return tuple(x)


# -- public operations --------------------------------------------------------

def eliminate_variable(domain: ConvexDomain, j: int) -> ConvexDomain:
    """Project ``domain`` along coordinate ``j`` (Fourier-Motzkin step).

    Constraints not involving ``x_j`` are kept; every lower bound on ``x_j``
    is combined with every upper bound.  When a constraint and its exact
    negation (an equality) are both present, only the combinations through
    that equality are formed, since all others are sums of those.
    """
    if not 0 <= j < domain.dim:
        raise OrdconeError(f"index out of range: {j} not in [0, {domain.dim})")
    return _domain(domain.dim - 1, _eliminate_rows(_rows(domain), j))


def is_satisfiable(domain: ConvexDomain) -> tuple[bool, RatVector | None]:
    """Decide nonemptiness; when nonempty also return a rational point of it.

    Variables are eliminated from the last one down; the witness is rebuilt
    from the first one up by taking, in each fiber, the midpoint of the
    feasible interval (``lower + 1`` / ``upper - 1`` when one side is open,
    ``0`` when both are).
    """
    w = _solve_rows(_rows(domain), domain.dim)
    return (w is not None), w


def project(domain: ConvexDomain, keep: Iterable[int]) -> ConvexDomain:
    """Coordinate projection onto the sorted index set ``keep``."""
    keep = sorted(set(keep))
    if any(not 0 <= k < domain.dim for k in keep):
        raise OrdconeError(f"index out of range in keep={keep}")
    drop = [j for j in range(domain.dim - 1, -1, -1) if j not in keep]
    if not drop:
        return ConvexDomain(domain.dim, tuple(c for c in domain.constraints
                                              if not (c.is_constant() and c.constant >= 0)))
    rows = _clean(_rows(domain))
    for j in drop:
        rows = _eliminate_rows(rows, j)
    return _domain(len(keep), rows)


def separate_from_origin(domain: ConvexDomain) -> RatVector:
    """Linear functional ``p`` with ``p >= 1`` on a domain missing the origin.

    Uses the first constraint ``q`` violated at the origin and returns the
    linear part of ``(q - q(0)) / -q(0)``.
    """
    if not is_satisfiable(domain)[0]:
        raise OrdconeError("empty domain")
    q = next((c for c in domain.constraints if c.constant < 0), None)
    if q is None:
        raise OrdconeError("origin not separated: the origin lies in the domain")
    scale = -1 / q.constant
    return tuple(scale * a for a in q.linear)


def functional_range(domain: ConvexDomain, r: Sequence) -> tuple[Fraction | None, Fraction | None]:
    """Infimum and supremum of ``x -> r.x`` over a nonempty domain (None = unbounded)."""
    n = domain.dim
    r = as_rat_vector(r)
    # new variable t = r.x as coordinate n
    eq = AffineFunctional((*[-a for a in r], Fraction(1)), 0)
    neg = AffineFunctional((*r, Fraction(-1)), 0)
    lifted = ConvexDomain(n + 1, tuple(AffineFunctional((*c.linear, 0), c.constant)
                                      for c in domain.constraints) + (eq, neg))
    line = project(lifted, [n])
    lo = hi = None
    for c in line.constraints:
        a, b = c.linear[0], c.constant
        if a == 0:
            if b < 0:
                raise OrdconeError("empty domain")
            continue
        bound = -b / a
        if a > 0:
            lo = bound if lo is None or bound > lo else lo
        else:
            hi = bound if hi is None or bound < hi else hi
    return lo, hi


def separate_on_hyperplane(domain: ConvexDomain, r: Sequence, a: Sequence) -> RatVector:
    """Linear ``p`` with ``p(a) = 0`` and ``p >= 1`` on ``domain``.

    ``domain`` must lie in the hyperplane ``{x : r.x = 1}`` and ``a`` must be
    a point of that hyperplane outside the domain.
    """
    r, a = as_rat_vector(r), as_rat_vector(a)
    if dot(r, a) != 1:
        raise OrdconeError("point not on hyperplane: r.a != 1")
    if not is_satisfiable(domain)[0]:
        raise OrdconeError("empty domain")
    if functional_range(domain, r) != (1, 1):
        raise OrdconeError("domain not contained in the hyperplane r.x = 1")
    qi = next((c for c in domain.constraints if c(a) < 0), None)
    if qi is None:
        raise OrdconeError("point lies in the domain")
    s = -qi(a)
    q_lin = tuple(x / s for x in qi.linear)
    q0 = (qi.constant + s) / s
    return tuple(x + q0 * y for x, y in zip(q_lin, r))


def _convex_combination_rows(points: Sequence[RatVector], target: Sequence | None) -> tuple[list[Row], int]:
    """Rows in the weights (and optionally free x) expressing x = sum w_j p_j."""
    npts = len(points)
    dim = len(points[0])
    lift = target is None
    nvar = npts + (dim if lift else 0)
    off = dim if lift else 0
    rows: list[Row] = []

    def add(lin, const):
        rows.append(_primitive_row((*lin, const)))

    for i in range(dim):
        lin = [Fraction(0)] * nvar
        if lift:
            lin[i] = Fraction(1)
        for j, p in enumerate(points):
            lin[off + j] = -p[i]
        const = Fraction(0) if lift else Fraction(target[i])
        # x_i - sum_j p_ij w_j = 0
        add(lin, const)
        add([-c for c in lin], -const)
    for j in range(npts):
        lin = [0] * nvar
        lin[off + j] = 1
        add(lin, 0)
        if lift:
            add([-c for c in lin], 1)
    lin = [0] * nvar
    for j in range(npts):
        lin[off + j] = 1
    add(lin, -1)
    add([-c for c in lin], 1)
    return rows, nvar


def _restrict_to_hyperplane(rows: Sequence[tuple[int, Row]], h: Row, nvar: int):
    """Parametrize ``h = 0`` by all coordinates except its first nonzero one.

    Returns ``(new_rows, pivot, substitution)``; the pivot coordinate is
    ``x_pivot = sum_k s_k x_k + s_const`` over the other coordinates.
    """
    piv = next(k for k in range(nvar) if h[k] != 0)
    sub = [Fraction(-h[k], h[piv]) for k in range(nvar + 1)]
    sub[piv] = Fraction(0)
    out = []
    for idx, r in rows:
        a = r[piv]
        new = _primitive_row([r[k] + a * sub[k] for k in range(nvar + 1) if k != piv])
        if not _is_trivial(new):
            out.append((idx, new))
    return out, piv, sub


def _faces_vertices(rows: list[tuple[int, Row]], nvar: int, tight: frozenset,
                    visited: set) -> list[RatVector]:
    # rows carry their index in the original system, so that a face is
    # identified by the set of original constraints forced to equality
    plain = [r for _, r in rows]
    if _find_contradiction(plain):
        return []
    if nvar == 0:
        return [()]
    if _solve_rows(plain, nvar) is None:
        return []
    found: list[RatVector] = []
    for idx, h in rows:
        key = tight | {idx}
        if key in visited:
            continue
        visited.add(key)
        sub_rows, piv, sub = _restrict_to_hyperplane(rows, h, nvar)
        for t in _faces_vertices(sub_rows, nvar - 1, key, visited):
            full = list(t[:piv]) + [Fraction(0)] + list(t[piv:])
            full[piv] = sum((s * v for s, v in zip(sub, full)), Fraction(0)) + sub[nvar]
            found.append(tuple(full))
    return list(dict.fromkeys(found))


def _affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _prune_with_points(rows: list[Row], points: Sequence[RatVector]) -> list[Row]:
    """Keep implicit equalities and one row per facet of ``Conv(points)``.

    Every row must be valid on all points.  A row tight on every point is an
    implicit equality; otherwise it is kept when its tight points span a
    face of codimension one, and only the first row per such face is kept.
    """
    k = _affine_rank(points)
    keep, facets = [], set()
    for r in rows:
        tight = frozenset(i for i, p in enumerate(points)
                          if sum((a * x for a, x in zip(r, p)), Fraction(0)) + r[-1] == 0)
        if len(tight) == len(points):
            keep.append(r)
        elif k >= 1 and tight not in facets and _affine_rank([points[i] for i in sorted(tight)]) == k - 1:
            facets.add(tight)
            keep.append(r)
    return keep


def hull_to_halfspaces(polytope: VPolytope) -> ConvexDomain:
    """H-description of ``Conv(points)``.

    The lift ``{(x, w) : w >= 0, 1 - w >= 0, sum w = 1, x = sum w_j p_j}`` is
    projected onto ``x``.  Rows that neither hold with equality on all points
    nor support a facet are then dropped; this is exact and keeps the output
    small enough for the vertex recursion.
    """
    if not polytope.points:
        raise OrdconeError("empty hull")
    if polytope.dim == 0:
        return ConvexDomain(0)
    rows, nvar = _convex_combination_rows(polytope.points, None)
    lifted = _domain(nvar, rows)
    projected = project(lifted, range(polytope.dim))
    return _domain(polytope.dim, _prune_with_points(_rows(projected), polytope.points))


def hull_membership(x: Sequence, polytope: VPolytope) -> bool:
    """Whether ``x`` is a convex combination of the polytope's points."""
    x = as_rat_vector(x)
    if len(x) != polytope.dim:
        raise OrdconeError("dimension mismatch between point and polytope")
    if not polytope.points:
        return False
    if polytope.dim == 0:
        return True
    rows, nvar = _convex_combination_rows(polytope.points, x)
    return _solve_rows(rows, nvar) is not None


def is_bounded(domain: ConvexDomain) -> bool:
    """True for empty domains and for nonempty ones whose recession cone is 0."""
    if not is_satisfiable(domain)[0]:
        return True
    n = domain.dim
    recession = [_primitive_row((*c.linear, 0)) for c in domain.constraints]
    for j in range(n):
        for sign in (1, -1):
            unit = [0] * (n + 1)
            unit[j] = sign
            unit[n] = -1  # sign * x_j - 1 >= 0
            if _solve_rows(recession + [tuple(unit)], n) is not None:
                return False
    return True


def halfspaces_to_hull(domain: ConvexDomain) -> VPolytope:
    """Finite point set whose convex hull is the (bounded) domain.

    Recurses on the faces ``{p_i = 0} & {p_j >= 0, j != i}``, each
    parametrized by exact elimination of one coordinate, down to dimension
    zero; faces reached twice through the same set of tight constraints are
    skipped.  Non-extreme points are pruned at the end.
    """
    if not is_satisfiable(domain)[0]:
        return VPolytope(domain.dim, ())
    if not is_bounded(domain):
        raise OrdconeError("not a polytope: domain is unbounded")
    rows = list(enumerate(_clean(_rows(domain))))
    pts = sorted(_faces_vertices(rows, domain.dim, frozenset(), set()))
    extreme = [p for k, p in enumerate(pts)
               if len(pts) == 1 or not hull_membership(p, VPolytope(domain.dim, tuple(pts[:k] + pts[k + 1:])))]
    return VPolytope(domain.dim, tuple(extreme))


# -- finitely generated rational cones ---------------------------------------

def _cone_rows(gens: Sequence[Sequence], x_free: bool, target: Sequence | None, dim: int):
    m = len(gens)
    off = dim if x_free else 0
    nvar = off + m
    rows: list[Row] = []
    for i in range(dim):
        lin = [Fraction(0)] * nvar
        if x_free:
            lin[i] = Fraction(1)
        for j, g in enumerate(gens):
            lin[off + j] = -Fraction(g[i])
        const = Fraction(0) if target is None else Fraction(target[i])
        rows.append(_primitive_row((*lin, const)))
        rows.append(_primitive_row((*(-c for c in lin), -const)))
    for j in range(m):
        unit = [0] * (nvar + 1)
        unit[off + j] = 1
        rows.append(tuple(unit))
    return rows, nvar


def cone_to_halfspaces(gens: Sequence[Sequence], dim: int) -> ConvexDomain:
    """H-description ``{x : a.x >= 0}`` of the cone of nonnegative combinations of ``gens``."""
    gens = [as_rat_vector(g) for g in gens]
    if any(len(g) != dim for g in gens):
        raise OrdconeError("dimension mismatch between generator and cone")
    if not gens:
        # the zero cone
        cons = []
        for i in range(dim):
            unit = [0] * dim
            unit[i] = 1
            cons += [AffineFunctional(unit, 0), AffineFunctional([-u for u in unit], 0)]
        return ConvexDomain(dim, tuple(cons))
    rows, nvar = _cone_rows(gens, True, None, dim)
    return project(_domain(nvar, rows), range(dim))


def in_cone(gens: Sequence[Sequence], x: Sequence) -> bool:
    """Whether ``x`` is a nonnegative rational combination of ``gens``."""
    x = as_rat_vector(x)
    if not gens:
        return not any(x)
    if any(len(g) != len(x) for g in gens):
        raise OrdconeError("dimension mismatch between generator and point")
    rows, nvar = _cone_rows([as_rat_vector(g) for g in gens], False, x, len(x))
    return _solve_rows(_clean(rows), nvar) is not None
