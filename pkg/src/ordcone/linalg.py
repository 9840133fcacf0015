"""Exact integer and rational linear algebra.

Vectors are tuples (of ``int`` or :class:`fractions.Fraction`), matrices are
tuples of row tuples.  Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Sequence

from .errors import OrdconeError

Rational = Fraction
IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]
RatVector = tuple[Fraction, ...]
RatMatrix = tuple[RatVector, ...]


# -- construction helpers -----------------------------------------------------

def as_int_vector(v: Sequence) -> IntVector:
    out = []
    for x in v:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise OrdconeError(f"non-integer entry {x}")
            x = x.numerator
        if isinstance(x, bool) or not isinstance(x, int):
            raise OrdconeError(f"non-integer entry {x!r}")
        out.append(int(x))
    return tuple(out)


def as_int_matrix(rows: Sequence[Sequence]) -> IntMatrix:
    m = tuple(as_int_vector(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise OrdconeError("ragged matrix")
    return m


def as_rat_vector(v: Sequence) -> RatVector:
    return tuple(Fraction(x) for x in v)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    bt = transpose(b)
    if not a:
        return ()
    if not bt:
        return tuple(() for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise OrdconeError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum((x * y for x, y in zip(u, v)), 0)


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Sequence) -> tuple:
    return tuple(c * x for x in v)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def clear_denominators(v: Sequence[Fraction]) -> IntVector:
    """Smallest positive integer multiple of ``v`` with integer entries."""
    d = reduce(lcm, (Fraction(x).denominator for x in v), 1)
    return tuple(int(Fraction(x) * d) for x in v)


# -- gcd machinery ------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def bezout(v: Sequence[int]) -> tuple[int, IntVector]:
    """Gcd of the entries of ``v`` together with Bezout coefficients.

    The extended Euclidean algorithm is folded left to right, which pins one
    coefficient vector among the infinitely many valid ones.  The all-zero
    vector gives ``(0, zero vector)``.

    >>> bezout((6, 4))
    (2, (1, -1))
    """
    v = as_int_vector(v)
    if not v:
        raise OrdconeError("bezout needs a vector of length >= 1")
    g, coeffs = 0, [0] * len(v)
    for i, x in enumerate(v):
        g2, s, t = _xgcd(g, x)
        coeffs = [c * s for c in coeffs]
        coeffs[i] = t
        g = g2
    if g == 0:
        coeffs = [0] * len(v)
    return g, tuple(coeffs)


def vector_gcd(v: Sequence[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping its direction."""
    v = as_int_vector(v)
    g = vector_gcd(v)
    if g == 0:
        raise OrdconeError("zero vector has no primitive form")
    return tuple(x // g for x in v)


# -- determinants, solving, rank over Q ---------------------------------------

def det(m: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination (exact for ints)."""
    n = len(m)
    if any(len(r) != n for r in m):
        raise OrdconeError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num / prev if isinstance(num, Fraction) else _exact_div(num, prev)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        assert r == 0
        return q
    return Fraction(a) / b


def row_echelon(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m]
    ncols = len(a[0]) if a else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(row_echelon(m)[1])


def rational_nullspace(m: Sequence[Sequence], ncols: int) -> list[RatVector]:
    """Basis of ``{x : m x = 0}`` over Q (one vector per free column)."""
    if not m:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    rref, pivots = row_echelon(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(rref, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return basis


def solve_rational(a: Sequence[Sequence], b: Sequence) -> RatVector | None:
    """One solution of ``a x = b`` over Q (free variables set to 0), or None."""
    if not a:
        return None if any(b) else ()
    ncols = len(a[0])
    aug = [list(r) + [y] for r, y in zip(a, b)]
    rref, pivots = row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rref, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> RatMatrix:
    n = len(m)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m)]
    rref, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise OrdconeError("singular matrix")
    return tuple(tuple(row[n:]) for row in rref[:n])


def integer_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    inv = inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise OrdconeError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


# -- unimodular maps ----------------------------------------------------------

@dataclass(frozen=True)
class UnimodularMap:
    """A lattice automorphism of Z^n stored together with its inverse."""

    matrix: IntMatrix
    inverse: IntMatrix

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(r) != n for r in self.matrix) or len(self.inverse) != n:
            raise OrdconeError("unimodular map must be square")
        if matmul(self.matrix, self.inverse) != identity(n):
            raise OrdconeError("matrix and inverse do not multiply to the identity")

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]]) -> "UnimodularMap":
        m = as_int_matrix(matrix)
        return cls(m, integer_inverse(m) if m else ())

    @classmethod
    def identity(cls, n: int) -> "UnimodularMap":
        return cls(identity(n), identity(n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence[int]) -> IntVector:
        return tuple(matvec(self.matrix, v))

    def inverse_map(self) -> "UnimodularMap":
        return UnimodularMap(self.inverse, self.matrix)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self after other``."""
        return UnimodularMap(matmul(self.matrix, other.matrix), matmul(other.inverse, self.inverse))

    def det(self) -> int:
        return det(self.matrix)


# -- Hermite and Smith normal forms -------------------------------------------

def hermite_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None
                        ) -> tuple[IntMatrix, UnimodularMap]:
    """Row-style Hermite normal form: returns ``(H, U)`` with ``U @ M == H``.

    Pivots are positive, entries above a pivot are reduced into
    ``[0, pivot)``, zero rows come last.  Within a column the pivot row is the
    one with the smallest nonzero absolute value, ties broken by row index.
    """
    a = [list(r) for r in as_int_matrix(m)]
    nrows = len(a)
    n = len(a[0]) if a else (ncols or 0)
    u = [list(r) for r in identity(nrows)]

    def sub_row(i, k, q):  # row_i -= q * row_k
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    pr = 0
    for c in range(n):
        if pr == nrows:
            break
        while True:
            cand = [i for i in range(pr, nrows) if a[i][c] != 0]
            if not cand:
                break
            piv = min(cand, key=lambda i: (abs(a[i][c]), i))
            a[pr], a[piv] = a[piv], a[pr]
            u[pr], u[piv] = u[piv], u[pr]
            clean = True
            for i in range(pr + 1, nrows):
                if a[i][c]:
                    sub_row(i, pr, a[i][c] // a[pr][c])
                    clean = clean and a[i][c] == 0
            if clean:
                break
        if a[pr][c] == 0:
            continue
        if a[pr][c] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        for i in range(pr):
            q = a[i][c] // a[pr][c]
            if q:
                sub_row(i, pr, q)
        pr += 1
    h = tuple(tuple(r) for r in a)
    return h, UnimodularMap.from_matrix(u)


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None
                      ) -> tuple[IntMatrix, UnimodularMap, UnimodularMap]:
    """Smith normal form ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries ``d1 | d2 | ...``.
    """
    a = [list(r) for r in as_int_matrix(m)]
    nr = len(a)
    nc = len(a[0]) if a else (ncols or 0)
    u = [list(r) for r in identity(nr)]
    v = [list(r) for r in identity(nc)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(i, k, q):  # row_i += q * row_k
        a[i] = [x + q * y for x, y in zip(a[i], a[k])]
        u[i] = [x + q * y for x, y in zip(u[i], u[k])]

    def add_col(j, k, q):  # col_j += q * col_k
        for row in a:
            row[j] += q * row[k]
        for row in v:
            row[j] += q * row[k]

    for t in range(min(nr, nc)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            if rest:
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    d = tuple(tuple(r) for r in a)
    return d, UnimodularMap.from_matrix(u), UnimodularMap.from_matrix(v)


def smith_invariants(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    d, _, _ = smith_normal_form(m, ncols)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


# -- kernel lattices ----------------------------------------------------------

def _sign_normalize(v: IntVector) -> IntVector:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def kernel_lattice_basis(r: Sequence[int]) -> list[IntVector]:
    """Basis of the lattice ``{x in Z^n : r.x = 0}`` for primitive ``r``.

    Read off the rows of ``U`` from the column Hermite form ``U r^T = e_1``;
    each basis vector has its first nonzero entry positive.
    """
    r = as_int_vector(r)
    if not r:
        raise OrdconeError("kernel_lattice_basis needs a vector of length >= 1")
    if vector_gcd(r) != 1:
        raise OrdconeError("vector is not primitive")
    _, u = hermite_normal_form([(x,) for x in r])
    return [_sign_normalize(row) for row in u.matrix[1:]]


def integer_kernel_basis(m: Sequence[Sequence[int]], ncols: int) -> list[IntVector]:
    """Basis of the lattice ``{x in Z^ncols : m x = 0}``."""
    m = as_int_matrix(m)
    if not m:
        return list(identity(ncols))
    h, u = hermite_normal_form(transpose(m))
    return [_sign_normalize(row) for row, hrow in zip(u.matrix, h) if not any(hrow)]


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[IntVector]:
    """Basis (HNF rows) of the subgroup of Z^dim generated by ``vectors``."""
    if not vectors:
        return []
    h, _ = hermite_normal_form(vectors, dim)
    return [row for row in h if any(row)]


def saturated_lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[IntVector]:
    """Basis of ``Z^dim`` intersected with the rational span of ``vectors``."""
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return []
    normals = [clear_denominators(w) for w in rational_nullspace(vectors, dim)]
    return integer_kernel_basis(normals, dim)


def lattice_coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> IntVector | None:
    """Integer ``y`` with ``sum(y_i * basis_i) == x``, or None if there is none."""
    if not basis:
        return () if not any(x) else None
    y = solve_rational(transpose(basis), x)
    if y is None or any(c.denominator != 1 for c in y):
        return None
    return tuple(int(c) for c in y)


def box_points(upper: Sequence[int]):
    """All integer points of the box ``[0, upper]`` in lexicographic order."""
    return product(*(range(u + 1) for u in upper))
