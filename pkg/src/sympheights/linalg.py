"""Exact linear algebra over Q and GF(p)(t).

Matrices are lists of rows and vectors are tuples; entries are
:class:`fractions.Fraction` or :class:`~sympheights.fields.RationalFunction`
values. A :class:`Subspace` stores its basis as a tuple of column vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

from .errors import BackendMismatchError, DimensionError, DomainError, RankError
from .fields import GroundField, RationalFunction, field_of

Vector = tuple
Matrix = list


def _size(a) -> int:
    """Cheap complexity measure used for pivot selection."""
    if isinstance(a, RationalFunction):
        return len(a.num) + len(a.den)
    a = Fraction(a)
    return abs(a.numerator).bit_length() + a.denominator.bit_length()


def zeros(field: GroundField, rows: int, cols: int) -> Matrix:
    z = field.zero()
    return [[z] * cols for _ in range(rows)]


def identity(field: GroundField, n: int) -> Matrix:
    out = zeros(field, n, n)
    for i in range(n):
        out[i][i] = field.one()
    return out


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def from_columns(cols) -> Matrix:
    return [list(row) for row in zip(*cols)]


def columns(M: Matrix) -> list[Vector]:
    return [tuple(c) for c in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if A and B and len(A[0]) != len(B):
        raise DimensionError(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x{len(B[0])}")
    Bt = list(zip(*B))
    out = []
    for row in A:
        out.append([_dot(row, col) for col in Bt])
    return out


def _dot(u, v):
    it = iter(zip(u, v))
    a, b = next(it)
    s = a * b
    for a, b in it:
        if a and b:
            s = s + a * b
    return s


def dot(u, v):
    if len(u) != len(v):
        raise DimensionError("dot product of vectors of different length")
    return _dot(u, v)


def matvec(A: Matrix, x) -> Vector:
    if A and len(A[0]) != len(x):
        raise DimensionError("matrix/vector size mismatch")
    return tuple(_dot(row, x) for row in A)


def scale_vector(c, x) -> Vector:
    return tuple(c * a for a in x)


def bilinear(F: Matrix, x, y):
    """``x^t F y``."""
    return dot(x, matvec(F, y))


def matrix_field(M: Matrix) -> GroundField:
    for row in M:
        for a in row:
            return field_of(a)
    raise DomainError("empty matrix has no field")


def check_matrix(M: Matrix, field: GroundField) -> None:
    for row in M:
        for a in row:
            field.check(a)


# --------------------------------------------------------------------------
# elimination


def _lift(a):
    return Fraction(a) if type(a) is int else a


def rref(M: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = [[_lift(a) for a in r] for r in M]
    if not R:
        return R, []
    nrows, ncols = len(R), len(R[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        cand = [i for i in range(r, nrows) if R[i][c]]
        if not cand:
            continue
        piv = min(cand, key=lambda i: (_size(R[i][c]), i))
        R[r], R[piv] = R[piv], R[r]
        inv = 1 / R[r][c]
        R[r] = [a * inv if a else a for a in R[r]]
        for i in range(nrows):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [a - f * b if b else a for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def det(M: Matrix):
    """Determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        raise DimensionError("determinant of an empty matrix")
    A = [[_lift(a) for a in r] for r in M]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not A[k][k]:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return A[k][k] * 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = v if prev is None else v / prev
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return d if sign == 1 else -d


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionError("inverse of a non-square matrix")
    field = matrix_field(M)
    aug = [list(M[i]) + identity(field, n)[i] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise RankError("matrix is singular")
    return [row[n:] for row in R]


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """Subspace of K^N spanned by the columns ``basis`` (possibly empty)."""

    field: GroundField
    ambient_dim: int
    basis: tuple = dc_field(default=())

    def __post_init__(self):
        basis = tuple(tuple(self.field.element(a) for a in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        for v in basis:
            if len(v) != self.ambient_dim:
                raise DimensionError("basis vector has the wrong length")
        if basis and rank(self.matrix) != len(basis):
            raise RankError("basis vectors are linearly dependent")

    @classmethod
    def from_matrix(cls, M: Matrix, field: GroundField | None = None) -> "Subspace":
        field = field or matrix_field(M)
        return cls(field, len(M), tuple(columns(M)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def matrix(self) -> Matrix:
        """The N x L basis matrix."""
        return from_columns(self.basis)

    def __contains__(self, x) -> bool:
        if not self.basis:
            return not any(x)
        return rank(from_columns(list(self.basis) + [tuple(x)])) == self.dim

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(v in self for v in other.basis)

    def same_span(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)


def span(field: GroundField, vectors, ambient_dim: int | None = None) -> Subspace:
    """Subspace spanned by ``vectors`` (dependent vectors are dropped)."""
    vectors = [tuple(v) for v in vectors]
    if ambient_dim is None:
        ambient_dim = len(vectors[0])
    basis: list = []
    for v in vectors:
        if any(v) and (not basis or rank(from_columns(basis + [v])) > len(basis)):
            basis.append(v)
    return Subspace(field, ambient_dim, tuple(basis))


def _normalize_vector(v):
    """Scale so that the last nonzero coordinate is 1 (deterministic output)."""
    for a in reversed(v):
        if a:
            inv = 1 / a
            return tuple(b * inv if b else b for b in v)
    return v


def kernel(M: Matrix, field: GroundField | None = None, ncols: int | None = None) -> Subspace:
    """Right null space ``{x : M x = 0}``."""
    if field is None:
        field = matrix_field(M)
    if ncols is None:
        if not M:
            raise DimensionError("cannot infer the column count of an empty matrix")
        ncols = len(M[0])
    if not M:
        return Subspace(field, ncols, tuple(tuple(r) for r in columns(identity(field, ncols))))
    R, piv = rref(M)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.zero()] * ncols
        v[f] = field.one()
        for r, pc in enumerate(piv):
            if R[r][f]:
                v[pc] = -R[r][f]
        basis.append(_normalize_vector(tuple(v)))
    return Subspace(field, ncols, tuple(basis))


def intersect(U1: Subspace, U2: Subspace) -> Subspace:
    if U1.ambient_dim != U2.ambient_dim:
        raise DimensionError("subspaces live in different ambient spaces")
    if U1.field != U2.field:
        raise BackendMismatchError("subspaces over different fields")
    field = U1.field
    if U1.dim == 0 or U2.dim == 0:
        return Subspace(field, U1.ambient_dim)
    # solve U1 a = U2 b
    M = from_columns(list(U1.basis) + [tuple(-c for c in v) for v in U2.basis])
    ker = kernel(M, field, U1.dim + U2.dim)
    vecs = []
    for coeffs in ker.basis:
        a = coeffs[: U1.dim]
        vecs.append(tuple(_dot(row, a) for row in U1.matrix))
    return span(field, vecs, U1.ambient_dim)


def sum_space(U1: Subspace, U2: Subspace) -> Subspace:
    return span(U1.field, list(U1.basis) + list(U2.basis), U1.ambient_dim)


def gram(F: Matrix, X: Matrix) -> Matrix:
    """``X^t F X`` for an N x L matrix ``X``."""
    if len(F) != len(X) or any(len(r) != len(F) for r in F):
        raise DimensionError("gram: F must be N x N and X must have N rows")
    return matmul(transpose(X), matmul(F, X))


def is_alternating(F: Matrix) -> bool:
    n = len(F)
    return all(len(r) == n for r in F) and all(
        not F[i][i] and F[i][j] == -F[j][i] for i in range(n) for j in range(i, n)
    )


def plucker(X: Matrix) -> Vector:
    """All maximal minors of the N x L matrix ``X``, rows in lexicographic order."""
    N = len(X)
    if N == 0:
        raise DimensionError("empty matrix")
    L = len(X[0])
    if L > N:
        raise RankError("more columns than rows")
    coords = tuple(det([X[i] for i in idx]) for idx in combinations(range(N), L))
    if not any(coords):
        raise RankError("matrix is rank deficient")
    return coords


# --------------------------------------------------------------------------
# serialization


def matrix_to_json(M: Matrix) -> dict:
    rows = len(M)
    cols = len(M[0]) if M else 0
    return {"rows": rows, "cols": cols, "entries": [str(a) for row in M for a in row]}


def matrix_from_json(obj, field: GroundField) -> Matrix:
    """Accepts ``{"rows", "cols", "entries"}`` (row-major) or a list of rows."""
    if isinstance(obj, list):
        if len({len(r) for r in obj}) > 1:
            raise DimensionError("rows have different lengths")
        return [[field.element(e) for e in r] for r in obj]
    rows, cols = int(obj["rows"]), int(obj["cols"])
    entries = [field.element(e) for e in obj["entries"]]
    if len(entries) != rows * cols:
        raise DimensionError("entry count does not match rows*cols")
    return [entries[i * cols:(i + 1) * cols] for i in range(rows)]


def vector_to_json(v) -> list[str]:
    return [str(a) for a in v]


def vector_from_json(obj, field: GroundField) -> Vector:
    return tuple(field.element(e) for e in obj)


# --------------------------------------------------------------------------
# saturation


def saturate(X: Matrix) -> Matrix:
    """Basis of the saturated lattice (module) spanned by the columns of X.

    Over Q the result is an integer basis of ``span_Q(X) ∩ Z^N``; over
    GF(p)(t) a polynomial basis of ``span(X) ∩ GF(p)[t]^N``. The basis is
    size-reduced (LLL resp. weak Popov) so entries stay small.
    """
    from .lattice import saturated_basis

    if not X or not X[0]:
        raise DimensionError("saturate needs a nonempty matrix")
    if rank(X) != len(X[0]):
        raise RankError("saturate needs a full column rank matrix")
    field = matrix_field(X)
    return from_columns(saturated_basis(columns(X), field))
