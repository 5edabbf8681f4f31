"""Canonical and twisted heights of vectors, subspaces, matrices and forms.

A twisted height is attached to an :class:`AdelicAutomorphism`, a finitely
supported element of GL_N over the adeles: a map from places to invertible
local matrices, with the identity understood everywhere else. The identity
automorphism gives back the canonical height.

Heights are computed exactly. For a vector x the canonical height is read off
its primitive part (Euclidean norm over Q, maximal degree over GF(p)(t)), and
each place in the support of the automorphism then corrects its own local
factor. :func:`height_by_places` evaluates the defining product place by
place and serves as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import BackendMismatchError, DimensionError, DomainError, RankError
from .fields import (
    ExactPositive,
    ExpPositive,
    GroundField,
    Place,
    SurdPositive,
    abs_value,
    ord_at,
    support_places,
)
from .lattice import primitive_part
from . import polys as P
from .linalg import (
    Subspace,
    det,
    identity,
    inverse,
    kernel,
    matmul,
    matrix_field,
    matrix_from_json,
    matrix_to_json,
    matvec,
    plucker,
    transpose,
)

HeightValue = ExactPositive


# --------------------------------------------------------------------------
# adelic automorphisms


@dataclass(frozen=True)
class AdelicAutomorphism:
    """Finitely supported element of GL_N(K_A); identity off ``components``."""

    field: GroundField
    dim: int
    components: tuple = ()

    def __post_init__(self):
        comps = []
        seen = set()
        for v, M in self.components:
            if v.field != self.field:
                raise BackendMismatchError(f"place {v} does not belong to {self.field}")
            if v in seen:
                raise DomainError(f"place {v} given twice")
            seen.add(v)
            if len(M) != self.dim or any(len(r) != self.dim for r in M):
                raise DimensionError("local component has the wrong size")
            for row in M:
                for a in row:
                    self.field.check(a)
            if not det(M):
                raise RankError(f"local component at {v} is singular")
            comps.append((v, tuple(tuple(r) for r in M)))
        comps.sort(key=lambda vm: vm[0].sort_key)
        object.__setattr__(self, "components", tuple(comps))

    @classmethod
    def identity(cls, field: GroundField, dim: int) -> "AdelicAutomorphism":
        return cls(field, dim, ())

    @property
    def support(self) -> list[Place]:
        return [v for v, _ in self.components]

    def component(self, v: Place):
        for w, M in self.components:
            if w == v:
                return [list(r) for r in M]
        return None

    @property
    def is_identity(self) -> bool:
        return not self.components

    def is_diagonal(self) -> bool:
        return all(not M[i][j] for _, M in self.components for i in range(self.dim) for j in range(self.dim) if i != j)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "components": [{"place": v.to_json(), "matrix": matrix_to_json([list(r) for r in M])} for v, M in self.components],
        }

    @classmethod
    def from_json(cls, obj: dict, field: GroundField) -> "AdelicAutomorphism":
        comps = tuple(
            (Place.parse(field, c["place"]), matrix_from_json(c["matrix"], field)) for c in obj.get("components", [])
        )
        return cls(field, int(obj["dim"]), comps)


def star(A: AdelicAutomorphism) -> AdelicAutomorphism:
    """Componentwise inverse transpose."""
    return AdelicAutomorphism(A.field, A.dim, tuple((v, transpose(inverse([list(r) for r in M]))) for v, M in A.components))


# --------------------------------------------------------------------------
# local norms


def local_norm(v: Place, x) -> ExactPositive | None:
    """Sup norm at finite places, Euclidean norm at the archimedean place.

    Returns None for the zero vector.
    """
    nz = [a for a in x if a]
    if not nz:
        return None
    if v.is_archimedean:
        return SurdPositive.sqrt_of(sum((Fraction(a) ** 2 for a in nz), Fraction(0)))
    if v.field.is_rational:
        return SurdPositive(Fraction(v.prime) ** (-min(ord_at(v, a) for a in nz)))
    if v.is_infinite:
        return ExpPositive.exp(max(a.degree() for a in nz))
    return ExpPositive.exp(-P.degree(v.prime) * min(ord_at(v, a) for a in nz))


def _canonical_height(x, field: GroundField) -> ExactPositive:
    y, _ = primitive_part(x, field)
    if field.is_rational:
        return SurdPositive.sqrt_of(sum(a * a for a in y))
    return ExpPositive.exp(max(P.degree(f) for f in y))


def height_vector(A: AdelicAutomorphism, x) -> HeightValue:
    """Twisted height ``H_A(x)``; ``H`` when A is the identity."""
    x = tuple(x)
    if len(x) != A.dim:
        raise DimensionError(f"vector of length {len(x)} for an automorphism of GL_{A.dim}")
    for a in x:
        A.field.check(a)
    if not any(x):
        raise DomainError("height of the zero vector")
    h = _canonical_height(x, A.field)
    for v, M in A.components:
        h = h * local_norm(v, matvec([list(r) for r in M], x)) / local_norm(v, x)
    return h


def height_by_places(A: AdelicAutomorphism, x) -> HeightValue:
    """Evaluate ``prod_v ||A_v x||_v`` over an explicit finite set of places.

    Slow (factorizes every coordinate); used as an oracle for
    :func:`height_vector`.
    """
    x = tuple(x)
    if not any(x):
        raise DomainError("height of the zero vector")
    images = {v: matvec([list(r) for r in M], x) for v, M in A.components}
    elems = [a for a in x if a] + [a for img in images.values() for a in img if a]
    places = set(support_places(elems, A.field)) | set(A.support)
    h = ExactPositive.one(A.field)
    for v in sorted(places, key=lambda w: w.sort_key):
        h = h * local_norm(v, images.get(v, x)) ** v.local_degree
    return h


# --------------------------------------------------------------------------
# exterior powers


def compound(M, J: int):
    """J-th compound matrix: all J x J minors, index sets in lexicographic order."""
    n = len(M)
    idx = list(combinations(range(n), J))
    return [[det([[M[r][c] for c in cs] for r in rs]) for cs in idx] for rs in idx]


def wedge_automorphism(A: AdelicAutomorphism, J: int) -> AdelicAutomorphism:
    """The automorphism induced on the J-th exterior power, materialized."""
    from math import comb

    return AdelicAutomorphism(A.field, comb(A.dim, J), tuple((v, compound([list(r) for r in M], J)) for v, M in A.components))


def _as_columns(X, orientation: str | None):
    n_rows = len(X)
    n_cols = len(X[0]) if X else 0
    if orientation is None:
        if n_rows == n_cols:
            raise DomainError("square matrix: pass orientation='columns' or 'rows'")
        orientation = "columns" if n_rows > n_cols else "rows"
    if orientation == "columns":
        return [list(r) for r in X]
    if orientation == "rows":
        return transpose(X)
    raise DomainError(f"unknown orientation {orientation!r}")


def height_matrix(A: AdelicAutomorphism, X, orientation: str | None = None) -> HeightValue:
    """Height of the wedge product of the columns (or rows) of X.

    ``orientation`` is required for square X.
    """
    Xc = _as_columns(X, orientation)
    if len(Xc) != A.dim:
        raise DimensionError("matrix does not live in the automorphism's space")
    w = plucker(Xc)
    one = AdelicAutomorphism.identity(A.field, len(w))
    h = height_vector(one, w)
    for v, M in A.components:
        img = plucker(matmul([list(r) for r in M], Xc))
        h = h * local_norm(v, img) / local_norm(v, w)
    return h


def height_subspace(A: AdelicAutomorphism, V: Subspace, orientation: str = "columns") -> HeightValue:
    """Twisted height of a nonzero subspace via any of its bases."""
    if V.dim == 0:
        raise DomainError("height of the zero subspace")
    if orientation == "rows":
        return height_matrix(A, transpose(V.matrix), "rows")
    return height_matrix(A, V.matrix, "columns")


def form_height(F) -> HeightValue:
    """Height of the coefficient matrix viewed as a vector of length N^2."""
    flat = tuple(a for row in F for a in row)
    if not any(flat):
        raise DomainError("height of the zero form")
    field = matrix_field(F)
    return height_vector(AdelicAutomorphism.identity(field, len(flat)), flat)


def dual_complement(V: Subspace):
    """(N-L) x N matrix B of full rank with ``V = ker B``."""
    if V.dim == 0 or V.dim >= V.ambient_dim:
        raise DomainError("dual complement needs 1 <= dim V < N")
    ann = kernel(transpose(V.matrix), V.field, V.ambient_dim)
    return [list(w) for w in ann.basis]


# --------------------------------------------------------------------------
# dilation constants


def is_isometry(v: Place, M) -> bool:
    n = len(M)
    if v.is_archimedean:
        return matmul(transpose(M), M) == identity(v.field, n)
    d = det(M)
    if v.is_infinite:
        return all(not a or a.degree() <= 0 for row in M for a in row) and d.degree() == 0
    return all(not a or ord_at(v, a) >= 0 for row in M for a in row) and ord_at(v, d) == 0


@dataclass(frozen=True)
class DilationConstants:
    C1: ExactPositive
    C2: ExactPositive
    frakC: ExactPositive
    frakCprime: ExactPositive
    detAdelic: ExactPositive

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("C1", "C2", "frakC", "frakCprime", "detAdelic")}


def _abs_sum(v: Place, M) -> ExactPositive:
    total = None
    for row in M:
        for a in row:
            if a:
                term = abs_value(v, a)
                total = term if total is None else total + term
    return total


def det_adelic(A: AdelicAutomorphism) -> ExactPositive:
    """``|det A|_A = prod_v |det A_v|_v``."""
    out = ExactPositive.one(A.field)
    for v, M in A.components:
        out = out * abs_value(v, det([list(r) for r in M]))
    return out


def dilation_constants(A: AdelicAutomorphism) -> DilationConstants:
    one = ExactPositive.one(A.field)
    C1, C2 = one, one
    for v, M in A.components:
        M = [list(r) for r in M]
        if is_isometry(v, M):
            continue
        C2 = C2 * _abs_sum(v, M)
        C1 = C1 / _abs_sum(v, inverse(M))
    d = det_adelic(A)
    frakC = C2 / C1
    frakCprime = frakC * d.sqrt() / C1**2
    return DilationConstants(C1, C2, frakC, frakCprime, d)

