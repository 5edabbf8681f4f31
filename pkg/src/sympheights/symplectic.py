"""Symplectic bases of bounded height, hyperbolic planes and isotropic flags.

The construction is recursive. A certified small basis z_1..z_2k of Z is
computed, and the non-orthogonal pair (z_i, z_j) with the smallest height
product is picked. It is normalized to x_1 = z_i / F(z_i, z_j), y_1 = z_j. The
recursion then continues on the F-orthogonal complement of span{x_1, y_1}
inside Z. The height product of the output satisfies

    prod H_A(x_i) H_A(y_i) <= (C_K(N, 2k) H_A(Z))^a_k * (c'(A) H(F))^b_k

with the exponents from :func:`exponents`. :func:`verify_bounds` checks that
inequality and its corollaries exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CliqueViolationError, ContractError, DimensionError, DomainError, FormError, RegularityError
from .fields import ExactPositive, GroundField
from .graphs import disjoint_disconnected_pairs, orthogonality_graph
from .heights import AdelicAutomorphism, dilation_constants, form_height, height_subspace, height_vector
from .linalg import (
    Subspace,
    bilinear,
    det,
    from_columns,
    gram,
    intersect,
    is_alternating,
    kernel,
    matrix_from_json,
    matrix_to_json,
    matvec,
    scale_vector,
    sum_space,
    transpose,
    vector_to_json,
)
from .siegel import SiegelCertificate, field_constant, small_basis


@dataclass(frozen=True)
class SymplecticSpace:
    field: GroundField
    N: int
    F: tuple
    Z: Subspace

    def __post_init__(self):
        F = tuple(tuple(self.field.element(a) for a in row) for row in self.F)
        object.__setattr__(self, "F", F)
        if len(F) != self.N or any(len(r) != self.N for r in F):
            raise DimensionError("F must be N x N")
        if not is_alternating(F):
            raise FormError("F is not alternating")
        if self.Z.ambient_dim != self.N or self.Z.field != self.field:
            raise DimensionError("Z does not live in K^N")
        if self.Z.dim == 0 or self.Z.dim % 2:
            raise DimensionError(f"Z must have positive even dimension, got {self.Z.dim}")

    @property
    def k(self) -> int:
        return self.Z.dim // 2

    def pairing(self, x, y):
        return bilinear(self.F, x, y)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "N": self.N,
            "k": self.k,
            "F": matrix_to_json([list(r) for r in self.F]),
            "Z": matrix_to_json(self.Z.matrix),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SymplecticSpace":
        field = GroundField.from_json(obj["field"])
        F = matrix_from_json(obj["F"], field)
        Z = Subspace.from_matrix(matrix_from_json(obj["Z"], field), field)
        space = cls(field, int(obj["N"]), F, Z)
        if "k" in obj and int(obj["k"]) != space.k:
            raise DimensionError("k does not match dim Z / 2")
        return space


def is_regular(space: SymplecticSpace) -> bool:
    return bool(det(gram(space.F, space.Z.matrix)))


@dataclass(frozen=True)
class ExponentPair:
    a_k: int
    b_k: int


def exponents(k: int) -> ExponentPair:
    if k < 1:
        raise DomainError("k must be at least 1")
    if k % 2 == 0:
        a, b = divmod(k * k + 4 * k, 4), divmod(2 * k**3 + 9 * k * k - 14 * k, 12)
    else:
        a, b = divmod(k * k + 4 * k - 1, 4), divmod(2 * k**3 + 9 * k * k - 14 * k + 3, 12)
    assert a[1] == 0 and b[1] == 0
    return ExponentPair(a[0], b[0])


@dataclass(frozen=True)
class LevelRecord:
    """What happened at one recursion level."""

    dimension: int
    pair: tuple[int, int]
    M: int
    pairHeight: ExactPositive
    siegel: SiegelCertificate
    pairBoundSatisfied: bool

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "pair": list(self.pair),
            "M": self.M,
            "pairHeight": self.pairHeight.to_json(),
            "pairBoundSatisfied": self.pairBoundSatisfied,
            "siegel": self.siegel.to_json(),
        }


@dataclass(frozen=True)
class SymplecticBasis:
    space: SymplecticSpace
    x: tuple
    y: tuple
    levels: tuple = ()

    @property
    def k(self) -> int:
        return len(self.x)

    def gram_pattern_ok(self) -> bool:
        """Exact check of the defining relations."""
        k, field = self.k, self.space.field
        G = gram(self.space.F, from_columns(list(self.x) + list(self.y)))
        for i in range(2 * k):
            for j in range(2 * k):
                want = field.one() if j == i + k else -field.one() if i == j + k else field.zero()
                if G[i][j] != want:
                    return False
        return True

    def validate(self) -> None:
        if len(self.x) != len(self.y) or 2 * len(self.x) != self.space.Z.dim:
            raise ContractError("basis has the wrong size")
        if not self.gram_pattern_ok():
            raise ContractError("basis violates the symplectic relations")
        if not all(v in self.space.Z for v in self.x + self.y):
            raise ContractError("basis vector outside Z")

    def to_json(self) -> dict:
        return {
            "x": [vector_to_json(v) for v in self.x],
            "y": [vector_to_json(v) for v in self.y],
            "levels": [r.to_json() for r in self.levels],
        }


def _complement_in(F, x, y, Z: Subspace) -> Subspace:
    """``{z in Z : F(x, z) = F(y, z) = 0}``."""
    rows = [list(matvec(transpose(F), v)) for v in (x, y)]
    return intersect(kernel(rows, Z.field, Z.ambient_dim), Z)


def _pick_pair(space: SymplecticSpace, A, z, hs):
    k = len(z) // 2
    best = None
    for i in range(2 * k):
        for j in range(i + 1, 2 * k):
            if not space.pairing(z[i], z[j]):
                continue
            prod = hs[i] * hs[j]
            if best is None or prod < best[0]:
                best = (prod, i, j)
    if best is None:
        # unreachable for a regular space; the sweep supplies a clique certificate
        disjoint_disconnected_pairs(orthogonality_graph(space.F, z), k)
        raise RegularityError("no non-orthogonal pair among the reduced basis")
    return best


def symplectic_basis(A: AdelicAutomorphism, space: SymplecticSpace) -> SymplecticBasis:
    """Symplectic basis of Z whose twisted height product obeys the theorem bound."""
    if not is_regular(space):
        raise RegularityError("the restriction of F to Z is degenerate")
    if A.dim != space.N or A.field != space.field:
        raise DimensionError("automorphism does not match the space")
    xs, ys, levels = [], [], []
    Z = space.Z
    while True:
        k = Z.dim // 2
        cert = small_basis(A, Z)
        z, hs = cert.basis, cert.heights
        if k == 1:
            i, j, prod = 0, 1, hs[0] * hs[1]
            if not space.pairing(z[0], z[1]):
                raise RegularityError("two-dimensional block is isotropic")
        else:
            try:
                prod, i, j = _pick_pair(space, A, z, hs)
            except CliqueViolationError as exc:
                raise RegularityError(f"orthogonality graph has a clique {exc.clique}") from exc
        M = (k + 1) // 2
        pair_ok = prod**M <= cert.bound
        levels.append(LevelRecord(Z.dim, (i + 1, j + 1), M, prod, cert, pair_ok))
        x = scale_vector(1 / space.pairing(z[i], z[j]), z[i])
        y = z[j]
        xs.append(x)
        ys.append(y)
        if k == 1:
            break
        Z1 = _complement_in(space.F, x, y, Z)
        if Z1.dim != Z.dim - 2:
            raise RegularityError("orthogonal complement has the wrong dimension")
        Z = Z1
    basis = SymplecticBasis(space, tuple(xs), tuple(ys), tuple(levels))
    basis.validate()
    return basis


def hyperbolic_decomposition(basis: SymplecticBasis) -> list[Subspace]:
    basis.validate()
    field, N = basis.space.field, basis.space.N
    return [Subspace(field, N, (x, y)) for x, y in zip(basis.x, basis.y)]


@dataclass(frozen=True)
class IsotropicFlagPair:
    V: tuple
    W: tuple
    order: tuple

    def to_json(self) -> dict:
        return {
            "order": [i + 1 for i in self.order],
            "V": [matrix_to_json(v.matrix) for v in self.V],
            "W": [matrix_to_json(w.matrix) for w in self.W],
        }


def _order_by_pair_height(basis: SymplecticBasis, A: AdelicAutomorphism) -> list[int]:
    hs = [height_vector(A, x) * height_vector(A, y) for x, y in zip(basis.x, basis.y)]
    order = list(range(basis.k))
    # insertion sort: ExactPositive is not hashable in general, keep comparisons exact
    for a in range(1, len(order)):
        b = a
        while b > 0 and hs[order[b]] < hs[order[b - 1]]:
            order[b - 1], order[b] = order[b], order[b - 1]
            b -= 1
    return order


def isotropic_flags(basis: SymplecticBasis, A: AdelicAutomorphism | None = None) -> IsotropicFlagPair:
    """Flags of totally isotropic subspaces ordered by nondecreasing pair height."""
    basis.validate()
    field, N = basis.space.field, basis.space.N
    A = A or AdelicAutomorphism.identity(field, N)
    order = _order_by_pair_height(basis, A)
    V = tuple(Subspace(field, N, tuple(basis.x[i] for i in order[: n + 1])) for n in range(basis.k))
    W = tuple(Subspace(field, N, tuple(basis.y[i] for i in order[: n + 1])) for n in range(basis.k))
    return IsotropicFlagPair(V, W, tuple(order))


@dataclass(frozen=True)
class FlagBound:
    n: int
    lhs: ExactPositive
    lhsPowK: ExactPositive
    rhsPowN: ExactPositive
    satisfied: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lhs": _value_json(self.lhs),
            "lhsPowK": _value_json(self.lhsPowK),
            "rhsPowN": _value_json(self.rhsPowN),
            "satisfied": self.satisfied,
        }


@dataclass(frozen=True)
class BoundReport:
    lhs: ExactPositive
    rhsTheorem: ExactPositive
    hyperbolicLhs: ExactPositive
    flagBounds: tuple
    satisfied: dict

    @property
    def all_satisfied(self) -> bool:
        return all(self.satisfied.values())

    def to_json(self) -> dict:
        return {
            "lhs": _value_json(self.lhs),
            "rhsTheorem": _value_json(self.rhsTheorem),
            "hyperbolicLhs": _value_json(self.hyperbolicLhs),
            "flagBounds": [f.to_json() for f in self.flagBounds],
            "satisfied": dict(self.satisfied),
        }


def _value_json(h: ExactPositive) -> dict:
    return {"exact": h.to_json(), "approx": float(h)}


def theorem_rhs(A: AdelicAutomorphism, space: SymplecticSpace) -> ExactPositive:
    """``(C_K(N,2k) H_A(Z))^a_k * (c'(A) H(F))^b_k``."""
    e = exponents(space.k)
    C = field_constant(space.field, space.N, space.Z.dim)
    base1 = C * height_subspace(A, space.Z)
    base2 = dilation_constants(A).frakCprime * form_height([list(r) for r in space.F])
    return base1**e.a_k * base2**e.b_k


def _is_isotropic(F, U: Subspace) -> bool:
    return not any(a for row in gram(F, U.matrix) for a in row)


def verify_bounds(A: AdelicAutomorphism, space: SymplecticSpace, basis: SymplecticBasis) -> BoundReport:
    """Exact comparison of the achieved heights with every bound; never raises on failure."""
    field = space.field
    one = ExactPositive.one(field)
    k = space.k
    checks: dict[str, bool] = {}
    try:
        basis.validate()
        checks["symplecticRelations"] = True
    except ContractError:
        checks["symplecticRelations"] = False
    rhs = theorem_rhs(A, space)
    lhs = one
    for x, y in zip(basis.x, basis.y):
        lhs = lhs * height_vector(A, x) * height_vector(A, y)
    checks["theorem"] = lhs <= rhs

    planes = [Subspace(field, space.N, (x, y)) for x, y in zip(basis.x, basis.y)]
    hyp = one
    for H in planes:
        hyp = hyp * height_subspace(A, H)
    checks["hyperbolic"] = hyp <= rhs
    checks["hyperbolicOrthogonal"] = all(
        not space.pairing(u, w)
        for a in range(k)
        for b in range(k)
        if a != b
        for u in planes[a].basis
        for w in planes[b].basis
    )

    flags = isotropic_flags(basis, A)
    bounds = []
    for n in range(1, k + 1):
        Vn, Wn = flags.V[n - 1], flags.W[n - 1]
        h = height_subspace(A, Vn) * height_subspace(A, Wn)
        lk, rn = h**k, rhs**n
        bounds.append(FlagBound(n, h, lk, rn, lk <= rn))
    checks["flags"] = all(b.satisfied for b in bounds)
    checks["flagsIsotropic"] = all(_is_isotropic(space.F, U) for U in flags.V + flags.W)
    checks["flagsNested"] = all(
        flags.V[n + 1].contains_subspace(flags.V[n]) and flags.W[n + 1].contains_subspace(flags.W[n])
        for n in range(k - 1)
    )
    checks["flagsTransversal"] = all(intersect(v, w).dim == 0 for v, w in zip(flags.V, flags.W))
    checks["flagsSpanZ"] = sum_space(flags.V[-1], flags.W[-1]).same_span(space.Z)
    checks["siegel"] = all(r.siegel.satisfied for r in basis.levels)
    checks["pairBound"] = all(r.pairBoundSatisfied for r in basis.levels)
    return BoundReport(lhs, rhs, hyp, tuple(bounds), checks)


__all__ = [
    "BoundReport",
    "ExponentPair",
    "FlagBound",
    "IsotropicFlagPair",
    "LevelRecord",
    "SymplecticBasis",
    "SymplecticSpace",
    "exponents",
    "hyperbolic_decomposition",
    "is_regular",
    "isotropic_flags",
    "symplectic_basis",
    "theorem_rhs",
    "verify_bounds",
]
