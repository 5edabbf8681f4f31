"""Small bases of subspaces with an exact certificate against the Siegel bound.

For a subspace Z of K^N of dimension L and an adelic automorphism A, the goal
is a basis z_1..z_L of Z with

    prod_i H_A(z_i) <= C_K(N, L) * H_A(Z).

Over Q the twisted height of a vector is the Euclidean norm of
``A_inf x`` where x is the primitive representative of the line in the lattice
``{x : A_p x in Z_p^N for every finite p}``. Reducing the saturated sublattice
inside Z with LLL under the form ``A_inf^t A_inf`` therefore gives a candidate.
If LLL misses the bound, the successive minima are computed by enumeration.
Minkowski's second theorem guarantees that they meet it.

Over GF(p)(t) (diagonal twists only) a shifted weak Popov basis of the
saturated polynomial module meets the bound with equality.

Every result is re-checked with the independent height routines of
:mod:`sympheights.heights`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CertificationError, DomainError, RankError, UnsupportedError
from .fields import ExactPositive, ExpPositive, GroundField, RationalFunction, SurdPositive, ord_at
from .heights import AdelicAutomorphism, height_subspace, height_vector
from .lattice import (
    gram_of,
    lll,
    lll_gram,
    primitive_part,
    ring_kernel,
    saturated_basis,
    successive_minima,
    to_field_vector,
    weak_popov,
    IntegerRing,
)
from .linalg import Subspace, from_columns, inverse, matvec, rank, transpose


class Method(str, enum.Enum):
    LATTICE_REDUCTION = "LatticeReduction"
    POLYNOMIAL_ROW_REDUCTION = "PolynomialRowReduction"
    ENUMERATION = "Enumeration"


@dataclass(frozen=True)
class SiegelCertificate:
    basis: tuple
    heights: tuple
    productOfHeights: ExactPositive
    subspaceHeight: ExactPositive
    bound: ExactPositive
    satisfied: bool
    method: Method

    @property
    def tight(self) -> bool:
        """True when the height product equals H_A(Z)."""
        return self.productOfHeights == self.subspaceHeight

    def to_json(self) -> dict:
        return {
            "basis": [[str(a) for a in v] for v in self.basis],
            "heights": [h.to_json() for h in self.heights],
            "productOfHeights": self.productOfHeights.to_json(),
            "subspaceHeight": self.subspaceHeight.to_json(),
            "bound": self.bound.to_json(),
            "satisfied": self.satisfied,
            "method": self.method.value,
        }


def field_constant(field: GroundField, N: int, L: int) -> ExactPositive:
    """C_K(N, L): ``N**(L/2)`` over Q and exactly 1 over GF(p)(t) (genus 0)."""
    if not 1 <= L <= N:
        raise DomainError(f"field constant needs 1 <= L <= N, got L={L}, N={N}")
    if field.is_rational:
        return SurdPositive(N ** (L // 2), N ** (L % 2))
    return ExpPositive.exp(0)


# --------------------------------------------------------------------------
# Q backend


def twisted_lattice(A: AdelicAutomorphism) -> list[tuple]:
    """Basis (columns, rational) of ``{x in Q^N : A_p x in Z_p^N for all finite p}``.

    Outside the support of A the condition is plain integrality.
    """
    N = A.dim
    finite = [(v, [list(r) for r in M]) for v, M in A.components if not v.is_infinite]
    if not finite:
        return [tuple(Fraction(int(i == j)) for i in range(N)) for j in range(N)]
    rows, moduli = [], []
    scale = 1
    exps = []
    for v, M in finite:
        p = v.prime
        inv = inverse(M)
        e = max([0] + [-ord_at(v, a) for row in inv for a in row if a])
        exps.append((p, e))
        scale *= p**e
    for (v, M), (p, e) in zip(finite, exps):
        d = 1
        for row in M:
            for a in row:
                d = d * Fraction(a).denominator // math.gcd(d, Fraction(a).denominator)
        m = ord_at(v, Fraction(d)) + e
        if m == 0:
            continue
        for row in M:
            rows.append([int(Fraction(a) * d) for a in row])
            moduli.append(p**m)
    if not rows:
        basis = [tuple(int(i == j) for i in range(N)) for j in range(N)]
    else:
        R = len(rows)
        C = [rows[i] + [moduli[i] if c == i else 0 for c in range(R)] for i in range(R)]
        ker = ring_kernel(C, IntegerRing())
        basis = lll([k[:N] for k in ker])
    return [tuple(Fraction(a, scale) for a in b) for b in basis]


def _arch_form(A: AdelicAutomorphism):
    for v, M in A.components:
        if v.is_archimedean:
            M = [list(r) for r in M]
            return [[sum((M[r][i] * M[r][j] for r in range(A.dim)), Fraction(0)) for j in range(A.dim)] for i in range(A.dim)]
    return None


def _certify(A, Z, basis, method, hZ, bound) -> SiegelCertificate:
    hs = tuple(height_vector(A, z) for z in basis)
    prod = ExactPositive.one(A.field)
    for h in hs:
        prod = prod * h
    return SiegelCertificate(tuple(basis), hs, prod, hZ, bound, prod <= bound, method)


def _normalize(vectors, field):
    return [to_field_vector(primitive_part(v, field)[0], field) for v in vectors]


def _small_basis_rational(A: AdelicAutomorphism, Z: Subspace, hZ, bound) -> SiegelCertificate:
    N, L = Z.ambient_dim, Z.dim
    lat = twisted_lattice(A)
    B = from_columns(lat)
    Binv = inverse(B)
    coords = [matvec(Binv, z) for z in Z.basis]
    sat = saturated_basis(coords, A.field)
    vecs = [matvec(B, y) for y in sat]
    form = _arch_form(A)
    U, G = lll_gram(gram_of(vecs, form))
    reduced = [
        tuple(sum((U[i][j] * vecs[i][r] for i in range(L)), Fraction(0)) for r in range(N)) for j in range(L)
    ]
    cert = _certify(A, Z, _normalize(reduced, A.field), Method.LATTICE_REDUCTION, hZ, bound)
    if cert.satisfied:
        return cert
    mins = successive_minima(G)
    enum_basis = [
        tuple(sum((c[i] * reduced[i][r] for i in range(L)), Fraction(0)) for r in range(N)) for c in mins
    ]
    cert2 = _certify(A, Z, _normalize(enum_basis, A.field), Method.ENUMERATION, hZ, bound)
    if cert2.satisfied:
        return cert2
    best = min((cert, cert2), key=lambda c: c.productOfHeights.log())
    raise CertificationError("no basis meeting the Siegel bound was found", best=best)


# --------------------------------------------------------------------------
# GF(p)(t) backend


def _diagonal_twist(A: AdelicAutomorphism):
    """Return (D, shifts): ``y = D x`` moves all finite twists to infinity."""
    if not A.is_diagonal():
        raise UnsupportedError("over GF(p)(t) only diagonal local components are supported")
    N, p = A.dim, A.field.p
    D = [A.field.one() for _ in range(N)]
    arch = [0] * N
    for v, M in A.components:
        for i in range(N):
            a = M[i][i]
            if v.is_infinite:
                arch[i] = a.degree()
            else:
                n = ord_at(v, a)
                if n:
                    D[i] = D[i] * RationalFunction.from_poly(v.prime, p) ** n
    shifts = [arch[i] - D[i].degree() for i in range(N)]
    return D, shifts


def _small_basis_function_field(A: AdelicAutomorphism, Z: Subspace, hZ, bound) -> SiegelCertificate:
    field = A.field
    D, shifts = _diagonal_twist(A)
    moved = [tuple(d * a for d, a in zip(D, z)) for z in Z.basis]
    sat = saturated_basis(moved, field)
    polys = [primitive_part(y, field)[0] for y in sat]
    reduced = weak_popov(polys, field.p, shifts)
    back = [tuple(RationalFunction.from_poly(f, field.p) / d for f, d in zip(y, D)) for y in reduced]
    cert = _certify(A, Z, _normalize(back, field), Method.POLYNOMIAL_ROW_REDUCTION, hZ, bound)
    if not cert.satisfied:
        raise CertificationError("weak Popov basis misses the Siegel bound", best=cert)
    return cert


def small_basis(A: AdelicAutomorphism, Z: Subspace) -> SiegelCertificate:
    """Basis of Z with a certified bound on the product of twisted heights."""
    if Z.dim == 0:
        raise DomainError("small_basis needs a nonzero subspace")
    if Z.ambient_dim != A.dim or Z.field != A.field:
        raise DomainError("subspace and automorphism do not match")
    if rank(transpose(Z.matrix)) != Z.dim:
        raise RankError("basis is rank deficient")
    hZ = height_subspace(A, Z)
    bound = field_constant(A.field, Z.ambient_dim, Z.dim) * hZ
    if A.field.is_rational:
        return _small_basis_rational(A, Z, hZ, bound)
    return _small_basis_function_field(A, Z, hZ, bound)
