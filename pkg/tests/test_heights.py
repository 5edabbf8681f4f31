from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sympheights.errors import DomainError, RankError
from sympheights.fields import QQ, ExpPositive, GroundField, Place, SurdPositive
from sympheights.harness import make_rng, random_automorphism, random_element, random_subspace
from sympheights.heights import (
    AdelicAutomorphism,
    dilation_constants,
    dual_complement,
    form_height,
    height_by_places,
    height_matrix,
    height_subspace,
    height_vector,
    star,
)
from sympheights.linalg import Subspace

from .oracles import height_sq_q, log_height_ff, subspace_height_sq_q

F2 = GroundField(2)
t = F2.t()
ONE = F2.one()
small = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def I(field, n):
    return AdelicAutomorphism.identity(field, n)


def diag_at(field, place, entries):
    n = len(entries)
    M = [[Fraction(entries[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    return AdelicAutomorphism(field, n, ((Place(field, place), M),))


def test_vector_height_examples():
    assert height_vector(I(QQ, 3), (1, 0, 0)) == 1
    assert height_vector(I(QQ, 3), (Fraction(1), Fraction(2), Fraction(2))) == 3
    assert height_vector(I(F2, 2), (t, t + ONE)) == ExpPositive.exp(1)
    with pytest.raises(DomainError):
        height_vector(I(QQ, 2), (Fraction(0), Fraction(0)))


def test_subspace_height_examples():
    e = [tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)]
    assert height_subspace(I(QQ, 4), Subspace(QQ, 4, (e[0], e[1]))) == 1
    assert height_subspace(I(QQ, 3), Subspace(QQ, 3, ((1, 0, 1), (0, 1, 1)))) == SurdPositive(1, 3)
    assert height_subspace(I(QQ, 2), Subspace(QQ, 2, ((1, 0), (0, 1)))) == 1


def test_form_height_examples():
    J2 = [[Fraction(0), Fraction(1)], [Fraction(-1), Fraction(0)]]
    assert form_height(J2) == SurdPositive(1, 2)
    assert form_height([[7 * a for a in r] for r in J2]) == SurdPositive(1, 2)
    J4 = [[Fraction(0)] * 4 for _ in range(4)]
    J4[0][1], J4[1][0], J4[2][3], J4[3][2] = 1, -1, 1, -1
    assert form_height(J4) == 2
    with pytest.raises(DomainError):
        form_height([[Fraction(0)] * 2] * 2)


@settings(max_examples=100)
@given(st.lists(small, min_size=1, max_size=6).filter(any), small.filter(bool))
def test_vector_height_matches_oracle_and_is_projective(x, c):
    h = height_vector(I(QQ, len(x)), tuple(x))
    assert h.square == height_sq_q(x)
    assert height_vector(I(QQ, len(x)), tuple(c * a for a in x)) == h


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(0, 1), min_size=1, max_size=5), min_size=2, max_size=4))
def test_ff_vector_height_matches_oracle(coeffs):
    s = sympy.Symbol("t")
    polys = [sum(c * s**i for i, c in enumerate(cs)) for cs in coeffs]
    if all(sympy.Poly(f, s, modulus=2).is_zero for f in polys):
        return
    v = tuple(F2.element(tuple(cs)) for cs in coeffs)
    assert height_vector(I(F2, len(v)), v).log_exponent == log_height_ff(polys, 2)


@settings(max_examples=30)
@given(st.integers(0, 2**32))
def test_subspace_height_matches_oracle_and_basis_change(seed):
    rng = make_rng(seed)
    V = random_subspace(rng, QQ, 4, 2, 5)
    h = height_subspace(I(QQ, 4), V)
    assert h.square == subspace_height_sq_q(list(V.basis))
    u, w = V.basis
    W = Subspace(QQ, 4, (tuple(a + 3 * b for a, b in zip(u, w)), tuple(-2 * b for b in w)))
    assert height_subspace(I(QQ, 4), W) == h


def test_rank_deficient_matrix():
    with pytest.raises(RankError):
        height_matrix(I(QQ, 2), [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], "columns")


def test_star_examples():
    assert star(I(QQ, 2)).is_identity
    A = diag_at(QQ, None, [2, 1])
    assert star(A).component(Place(QQ, None)) == [[Fraction(1, 2), 0], [0, 1]]
    assert star(star(A)) == A


def test_dilation_constants_identity():
    dc = dilation_constants(I(QQ, 3))
    assert (dc.C1, dc.C2, dc.frakC, dc.frakCprime, dc.detAdelic) == (1, 1, 1, 1, 1)
    dc = dilation_constants(I(F2, 3))
    assert dc.frakCprime == ExpPositive.exp(0)


def test_dilation_constants_archimedean_diag():
    dc = dilation_constants(diag_at(QQ, None, [2, 1]))
    assert dc.C1 == Fraction(2, 3)
    assert dc.C2 == 3
    assert dc.frakC == Fraction(9, 2)
    assert dc.detAdelic == 2
    assert dc.frakCprime == SurdPositive(Fraction(81, 8), 2)


def test_dilation_constants_two_adic_diag():
    dc = dilation_constants(diag_at(QQ, 2, [2, 1]))
    assert dc.C2 == Fraction(3, 2)
    assert dc.C1 == Fraction(1, 3)
    assert dc.detAdelic == Fraction(1, 2)


@pytest.mark.parametrize("field", [QQ, GroundField(3)], ids=["q", "f3"])
def test_height_by_places_agrees(field):
    rng = make_rng(11)
    for _ in range(20):
        A = random_automorphism(rng, field, 3)
        x = tuple(random_element(rng, field, 4 if field.is_rational else 2) for _ in range(3))
        if any(x):
            assert height_by_places(A, x) == height_vector(A, x)


@pytest.mark.parametrize("field", [QQ, GroundField(2), GroundField(5)], ids=["q", "f2", "f5"])
def test_duality_sandwich_star(field):
    rng = make_rng(3)
    b = 4 if field.is_rational else 2
    for _ in range(15):
        N = int(rng.integers(2, 5))
        A = random_automorphism(rng, field, N)
        dc = dilation_constants(A)
        V = random_subspace(rng, field, N, int(rng.integers(1, N)), b)
        assert height_matrix(star(A), dual_complement(V), "rows") * dc.detAdelic == height_subspace(A, V)
        x = V.basis[0]
        h, hA = height_vector(I(field, N), x), height_vector(A, x)
        assert dc.C1 * h <= hA <= dc.C2 * h
        assert height_vector(star(A), x) <= dc.C1 ** -2 * hA
        dcs = dilation_constants(star(A))
        assert dcs.C1 ** -1 == dc.C2 and dcs.C2 == dc.C1 ** -1


def test_dual_complement_examples():
    V = Subspace(QQ, 2, ((1, 0),))
    B = dual_complement(V)
    assert height_matrix(I(QQ, 2), B, "rows") == 1
    V = Subspace(QQ, 3, ((1, 0, 1), (0, 1, 1)))
    assert height_matrix(I(QQ, 3), dual_complement(V), "rows") == SurdPositive(1, 3)
    V = Subspace(F2, 2, ((ONE, t),))
    assert height_matrix(I(F2, 2), dual_complement(V), "rows") == height_subspace(I(F2, 2), V)
    with pytest.raises(DomainError):
        dual_complement(Subspace(QQ, 2, ((1, 0), (0, 1))))


def test_twisted_intersection_counterexample():
    # H_A(U1 ∩ U2) <= H_A(U1) H_A(U2) fails without the H_A(U1 + U2) factor.
    A = AdelicAutomorphism(QQ, 1, ((Place(QQ, None), [[Fraction(1, 2)]]),))
    U = Subspace(QQ, 1, ((1,),))
    h = height_subspace(A, U)
    assert h == Fraction(1, 2)
    assert not h <= h * h
    assert h * h <= h * h  # with the sum-space factor the bound holds
