from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympheights.errors import DomainError
from sympheights.fields import QQ, ExpPositive, GroundField, Place, SurdPositive
from sympheights.harness import make_rng, random_subspace, twisted_automorphism
from sympheights.heights import AdelicAutomorphism, height_subspace, height_vector
from sympheights.lattice import lll, weak_popov
from sympheights.siegel import Method, field_constant, small_basis
from sympheights.linalg import Subspace

F2 = GroundField(2)
t = F2.t()
ONE = F2.one()


def test_field_constant_examples():
    assert field_constant(QQ, 10, 4) == 100
    assert field_constant(QQ, 2, 2) == 2
    assert field_constant(F2, 7, 3) == ExpPositive.exp(0)
    with pytest.raises(DomainError):
        field_constant(QQ, 2, 3)


def test_small_basis_full_plane():
    Z = Subspace(QQ, 2, ((1, 0), (1, 1)))
    cert = small_basis(AdelicAutomorphism.identity(QQ, 2), Z)
    assert sorted(cert.basis) == [(0, 1), (1, 0)]
    assert cert.productOfHeights == 1 and cert.bound == 2 and cert.satisfied


def test_small_basis_saturates_line():
    Z = Subspace(QQ, 2, ((Fraction(1, 2), 1),))
    cert = small_basis(AdelicAutomorphism.identity(QQ, 2), Z)
    assert [tuple(abs(a) for a in v) for v in cert.basis] == [(1, 2)]
    assert cert.productOfHeights == SurdPositive(1, 5) == cert.subspaceHeight
    assert cert.bound == SurdPositive(1, 10)


def test_small_basis_function_field_is_tight():
    Z = Subspace(F2, 2, ((t, ONE), (F2.zero(), ONE)))
    cert = small_basis(AdelicAutomorphism.identity(F2, 2), Z)
    assert cert.method == Method.POLYNOMIAL_ROW_REDUCTION
    assert cert.productOfHeights == ExpPositive.exp(0) == cert.bound
    assert cert.tight


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([None, 2, 3]))
def test_certificates_span_and_bound(seed, p):
    rng = make_rng(seed)
    field = QQ if p is None else GroundField(p)
    N = int(rng.integers(2, 6))
    L = int(rng.integers(1, N + 1))
    Z = random_subspace(rng, field, N, L, 6 if p is None else 2)
    A = AdelicAutomorphism.identity(field, N)
    cert = small_basis(A, Z)
    assert Subspace(field, N, cert.basis).same_span(Z)
    assert cert.satisfied and cert.productOfHeights <= cert.bound
    assert cert.productOfHeights >= height_subspace(A, Z)
    if p is not None:
        assert cert.tight


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32))
def test_twisted_certificates(seed):
    rng = make_rng(seed)
    N = int(rng.integers(2, 5))
    A = twisted_automorphism(rng, N)
    Z = random_subspace(rng, QQ, N, int(rng.integers(1, N + 1)), 6)
    cert = small_basis(A, Z)
    assert cert.satisfied
    prod = height_vector(A, cert.basis[0])
    for v in cert.basis[1:]:
        prod = prod * height_vector(A, v)
    assert prod == cert.productOfHeights


def test_lll_reduces_skewed_basis():
    B = [(1, 0, 0), (1000, 1, 0), (0, 0, 1)]
    R = lll(B)
    assert max(sum(a * a for a in v) for v in R) == 1


def _deg(col):
    return max(len(a) - 1 for a in col if a)


def test_weak_popov_unimodular_collapses():
    # det [[t, t^2+1], [1, t]] = 1 over GF(2), so reduced degrees sum to 0
    cols = [(t, ONE), (t * t + ONE, t)]
    R = weak_popov([tuple(a.num for a in c) for c in cols], 2)
    assert sorted(_deg(c) for c in R) == [0, 0]


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(0, 2), min_size=1, max_size=4), min_size=4, max_size=4))
def test_weak_popov_degree_sum_is_det_degree(entries):
    from sympheights import polys as P
    from sympheights.linalg import det

    p = 3
    polys = [P.normalize(c, p) for c in entries]
    cols = [(polys[0], polys[1]), (polys[2], polys[3])]
    F3 = GroundField(p)
    d = det([[F3.element(cols[j][i]) for j in range(2)] for i in range(2)])
    if not d:
        return
    R = weak_popov(cols, p)
    assert sum(_deg(c) for c in R) == d.degree()


def test_twist_place_two():
    M = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(1)]]
    A = AdelicAutomorphism(QQ, 2, ((Place(QQ, 2), M),))
    cert = small_basis(A, Subspace(QQ, 2, ((1, 0), (0, 1))))
    assert cert.satisfied
