from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympheights.errors import DimensionError, RankError
from sympheights.fields import QQ, GroundField
from sympheights.linalg import (
    Subspace,
    det,
    from_columns,
    gram,
    intersect,
    kernel,
    matmul,
    matvec,
    plucker,
    rank,
    saturate,
    sum_space,
    transpose,
)

from .oracles import minors

F2 = GroundField(2)
t = F2.t()
q = st.fractions(min_value=-9, max_value=9, max_denominator=5)


def Q(*rows):
    return [[Fraction(a) for a in r] for r in rows]


def e(i, n=4):
    return tuple(Fraction(int(j == i)) for j in range(n))


J2 = Q([0, 1], [-1, 0])
J4 = Q([0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0])


def test_plucker_examples():
    assert plucker(from_columns([e(0, 3), e(1, 3)])) == (1, 0, 0)
    assert plucker(Q([1, 0], [0, 1], [1, 1])) == (1, 1, -1)


@st.composite
def full_rank(draw, rows, cols):
    M = draw(st.lists(st.lists(q, min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    return M if rank(M) == min(rows, cols) else Q(*[[int(i == j) for j in range(cols)] for i in range(rows)])


@settings(max_examples=60)
@given(st.integers(1, 3).flatmap(lambda L: st.tuples(full_rank(L + 1, L), full_rank(L, L))))
def test_plucker_multilinear_and_matches_sympy(XW):
    X, W = XW
    d = det(W)
    assert list(plucker(matmul(X, W))) == [d * c for c in plucker(X)]
    assert list(plucker(X)) == minors([tuple(c) for c in zip(*X)])


def test_kernel_examples():
    assert kernel(Q([1, 0], [0, 1])).dim == 0
    K = kernel(Q([1, 1, -1]))
    assert K.dim == 2 and K.same_span(Subspace(QQ, 3, ((1, 0, 1), (0, 1, 1))))
    K = kernel([[t, F2.one()]])
    assert K.same_span(Subspace(F2, 2, ((F2.one(), t),)))


@settings(max_examples=60)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_kernel_property(r, c, data):
    M = data.draw(st.lists(st.lists(q, min_size=c, max_size=c), min_size=r, max_size=r))
    K = kernel(M, QQ, c)
    assert K.dim == c - rank(M)
    for v in K.basis:
        assert not any(matvec(M, v))


def test_intersect_examples():
    U1 = Subspace(QQ, 3, (e(0, 3), e(1, 3)))
    U2 = Subspace(QQ, 3, (e(1, 3), e(2, 3)))
    assert intersect(U1, U2).same_span(Subspace(QQ, 3, (e(1, 3),)))
    assert intersect(U1, U1).same_span(U1)
    with pytest.raises(DimensionError):
        intersect(U1, Subspace(QQ, 4, (e(0),)))


@settings(max_examples=40)
@given(full_rank(4, 2), full_rank(4, 2))
def test_intersection_dimension_formula(X1, X2):
    U1, U2 = Subspace.from_matrix(X1, QQ), Subspace.from_matrix(X2, QQ)
    assert intersect(U1, U2).dim == U1.dim + U2.dim - sum_space(U1, U2).dim


def test_gram_examples():
    I2 = Q([1, 0], [0, 1])
    assert gram(J2, I2) == J2
    assert gram(J4, from_columns([e(0), e(2)])) == Q([0, 0], [0, 0])
    with pytest.raises(DimensionError):
        gram(J4, I2)


@settings(max_examples=40)
@given(full_rank(4, 3))
def test_gram_of_alternating_is_alternating(X):
    G = gram(J4, X)
    assert G == [[-a for a in r] for r in transpose(G)]


def test_saturate_examples():
    assert saturate(Q([2], [0])) == Q([1], [0])
    assert saturate([[Fraction(1, 2)], [Fraction(1)]]) == Q([1], [2])
    S = saturate([[t], [F2.zero()]])
    assert S == [[F2.one()], [F2.zero()]]
    with pytest.raises(RankError):
        saturate(Q([1, 2], [2, 4]))


@settings(max_examples=40)
@given(full_rank(4, 2))
def test_saturate_keeps_span_and_is_integral(X):
    S = saturate(X)
    assert Subspace.from_matrix(S, QQ).same_span(Subspace.from_matrix(X, QQ))
    assert all(a.denominator == 1 for row in S for a in row)
    # saturated: the gcd of the maximal minors is 1
    from math import gcd

    g = 0
    for m in plucker(S):
        g = gcd(g, int(m))
    assert g == 1
