"""Lattices over Z and modules over GF(p)[t].

Everything the Siegel step needs below the level of heights lives here:
primitive parts, kernels over a Euclidean ring, saturation, exact LLL on a
Gram matrix, Fincke-Pohst enumeration and the (shifted) weak Popov form.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import polys as P
from .errors import DomainError, RankError
from .fields import GroundField, RationalFunction

# --------------------------------------------------------------------------
# Euclidean rings: Z (python ints) and GF(p)[t] (coefficient tuples)


class IntegerRing:
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def divmod(self, a, b):
        # round to nearest keeps entries small
        q = (2 * a + b) // (2 * b) if b > 0 else -((2 * a - b) // (-2 * b))
        return q, a - q * b

    def size(self, a):
        return abs(a)


class PolynomialRing:
    def __init__(self, p: int):
        self.p = p
        self.zero = P.ZERO
        self.one = P.ONE

    def add(self, a, b):
        return P.add(a, b, self.p)

    def sub(self, a, b):
        return P.sub(a, b, self.p)

    def mul(self, a, b):
        return P.mul(a, b, self.p)

    def divmod(self, a, b):
        return P.divmod_(a, b, self.p)

    def size(self, a):
        return len(a)


def ring_for(field: GroundField):
    return IntegerRing() if field.is_rational else PolynomialRing(field.p)


def ring_kernel(C: list[list], ring) -> list[tuple]:
    """Basis of ``{x in R^n : C x = 0}`` for a matrix over a Euclidean ring.

    Column operations reduce C to echelon form while the same operations are
    applied to an identity matrix; the transformed columns whose C-part
    vanished form a basis of the kernel, which is saturated by construction.
    """
    r = len(C)
    n = len(C[0])
    cols = []
    for j in range(n):
        col = [C[i][j] for i in range(r)] + [ring.one if k == j else ring.zero for k in range(n)]
        cols.append(col)
    c = 0
    for i in range(r):
        while True:
            nz = [j for j in range(c, n) if cols[j][i] != ring.zero]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (ring.size(cols[j][i]), j))
            if len(nz) == 1:
                cols[c], cols[jmin] = cols[jmin], cols[c]
                c += 1
                break
            piv = cols[jmin]
            for j in nz:
                if j == jmin:
                    continue
                q, _ = ring.divmod(cols[j][i], piv[i])
                if q != ring.zero:
                    cols[j] = [ring.sub(a, ring.mul(q, b)) for a, b in zip(cols[j], piv)]
        if c == n:
            break
    return [tuple(col[r:]) for col in cols[c:]]


# --------------------------------------------------------------------------
# primitive parts


def primitive_part(v, field: GroundField):
    """Return ``(y, c)`` with ``v = c * y`` and y primitive in Z^N / GF(p)[t]^N.

    Over Q the first nonzero entry of y is positive; over GF(p)(t) the first
    nonzero entry of y is monic. Entries of y are ints resp. coefficient tuples.
    """
    if not any(v):
        raise DomainError("primitive part of the zero vector")
    if field.is_rational:
        v = [Fraction(a) for a in v]
        den = 1
        for a in v:
            den = den * a.denominator // math.gcd(den, a.denominator)
        ints = [int(a * den) for a in v]
        g = 0
        for a in ints:
            g = math.gcd(g, a)
        first = next(a for a in ints if a)
        if first < 0:
            g = -g
        y = tuple(a // g for a in ints)
        return y, Fraction(g, den)
    p = field.p
    den = P.ONE
    for a in v:
        if a:
            den = P.monic(P.divmod_(P.mul(den, a.den, p), P.gcd(den, a.den, p), p)[0], p)
    polys = [P.divmod_(P.mul(a.num, den, p), a.den, p)[0] if a else P.ZERO for a in v]
    g = P.ZERO
    for f in polys:
        g = P.gcd(g, f, p)
    polys = [P.divmod_(f, g, p)[0] for f in polys]
    first = next(f for f in polys if f)
    lc = first[-1]
    inv = pow(lc, -1, p)
    y = tuple(P.scale(f, inv, p) for f in polys)
    c = RationalFunction(P.scale(g, lc, p), den, p)
    return y, c


def to_field_vector(y, field: GroundField) -> tuple:
    if field.is_rational:
        return tuple(Fraction(a) for a in y)
    return tuple(RationalFunction.from_poly(f, field.p) for f in y)


# --------------------------------------------------------------------------
# exact LLL on a Gram matrix


def _gso(G):
    n = len(G)
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(G[i][j])
            for k in range(j):
                s -= mu[j][k] * mu[i][k] * B[k]
            mu[i][j] = s / B[j]
        s = Fraction(G[i][i])
        for k in range(i):
            s -= mu[i][k] * mu[i][k] * B[k]
        B[i] = s
        mu[i][i] = Fraction(1)
    return mu, B


def _round(x: Fraction) -> int:
    return math.floor(x + Fraction(1, 2))


def lll_gram(G, delta=Fraction(99, 100)):
    """LLL-reduce the lattice with positive definite Gram matrix ``G``.

    Returns ``(U, G')`` where the columns of the unimodular U express the
    reduced basis in the input basis and ``G' = U^t G U``.
    """
    n = len(G)
    G = [[Fraction(a) for a in row] for row in G]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return U, G
    mu, B = _gso(G)
    if any(b <= 0 for b in B):
        raise RankError("Gram matrix is not positive definite")
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = _round(mu[k][j])
            if q:
                # b_k <- b_k - q b_j
                for row in U:
                    row[k] -= q * row[j]
                gkk, gkj, gjj = G[k][k], G[k][j], G[j][j]
                for i in range(n):
                    if i != k:
                        G[k][i] -= q * G[j][i]
                        G[i][k] = G[k][i]
                G[k][k] = gkk - 2 * q * gkj + q * q * gjj
                for m in range(j):
                    mu[k][m] -= q * mu[j][m]
                mu[k][j] -= q
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            for row in U:
                row[k], row[k - 1] = row[k - 1], row[k]
            G[k], G[k - 1] = G[k - 1], G[k]
            for row in G:
                row[k], row[k - 1] = row[k - 1], row[k]
            mu, B = _gso(G)
            k = max(k - 1, 1)
    return U, G


def gram_of(vectors, form=None):
    """Gram matrix of rational vectors under the form ``x^t Q y`` (default: dot)."""
    if form is None:
        return [[sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0)) for v in vectors] for u in vectors]
    Qv = [[sum((Fraction(form[i][j]) * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(v))] for v in vectors]
    return [[sum((Fraction(a) * b for a, b in zip(u, qv)), Fraction(0)) for qv in Qv] for u in vectors]


def apply_unimodular(vectors, U):
    """Columns of ``B U`` where B has the given columns."""
    n = len(vectors)
    dim = len(vectors[0])
    out = []
    for j in range(n):
        out.append(tuple(sum((U[i][j] * vectors[i][r] for i in range(n) if U[i][j]), 0 * vectors[0][r]) for r in range(dim)))
    return out


def lll(vectors, form=None, delta=Fraction(99, 100)):
    """LLL-reduce rational vectors (a lattice basis) under an optional form."""
    if len(vectors) <= 1:
        return [tuple(v) for v in vectors]
    U, _ = lll_gram(gram_of(vectors, form), delta)
    return apply_unimodular(vectors, U)


# --------------------------------------------------------------------------
# Fincke-Pohst enumeration


def _cholesky(G):
    mu, B = _gso([[Fraction(a) for a in row] for row in G])
    return mu, B


def _int_range(c: Fraction, t: Fraction) -> tuple[int, int]:
    """Integers x with ``(x - c)**2 <= t``: returns (lo, hi), empty if lo > hi."""
    if t < 0:
        return 1, 0
    r = math.sqrt(float(t)) if t < 1e300 else float("inf")
    lo = math.floor(float(c) - r) - 1
    hi = math.ceil(float(c) + r) + 1
    while lo <= hi and (lo - c) ** 2 > t:
        lo += 1
    while hi >= lo and (hi - c) ** 2 > t:
        hi -= 1
    return lo, hi


def short_vectors(G, bound) -> list[tuple[tuple[int, ...], Fraction]]:
    """All nonzero integer x (up to sign) with ``x^t G x <= bound``.

    Returns ``(x, x^t G x)`` pairs sorted by norm, ties broken by x.
    """
    n = len(G)
    bound = Fraction(bound)
    mu, B = _cholesky(G)
    out = []
    x = [0] * n

    def rec(i: int, rem: Fraction):
        c = -sum((mu[j][i] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _int_range(c, rem / B[i])
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = B[i] * (xi - c) ** 2
            if i == 0:
                if any(x):
                    out.append(tuple(x))
            else:
                rec(i - 1, rem - used)
        x[i] = 0

    rec(n - 1, bound)
    keep = []
    for v in out:
        first = next(a for a in v if a)
        if first > 0:
            norm = sum((Fraction(G[i][j]) * v[i] * v[j] for i in range(n) for j in range(n)), Fraction(0))
            keep.append((v, norm))
    keep.sort(key=lambda vn: (vn[1], vn[0]))
    return keep


def successive_minima(G) -> list[tuple[int, ...]]:
    """Linearly independent lattice vectors realizing the successive minima.

    Vectors are coefficient tuples relative to the basis with Gram matrix G.
    The search radius doubles until enough independent vectors appear.
    """
    from .linalg import rank

    n = len(G)
    radius = min(Fraction(G[i][i]) for i in range(n))
    while True:
        chosen: list[tuple[int, ...]] = []
        for v, _ in short_vectors(G, radius):
            cand = chosen + [v]
            if rank([[Fraction(a) for a in row] for row in cand]) == len(cand):
                chosen = cand
                if len(chosen) == n:
                    return chosen
        radius *= 2


# --------------------------------------------------------------------------
# weak Popov form over GF(p)[t]


def shifted_degree(col, shifts) -> tuple[int, int]:
    """``(max_i shifts[i] + deg col[i], pivot index)`` of a nonzero column."""
    best = None
    piv = -1
    for i, f in enumerate(col):
        if f:
            d = shifts[i] + P.degree(f)
            if best is None or d >= best:
                best, piv = d, i
    if best is None:
        raise DomainError("zero column has no degree")
    return best, piv


def weak_popov(cols, p: int, shifts=None) -> list[tuple]:
    """Shifted weak Popov form of a list of polynomial column vectors.

    Columns are transformed by unimodular operations until their pivot
    indices are distinct, which makes the basis column-reduced: the sum of
    the shifted column degrees equals the shifted degree of the wedge product.
    """
    cols = [tuple(c) for c in cols]
    if not cols:
        return cols
    n = len(cols[0])
    shifts = list(shifts) if shifts is not None else [0] * n
    while True:
        info = [shifted_degree(c, shifts) for c in cols]
        seen: dict[int, int] = {}
        clash = None
        for j, (d, piv) in enumerate(info):
            if piv in seen:
                clash = (seen[piv], j)
                break
            seen[piv] = j
        if clash is None:
            break
        a, b = clash
        if info[a][0] < info[b][0]:
            a, b = b, a
        i = info[a][1]
        fa, fb = cols[a][i], cols[b][i]
        e = P.degree(fa) - P.degree(fb)
        coef = (fa[-1] * pow(fb[-1], -1, p)) % p
        m = P.shift((coef,), e)
        cols[a] = tuple(P.sub(x, P.mul(m, y, p), p) for x, y in zip(cols[a], cols[b]))
        if not any(cols[a]):
            raise RankError("columns are linearly dependent")
    order = sorted(range(len(cols)), key=lambda j: (shifted_degree(cols[j], shifts), cols[j]))
    return [cols[j] for j in order]


# --------------------------------------------------------------------------
# saturation


def _orthogonal_complement_rows(vectors, field: GroundField):
    """Primitive ring rows spanning the annihilator of the given vectors."""
    from .linalg import kernel

    ker = kernel([list(v) for v in vectors], field, len(vectors[0]))
    return [primitive_part(w, field)[0] for w in ker.basis]


def saturated_basis(vectors, field: GroundField) -> list[tuple]:
    """Ring basis of ``span_K(vectors) ∩ R^N`` (R = Z or GF(p)[t]), reduced.

    Output vectors are field vectors (Fractions / RationalFunctions).
    """
    vectors = [tuple(v) for v in vectors]
    N = len(vectors[0])
    L = len(vectors)
    ring = ring_for(field)
    if L == N:
        basis = [tuple(ring.one if i == j else ring.zero for i in range(N)) for j in range(N)]
    else:
        C = _orthogonal_complement_rows(vectors, field)
        basis = ring_kernel(C, ring)
        if len(basis) != L:
            raise RankError("saturation produced a module of the wrong rank")
    if field.is_rational:
        basis = lll(basis)
        return [to_field_vector(primitive_part(b, field)[0], field) for b in basis]
    basis = weak_popov(basis, field.p)
    return [to_field_vector(b, field) for b in basis]
