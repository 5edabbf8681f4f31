"""Independent reference computations used to freeze expected values.

Nothing here imports the package's linear algebra or height code. Over Q the
canonical height of a vector is the Euclidean norm of its primitive integer
multiple; over GF(p)(t) it is e raised to the largest degree of its
primitive polynomial multiple.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import sympy


def primitive_int(v):
    v = [Fraction(a) for a in v]
    d = lcm(*(a.denominator for a in v))
    ints = [int(a * d) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints]


def height_sq_q(v) -> Fraction:
    """Square of the canonical height of a nonzero rational vector."""
    return Fraction(sum(a * a for a in primitive_int(v)))


def minors(cols):
    """Plücker coordinates of the N x L matrix with the given columns, via sympy."""
    M = sympy.Matrix([[sympy.Rational(str(c[i])) for c in cols] for i in range(len(cols[0]))])
    L = M.shape[1]
    return [Fraction(str(M.extract(list(rows), list(range(L))).det())) for rows in combinations(range(M.shape[0]), L)]


def subspace_height_sq_q(cols) -> Fraction:
    return height_sq_q(minors(cols))


def log_height_ff(v, p):
    """log_e of the canonical height of a vector of sympy polys over GF(p)."""
    t = sympy.Symbol("t")
    polys = [sympy.Poly(a, t, modulus=p) for a in v]
    nonzero = [f for f in polys if not f.is_zero]
    g = nonzero[0]
    for f in nonzero[1:]:
        g = sympy.gcd(g, f)
    return max(f.degree() for f in nonzero) - g.degree()
