"""Dense univariate polynomials over GF(p).

A polynomial is a tuple of ints in ``range(p)``, lowest degree first, with no
trailing zeros; the zero polynomial is ``()``. Functions here are pure and
operate on those tuples directly, which keeps the rational-function field
in :mod:`sympheights.fields` cheap to hash and compare.

Multiplication, division and gcd are delegated to FLINT (python-flint). The
pure-python versions are kept under ``_py_*`` names as a reference.
"""

from __future__ import annotations

import re
from functools import lru_cache

from flint import nmod_poly
from sympy import ZZ
from sympy.polys.galoistools import gf_factor, gf_irreducible_p

Poly = tuple

ZERO: Poly = ()
ONE: Poly = (1,)
T: Poly = (0, 1)


def normalize(coeffs, p: int) -> Poly:
    c = [int(a) % p for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(f: Poly) -> int:
    """Degree of ``f``; the zero polynomial has degree -1."""
    return len(f) - 1


def add(f: Poly, g: Poly, p: int) -> Poly:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, b in enumerate(g):
        out[i] = (out[i] + b) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def neg(f: Poly, p: int) -> Poly:
    return tuple((-a) % p for a in f)


def sub(f: Poly, g: Poly, p: int) -> Poly:
    return add(f, neg(g, p), p)


def scale(f: Poly, c: int, p: int) -> Poly:
    c %= p
    if c == 0:
        return ZERO
    return tuple((a * c) % p for a in f)


def shift(f: Poly, n: int) -> Poly:
    """Multiply by ``t**n`` (n >= 0)."""
    if not f:
        return ZERO
    return (0,) * n + f


def _py_mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ZERO
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return normalize(out, p)


def _py_divmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return ZERO, f
    inv = pow(g[-1], -1, p)
    rem = list(f)
    dg = len(g) - 1
    quo = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = rem[i] % p
        if c == 0:
            continue
        q = (c * inv) % p
        quo[i - dg] = q
        for j, b in enumerate(g):
            rem[i - dg + j] = (rem[i - dg + j] - q * b) % p
    return normalize(quo, p), normalize(rem[:dg], p)


def _py_gcd(f: Poly, g: Poly, p: int) -> Poly:
    while g:
        f, g = g, _py_divmod(f, g, p)[1]
    return monic(f, p)


def to_flint(f: Poly, p: int) -> nmod_poly:
    return nmod_poly(list(f), p)


def from_flint(f: nmod_poly) -> Poly:
    return tuple(map(int, f.coeffs()))


def mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ZERO
    return from_flint(to_flint(f, p) * to_flint(g, p))


def divmod_(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if len(f) < len(g):
        return ZERO, f
    q, r = divmod(to_flint(f, p), to_flint(g, p))
    return from_flint(q), from_flint(r)


def monic(f: Poly, p: int) -> Poly:
    if not f or f[-1] == 1:
        return f
    return scale(f, pow(f[-1], -1, p), p)


def gcd(f: Poly, g: Poly, p: int) -> Poly:
    """Monic gcd (zero only when both arguments are zero)."""
    if not f or not g:
        return monic(f or g, p)
    return from_flint(to_flint(f, p).gcd(to_flint(g, p)))


def xgcd(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly, Poly]:
    """Return ``(d, u, v)`` with ``u*f + v*g == d`` and ``d`` monic (or zero)."""
    r0, r1 = f, g
    s0, s1 = ONE, ZERO
    t0, t1 = ZERO, ONE
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return ZERO, ZERO, ZERO
    inv = pow(r0[-1], -1, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def valuation(f: Poly, q: Poly, p: int) -> int:
    """Multiplicity of the irreducible ``q`` in the nonzero polynomial ``f``."""
    if not f:
        raise ValueError("valuation of zero polynomial")
    n = 0
    while True:
        quo, rem = divmod_(f, q, p)
        if rem:
            return n
        f = quo
        n += 1


def _to_sympy(f: Poly) -> list:
    return [ZZ(a) for a in reversed(f)]


@lru_cache(maxsize=4096)
def is_irreducible(f: Poly, p: int) -> bool:
    if degree(f) < 1:
        return False
    return bool(gf_irreducible_p(_to_sympy(f), p, ZZ))


@lru_cache(maxsize=4096)
def factor(f: Poly, p: int) -> tuple[tuple[Poly, int], ...]:
    """Monic irreducible factorization of a nonzero ``f`` (leading unit dropped)."""
    if not f:
        raise ValueError("cannot factor zero polynomial")
    _, facs = gf_factor(_to_sympy(f), p, ZZ)
    out = [(normalize(reversed([int(c) for c in g]), p), int(e)) for g, e in facs]
    return tuple(sorted(out, key=lambda fe: (len(fe[0]), fe[0][::-1])))


def to_str(f: Poly, var: str = "t") -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            mono = var if i == 1 else f"{var}^{i}"
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(\d+)\*?)?(?:([a-z])(?:\^(\d+))?)?$")


def parse(s: str, p: int, var: str = "t") -> Poly:
    """Parse sparse strings such as ``"t^3+2*t+1"`` or ``"-t+4"``."""
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (m.group(2) is not None and m.group(2) != var) or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term {body!r}")
        c = int(m.group(1)) if m.group(1) is not None else 1
        e = 0 if m.group(2) is None else int(m.group(3) or 1)
        if sign == "-":
            c = -c
        coeffs[e] = coeffs.get(e, 0) + c
    top = max(coeffs)
    return normalize([coeffs.get(i, 0) for i in range(top + 1)], p)
