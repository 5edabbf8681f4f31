"""Ground fields, places, exact absolute values and the product formula.

Two global fields are supported, both of global degree one:

* the rationals, with elements represented by :class:`fractions.Fraction`;
* a rational function field GF(p)(t), with elements represented by
  :class:`RationalFunction`.

Absolute values are returned as :class:`ExactPositive` values, so nothing in
the package ever rounds. Over Q a local value is a rational, or a rational
times a square root at the archimedean place; over GF(p)(t) every local value
is a power of e.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from flint import nmod_poly
from sympy import factorint, isprime

from . import polys as P
from .errors import BackendMismatchError, DomainError, InvalidPlaceError

# --------------------------------------------------------------------------
# GF(p)(t)


class RationalFunction:
    """Reduced quotient ``num/den`` in GF(p)(t) with ``den`` monic.

    Numerator and denominator are stored as FLINT polynomials; ``num`` and
    ``den`` give them as coefficient tuples.
    """

    __slots__ = ("_n", "_d", "p", "_tuples")

    def __init__(self, num, den=P.ONE, p: int = 2, _reduced: bool = False):
        n = num if isinstance(num, nmod_poly) else nmod_poly(list(num), p)
        d = den if isinstance(den, nmod_poly) else nmod_poly(list(den), p)
        if not _reduced:
            if d.is_zero():
                raise ZeroDivisionError("zero denominator")
            if n.is_zero():
                d = nmod_poly([1], p)
            else:
                g = n.gcd(d)
                if not g.is_one():
                    n, d = n // g, d // g
                lc = d.leading_coefficient()
                if int(lc) != 1:
                    inv = lc ** -1
                    n, d = n * inv, d * inv
        self._n, self._d, self.p = n, d, p
        self._tuples = None

    @classmethod
    def _raw(cls, n, d, p):
        obj = cls.__new__(cls)
        obj._n, obj._d, obj.p, obj._tuples = n, d, p, None
        return obj

    @property
    def num(self) -> tuple:
        if self._tuples is None:
            self._tuples = (P.from_flint(self._n), P.from_flint(self._d))
        return self._tuples[0]

    @property
    def den(self) -> tuple:
        if self._tuples is None:
            self._tuples = (P.from_flint(self._n), P.from_flint(self._d))
        return self._tuples[1]

    @classmethod
    def from_poly(cls, f, p: int) -> "RationalFunction":
        return cls._raw(nmod_poly(list(f), p), nmod_poly([1], p), p)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.p != self.p:
                raise BackendMismatchError(f"GF({self.p})(t) vs GF({other.p})(t)")
            return other
        if isinstance(other, int):
            return RationalFunction.from_poly((other % self.p,), self.p)
        if isinstance(other, Fraction) and other.denominator % self.p:
            n = other.numerator * pow(other.denominator, -1, self.p)
            return RationalFunction.from_poly((n % self.p,), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._d == o._d:
            if self._d.is_one():
                return RationalFunction._raw(self._n + o._n, self._d, self.p)
            return RationalFunction(self._n + o._n, self._d, self.p)
        return RationalFunction(self._n * o._d + o._n * self._d, self._d * o._d, self.p)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self._n, self._d, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._n.is_zero() or o._n.is_zero():
            return RationalFunction._raw(nmod_poly([], self.p), nmod_poly([1], self.p), self.p)
        if self._d.is_one() and o._d.is_one():
            return RationalFunction._raw(self._n * o._n, self._d, self.p)
        return RationalFunction(self._n * o._n, self._d * o._d, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self._n.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self._d, self._n, self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.from_poly(P.ONE, self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((self.num, self.den, self.p))

    def __bool__(self):
        return not self._n.is_zero()

    @property
    def is_polynomial(self) -> bool:
        return self._d.is_one()

    def degree(self) -> int:
        """Degree at infinity: ``deg(num) - deg(den)``."""
        if self._n.is_zero():
            raise DomainError("degree of zero")
        return self._n.degree() - self._d.degree()

    def __str__(self):
        if self.den == P.ONE:
            return P.to_str(self.num)
        return f"({P.to_str(self.num)})/({P.to_str(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self}, p={self.p})"


# --------------------------------------------------------------------------
# fields


@dataclass(frozen=True)
class GroundField:
    """Either Q (``p is None``) or GF(p)(t)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % q == 0 for q in range(2, math.isqrt(self.p) + 1)):
                raise DomainError(f"characteristic {self.p} is not prime")

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def degree(self) -> int:
        return 1

    @property
    def name(self) -> str:
        return "q" if self.p is None else "fp(t)"

    def __str__(self):
        return "Q" if self.p is None else f"GF({self.p})(t)"

    # elements ----------------------------------------------------------
    def zero(self):
        return Fraction(0) if self.p is None else RationalFunction.from_poly(P.ZERO, self.p)

    def one(self):
        return Fraction(1) if self.p is None else RationalFunction.from_poly(P.ONE, self.p)

    def t(self) -> RationalFunction:
        if self.p is None:
            raise BackendMismatchError("Q has no variable t")
        return RationalFunction.from_poly(P.T, self.p)

    def element(self, x):
        """Coerce ints, Fractions, polynomial tuples or strings into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p is None:
            if isinstance(x, RationalFunction):
                raise BackendMismatchError("rational function used over Q")
            return Fraction(x)
        if isinstance(x, RationalFunction):
            if x.p != self.p:
                raise BackendMismatchError(f"element of GF({x.p})(t) used over {self}")
            return x
        if isinstance(x, tuple):
            return RationalFunction.from_poly(x, self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DomainError(f"{x} is not defined in characteristic {self.p}")
            return RationalFunction.from_poly((x.numerator * pow(x.denominator, -1, self.p),), self.p)
        if isinstance(x, Fraction | int):
            return RationalFunction.from_poly((int(x),), self.p)
        raise BackendMismatchError(f"cannot coerce {x!r} into {self}")

    def check(self, a) -> None:
        if self.p is None:
            if not isinstance(a, Fraction | int):
                raise BackendMismatchError(f"{a!r} is not a rational")
        elif not (isinstance(a, RationalFunction) and a.p == self.p):
            raise BackendMismatchError(f"{a!r} is not in {self}")

    def parse(self, s: str):
        s = s.strip()
        if self.p is None:
            return Fraction(s)
        if s.startswith("(") and ")/(" in s and s.endswith(")"):
            num, den = s[1:-1].split(")/(")
            return RationalFunction(P.parse(num, self.p), P.parse(den, self.p), self.p)
        if "/" in s:
            num, den = s.split("/")
            return RationalFunction(P.parse(num.strip("()"), self.p), P.parse(den.strip("()"), self.p), self.p)
        return RationalFunction.from_poly(P.parse(s, self.p), self.p)

    def format(self, a) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"name": "q"} if self.p is None else {"name": "fp(t)", "p": self.p}

    @classmethod
    def from_json(cls, obj) -> "GroundField":
        if isinstance(obj, str):
            obj = {"name": obj}
        name = obj["name"].lower()
        if name in ("q", "rationals"):
            return cls(None)
        if name in ("fp(t)", "fpt"):
            return cls(int(obj["p"]))
        raise DomainError(f"unknown field {obj!r}")


QQ = GroundField(None)


def field_of(a) -> GroundField:
    if isinstance(a, RationalFunction):
        return GroundField(a.p)
    if isinstance(a, Fraction | int):
        return QQ
    raise BackendMismatchError(f"{a!r} is not a field element")


# --------------------------------------------------------------------------
# exact positive reals


def _small_square_part(n: int) -> tuple[int, int]:
    """Split ``n = a**2 * b`` removing square factors found cheaply."""
    a = 1
    r = math.isqrt(n)
    if r * r == n:
        return r, 1
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        qq = q * q
        while n % qq == 0:
            n //= qq
            a *= q
    r = math.isqrt(n)
    if r * r == n:
        return a * r, 1
    return a, n


class ExactPositive:
    """Common interface of exactly represented positive reals."""

    def __mul__(self, other):  # pragma: no cover - abstract
        raise NotImplementedError

    def __ne__(self, other):
        return not self == other

    def __gt__(self, other):
        return other < self

    def __ge__(self, other):
        return other <= self

    def __truediv__(self, other):
        return self * other ** -1

    @staticmethod
    def one(field: GroundField) -> "ExactPositive":
        return SurdPositive(1) if field.is_rational else ExpPositive.exp(0)

    @staticmethod
    def from_json(obj) -> "ExactPositive":
        if "logExp" in obj:
            return ExpPositive.exp(Fraction(obj["logExp"]))
        if "expRatio" in obj:
            num = {int(k): int(v) for k, v in obj["expRatio"]["num"].items()}
            den = {int(k): int(v) for k, v in obj["expRatio"]["den"].items()}
            return ExpPositive(num, den)
        return SurdPositive(Fraction(obj["rational"]), Fraction(obj.get("radicand", "1")))


@total_ordering
class SurdPositive(ExactPositive):
    """The positive real ``rational * sqrt(radicand)``, radicand a positive integer."""

    __slots__ = ("rational", "radicand")

    def __init__(self, rational=1, radicand=1):
        r = Fraction(rational)
        s = Fraction(radicand)
        if r <= 0 or s <= 0:
            raise DomainError("ExactPositive must be strictly positive")
        if s.denominator != 1:
            # sqrt(a/b) = sqrt(a*b)/b
            r /= s.denominator
            s = Fraction(s.numerator * s.denominator)
        a, b = _small_square_part(s.numerator)
        self.rational = r * a
        self.radicand = b

    @property
    def square(self) -> Fraction:
        return self.rational * self.rational * self.radicand

    @classmethod
    def sqrt_of(cls, q) -> "SurdPositive":
        return cls(1, q)

    def __mul__(self, other):
        if isinstance(other, int | Fraction):
            return SurdPositive(self.rational * other, self.radicand)
        if not isinstance(other, SurdPositive):
            return NotImplemented
        g = math.gcd(self.radicand, other.radicand)
        r = self.rational * other.rational * g
        return SurdPositive(r, (self.radicand // g) * (other.radicand // g))

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, int | Fraction):
            other = SurdPositive(other)
        if self.radicand == other.radicand:
            return SurdPositive(self.rational + other.rational, self.radicand)
        raise DomainError("sum of unlike surds is not representable")

    __radd__ = __add__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            inv = SurdPositive(1 / (self.rational * self.radicand), self.radicand)
            return inv ** (-n)
        q, r = divmod(n, 2)
        return SurdPositive(self.rational**n * self.radicand**q, self.radicand**r)

    def sqrt(self) -> "SurdPositive":
        if self.radicand != 1:
            raise DomainError("square root of an irrational surd is not representable")
        return SurdPositive(1, self.rational)

    def _sq(self, other) -> Fraction:
        if isinstance(other, int | Fraction):
            return Fraction(other) ** 2
        if isinstance(other, SurdPositive):
            return other.square
        raise BackendMismatchError(f"cannot compare with {other!r}")

    def __eq__(self, other):
        if isinstance(other, int | Fraction) and other <= 0:
            return False
        try:
            return self.square == self._sq(other)
        except BackendMismatchError:
            return False

    def __lt__(self, other):
        return self.square < self._sq(other)

    def __le__(self, other):
        return self.square <= self._sq(other)

    def __hash__(self):
        return hash(("surd", self.square))

    def __float__(self):
        try:
            return float(self.rational) * math.sqrt(self.radicand)
        except OverflowError:
            return math.exp(self.log())

    def log(self) -> float:
        r = self.rational
        return (
            math.log(r.numerator) - math.log(r.denominator) + 0.5 * math.log(self.radicand)
        )

    def to_json(self) -> dict:
        return {"rational": str(self.rational), "radicand": str(self.radicand)}

    def __repr__(self):
        if self.radicand == 1:
            return f"SurdPositive({self.rational})"
        return f"SurdPositive({self.rational}*sqrt({self.radicand}))"


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict[int, int] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + sign * c
    return {e: c for e, c in out.items() if c}


def _sqrt_e_bounds(terms: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of exp(1/2) from its Taylor series."""
    s = Fraction(0)
    term = Fraction(1)
    for n in range(terms):
        s += term
        term = term / (2 * (n + 1))
    # remaining tail is below twice the first omitted term
    return s, s + 2 * term


def _sign_at_sqrt_e(poly: dict) -> int:
    """Sign of ``sum c_j s**j`` at ``s = exp(1/2)``; exponents may be negative.

    The value is nonzero for any nonzero integer polynomial because e is
    transcendental, so refining the enclosure always terminates.
    """
    if not poly:
        return 0
    lo_exp = min(poly)
    shifted = {e - lo_exp: c for e, c in poly.items()}
    pos = {e: c for e, c in shifted.items() if c > 0}
    neg = {e: -c for e, c in shifted.items() if c < 0}
    if not neg:
        return 1
    if not pos:
        return -1
    terms = 16
    while True:
        lo, hi = _sqrt_e_bounds(terms)
        ev = lambda d, x: sum(c * x**e for e, c in d.items())  # noqa: E731
        upper = ev(pos, hi) - ev(neg, lo)
        lower = ev(pos, lo) - ev(neg, hi)
        if lower > 0:
            return 1
        if upper < 0:
            return -1
        terms *= 2


class ExpPositive(ExactPositive):
    """Positive real in Q(sqrt(e)) given as a ratio of sqrt(e)-polynomials.

    Heights over GF(p)(t) are always plain powers ``e**m``; sums such as the
    dilation constants are the only source of non-monomial values. Exponents
    are stored in units of one half.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: dict, den: dict | None = None):
        den = {0: 1} if den is None else den
        num = {int(e): int(c) for e, c in num.items() if c}
        den = {int(e): int(c) for e, c in den.items() if c}
        if not num or not den or any(c < 0 for c in num.values()) or any(c < 0 for c in den.values()):
            raise DomainError("ExpPositive needs nonzero polynomials with nonnegative coefficients")
        g = 0
        for c in list(num.values()) + list(den.values()):
            g = math.gcd(g, c)
        m = min(den)
        self.num = {e - m: c // g for e, c in num.items()}
        self.den = {e - m: c // g for e, c in den.items()}
        if len(self.den) == 1 and len(self.num) == 1:
            # both monomials: keep the denominator trivial when possible
            (dc,) = self.den.values()
            (ne, nc) = next(iter(self.num.items()))
            if nc % dc == 0:
                self.num, self.den = {ne: nc // dc}, {0: 1}

    @classmethod
    def exp(cls, m) -> "ExpPositive":
        """The value ``e**m`` for integer or half-integer ``m``."""
        twice = Fraction(m) * 2
        if twice.denominator != 1:
            raise DomainError("only half-integer exponents are representable")
        return cls({int(twice): 1})

    @property
    def is_monomial(self) -> bool:
        return self.den == {0: 1} and len(self.num) == 1 and next(iter(self.num.values())) == 1

    @property
    def log_exponent(self) -> Fraction:
        """Exact natural log when the value is a pure power of e."""
        if not self.is_monomial:
            raise DomainError("value is not a power of e")
        return Fraction(next(iter(self.num)), 2)

    def _wrap(self, other):
        if isinstance(other, ExpPositive):
            return other
        if isinstance(other, int) and other > 0:
            return ExpPositive({0: other})
        raise BackendMismatchError(f"cannot combine with {other!r}")

    def __mul__(self, other):
        if isinstance(other, SurdPositive):
            return NotImplemented
        o = self._wrap(other)
        return ExpPositive(_poly_mul(self.num, o.num), _poly_mul(self.den, o.den))

    __rmul__ = __mul__

    def __add__(self, other):
        o = self._wrap(other)
        if self.den == o.den:
            return ExpPositive(_poly_add(self.num, o.num), self.den)
        return ExpPositive(
            _poly_add(_poly_mul(self.num, o.den), _poly_mul(o.num, self.den)),
            _poly_mul(self.den, o.den),
        )

    __radd__ = __add__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return ExpPositive(self.den, self.num) ** (-n)
        if self.is_monomial:
            return ExpPositive({next(iter(self.num)) * n: 1})
        num, den = {0: 1}, {0: 1}
        for _ in range(n):
            num = _poly_mul(num, self.num)
            den = _poly_mul(den, self.den)
        return ExpPositive(num, den)

    def sqrt(self) -> "ExpPositive":
        if not self.is_monomial or next(iter(self.num)) % 2:
            raise DomainError("square root only available for integer powers of e")
        return ExpPositive({next(iter(self.num)) // 2: 1})

    def _cmp(self, other) -> int:
        o = self._wrap(other)
        if self.is_monomial and o.is_monomial:
            a, b = next(iter(self.num)), next(iter(o.num))
            return (a > b) - (a < b)
        diff = _poly_add(_poly_mul(self.num, o.den), _poly_mul(o.num, self.den), -1)
        return _sign_at_sqrt_e(diff)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except BackendMismatchError:
            return False

    __hash__ = None

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def log(self) -> float:
        if self.is_monomial:
            return float(self.log_exponent)
        s = math.exp(0.5)
        ev = lambda d: math.fsum(c * s**e for e, c in d.items())  # noqa: E731
        return math.log(ev(self.num)) - math.log(ev(self.den))

    def __float__(self):
        return math.exp(self.log())

    def to_json(self) -> dict:
        if self.is_monomial:
            return {"logExp": str(self.log_exponent)}
        return {
            "expRatio": {
                "num": {str(e): c for e, c in sorted(self.num.items())},
                "den": {str(e): c for e, c in sorted(self.den.items())},
            }
        }

    def __repr__(self):
        if self.is_monomial:
            return f"ExpPositive(e^{self.log_exponent})"
        return f"ExpPositive({self.num}/{self.den} in sqrt(e))"


# --------------------------------------------------------------------------
# places


@dataclass(frozen=True)
class Place:
    """A place of ``field``: ``prime is None`` marks the infinite place.

    Over Q a finite place carries a prime integer; over GF(p)(t) it carries a
    monic irreducible polynomial (as a coefficient tuple).
    """

    field: GroundField
    prime: int | tuple | None = None

    def __post_init__(self):
        if self.prime is None:
            return
        if self.field.is_rational:
            if not isinstance(self.prime, int) or not isprime(self.prime):
                raise InvalidPlaceError(f"{self.prime} is not a prime")
        else:
            f = P.normalize(self.prime, self.field.p)
            if f != self.prime or not f or f[-1] != 1 or not P.is_irreducible(f, self.field.p):
                raise InvalidPlaceError(f"{self.prime!r} is not a monic irreducible polynomial")

    @property
    def is_infinite(self) -> bool:
        return self.prime is None

    @property
    def is_archimedean(self) -> bool:
        return self.prime is None and self.field.is_rational

    @property
    def local_degree(self) -> int:
        return 1

    @property
    def sort_key(self):
        if self.prime is None:
            return (0, 0, ())
        if isinstance(self.prime, int):
            return (1, self.prime, ())
        return (1, len(self.prime), tuple(reversed(self.prime)))

    def __str__(self):
        if self.prime is None:
            return "inf"
        if isinstance(self.prime, int):
            return str(self.prime)
        return P.to_str(self.prime)

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, field: GroundField, s) -> "Place":
        s = str(s).strip()
        if s.lower() in ("inf", "infinity", "oo"):
            return cls(field, None)
        if field.is_rational:
            return cls(field, int(s))
        return cls(field, P.parse(s, field.p))


def infinite_place(field: GroundField) -> Place:
    return Place(field, None)


def _check_backend(v: Place, a) -> None:
    if v.field.is_rational:
        if not isinstance(a, Fraction | int):
            raise BackendMismatchError(f"{a!r} is not a rational but {v} is a place of Q")
    elif not isinstance(a, RationalFunction) or a.p != v.field.p:
        raise BackendMismatchError(f"{a!r} is not an element of {v.field}")


def ord_at(v: Place, a) -> int:
    """Valuation of a nonzero ``a`` at the finite place ``v``."""
    if v.is_infinite:
        raise InvalidPlaceError("ord_at needs a finite place")
    _check_backend(v, a)
    if not a:
        raise DomainError("valuation of zero")
    if v.field.is_rational:
        a = Fraction(a)
        q = v.prime
        n = 0
        num, den = a.numerator, a.denominator
        while num % q == 0:
            num //= q
            n += 1
        while den % q == 0:
            den //= q
            n -= 1
        return n
    p = v.field.p
    return P.valuation(a.num, v.prime, p) - P.valuation(a.den, v.prime, p)


def abs_value(v: Place, a, allow_zero: bool = False) -> ExactPositive | None:
    """Normalized absolute value ``|a|_v``.

    Over Q: the usual absolute value at infinity and ``p**(-ord_p a)`` at p.
    Over GF(p)(t): ``e**(deg num - deg den)`` at infinity and
    ``e**(-deg(q) * ord_q a)`` at the place of the irreducible q.
    Zero raises :class:`DomainError` unless ``allow_zero``, in which case
    ``None`` stands for ``|0|_v = 0``.
    """
    _check_backend(v, a)
    if not a:
        if allow_zero:
            return None
        raise DomainError("|0|_v is zero, not an ExactPositive")
    if v.field.is_rational:
        a = Fraction(a)
        if v.is_infinite:
            return SurdPositive(abs(a))
        return SurdPositive(Fraction(v.prime) ** (-ord_at(v, a)))
    if v.is_infinite:
        return ExpPositive.exp(a.degree())
    return ExpPositive.exp(-P.degree(v.prime) * ord_at(v, a))


def _element_places(field: GroundField, a) -> set[Place]:
    if field.is_rational:
        a = Fraction(a)
        primes = set(factorint(abs(a.numerator))) | set(factorint(a.denominator))
        return {Place(field, q) for q in primes if q > 1}
    out = set()
    for f in (a.num, a.den):
        if P.degree(f) >= 1:
            for g, _ in P.factor(f, field.p):
                out.add(Place(field, g))
    return out


def support_places(elements, field: GroundField | None = None) -> list[Place]:
    """All places where some element has absolute value != 1, plus infinity.

    The result is sorted (infinity first, then by prime / polynomial degree).
    """
    elements = list(elements)
    nonzero = [a for a in elements if a]
    if not nonzero:
        raise DomainError("support_places needs at least one nonzero element")
    field = field or field_of(nonzero[0])
    places = {infinite_place(field)}
    for a in nonzero:
        _check_backend(infinite_place(field), a)
        places |= _element_places(field, a)
    return sorted(places, key=lambda v: v.sort_key)


def product_formula_check(a) -> ExactPositive:
    """Evaluate ``prod_v |a|_v**d_v`` over the support of ``a``; always 1."""
    if not a:
        raise DomainError("product formula needs a nonzero element")
    field = field_of(a)
    out = ExactPositive.one(field)
    for v in support_places([a], field):
        out = out * abs_value(v, a) ** v.local_degree
    return out
