"""Exact scalar rings: integers, rationals and univariate polynomials over Q.

Rationals are :class:`fractions.Fraction`; integers are plain ``int``.
:class:`Poly` is an immutable dense polynomial with rational coefficients,
stored lowest degree first.  The zero polynomial has no coefficients and
``degree`` ``None``.

The Euclidean structure that :mod:`invbasis.smith` is generic over lives in
:class:`EuclideanRing`; ``ZZ`` and ``QX`` are the two instances.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DomainError

Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a rational")


class Poly:
    """Univariate polynomial over Q with exact coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable = ()):
        c = [as_fraction(v) for v in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # construction helpers
    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def const(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def linear(cls, root) -> "Poly":
        """The monic linear polynomial ``x - root``."""
        return cls((-as_fraction(root), 1))

    @classmethod
    def coerce(cls, value) -> "Poly":
        if isinstance(value, Poly):
            return value
        return cls((value,))

    @property
    def coefficients(self) -> tuple:
        return self._c

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else None

    @property
    def lc(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def coeff(self, i: int) -> Fraction:
        return self._c[i] if 0 <= i < len(self._c) else Fraction(0)

    # arithmetic
    def __add__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        n = max(len(self._c), len(other._c))
        return Poly(self.coeff(i) + other.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self._c)

    def __sub__(self, other):
        try:
            other = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Poly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly(c * other for c in self._c)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._c or not other._c:
            return Poly()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        return poly_divmod(self, Poly.coerce(other))

    def __floordiv__(self, other):
        return poly_divmod(self, Poly.coerce(other))[0]

    def __mod__(self, other):
        return poly_divmod(self, Poly.coerce(other))[1]

    def __truediv__(self, other):
        """Division by a nonzero rational constant."""
        other = as_fraction(other) if not isinstance(other, Poly) else other
        if isinstance(other, Poly):
            if not other.is_constant() or other.is_zero():
                raise DomainError("true division of polynomials is only defined by nonzero constants")
            other = other.lc
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        return Poly(c / other for c in self._c)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self._c))

    def __bool__(self):
        return bool(self._c)

    def __call__(self, point) -> Fraction:
        return evaluate(self, point)

    def monic(self) -> "Poly":
        if not self._c:
            return self
        return self / self.lc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self._c) if i)

    def taylor_shift(self, point) -> "Poly":
        """Coefficients of ``p(point + h)`` as a polynomial in ``h``."""
        point = as_fraction(point)
        out: list = []
        for c in reversed(self._c):
            # Horner in the ring Q[h]: out = out*(h + point) + c
            shifted = [Fraction(0)] + out
            for i, v in enumerate(out):
                shifted[i] += v * point
            if shifted:
                shifted[0] += c
            else:
                shifted = [c]
            out = shifted
        return Poly(out)

    def to_strings(self) -> list:
        return [str(c) for c in self._c]

    def __repr__(self):
        return f"Poly({self.to_strings()})"

    def __str__(self):
        return format_poly(self)


def format_poly(p: Poly, var: str = "x") -> str:
    """Render ``p`` in the entry grammar so it can be parsed back."""
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.coefficients) - 1, -1, -1):
        c = p.coefficients[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag}*{mono}"
            else:
                body = f"({mag})*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def poly_divmod(a: Poly, b: Poly):
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coefficients)
    db = b.degree
    inv_lc = 1 / b.lc
    if len(rem) - 1 < db:
        return Poly(), a
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv_lc
        quot[k] = c
        if c:
            for j, bc in enumerate(b.coefficients):
                rem[k + j] -= c * bc
    return Poly(quot), Poly(rem[:db])


def evaluate(p: Poly, point) -> Fraction:
    point = as_fraction(point)
    acc = Fraction(0)
    for c in reversed(p.coefficients):
        acc = acc * point + c
    return acc


def root_order(p: Poly, point) -> int:
    """Multiplicity of ``point`` as a root of the nonzero polynomial ``p``."""
    if p.is_zero():
        raise DomainError("root order of the zero polynomial is undefined")
    lin = Poly.linear(point)
    k = 0
    while True:
        q, r = poly_divmod(p, lin)
        if not r.is_zero():
            return k
        p, k = q, k + 1


class EuclideanRing:
    """Euclidean-domain contract consumed by the Smith reduction."""

    name = "abstract"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def coerce(self, value):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def size(self, a) -> int:
        raise NotImplementedError

    def divmod(self, a, b):
        raise NotImplementedError

    def normal_unit(self, a):
        """Unit ``u`` such that ``a * u`` is the normalized associate of ``a``."""
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        raise NotImplementedError

    def unit_inverse(self, u):
        raise NotImplementedError

    def normalize(self, a):
        return a * self.normal_unit(a)

    def exact_div(self, a, b):
        q, r = self.divmod(a, b)
        if not self.is_zero(r):
            raise DomainError(f"{a} is not divisible by {b}")
        return q

    def divides(self, a, b) -> bool:
        """True when ``a`` divides ``b``."""
        if self.is_zero(a):
            return self.is_zero(b)
        return self.is_zero(self.divmod(b, a)[1])

    def gcd(self, a, b):
        a, b = self.normalize(a), self.normalize(b)
        while not self.is_zero(b):
            a, b = b, self.normalize(self.divmod(a, b)[1])
        return a

    def gcd_many(self, items: Iterable):
        g = self.zero()
        for item in items:
            g = self.gcd(g, item)
            if self.is_unit(g):
                break
        return g

    def __repr__(self):
        return f"<{self.name}>"


class IntegerRing(EuclideanRing):
    name = "ZZ"

    def zero(self):
        return 0

    def one(self):
        return 1

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise DomainError(f"{value} is not an integer")
            return value.numerator
        if isinstance(value, Poly):
            if not value.is_constant() or value.lc.denominator != 1:
                raise DomainError(f"{value} is not an integer")
            return value.lc.numerator
        return int(value)

    def size(self, a):
        return abs(a)

    def divmod(self, a, b):
        if b == 0:
            raise ZeroDivisionError("integer division by zero")
        # remainder of least absolute value keeps the Euclidean size shrinking fast
        q, r = divmod(a, b)
        if r and 2 * abs(r) > abs(b):
            q, r = q + 1, r - b
        return q, r

    def normal_unit(self, a):
        return -1 if a < 0 else 1

    def is_unit(self, a):
        return a in (1, -1)

    def unit_inverse(self, u):
        if u not in (1, -1):
            raise DomainError(f"{u} is not a unit of ZZ")
        return u


class PolynomialRing(EuclideanRing):
    name = "QQ[x]"

    def zero(self):
        return Poly()

    def one(self):
        return Poly.const(1)

    def coerce(self, value):
        return Poly.coerce(value) if not isinstance(value, Poly) else value

    def is_zero(self, a):
        return a.is_zero()

    def size(self, a):
        return a.degree

    def divmod(self, a, b):
        return poly_divmod(a, b)

    def normal_unit(self, a):
        if a.is_zero():
            return Poly.const(1)
        return Poly.const(1 / a.lc)

    def normalize(self, a):
        return a.monic()

    def is_unit(self, a):
        return a.degree == 0

    def unit_inverse(self, u):
        if u.degree != 0:
            raise DomainError(f"{u} is not a unit of QQ[x]")
        return Poly.const(1 / u.lc)


ZZ = IntegerRing()
QX = PolynomialRing()


def ring_of(value) -> EuclideanRing:
    if isinstance(value, Poly):
        return QX
    if isinstance(value, int):
        return ZZ
    raise TypeError(f"no Euclidean ring for {type(value).__name__}")


def euclid_divmod(a, b):
    """``(q, r)`` with ``a = q*b + r`` and ``r`` zero or smaller than ``b``."""
    if isinstance(a, Poly) or isinstance(b, Poly):
        a, b = Poly.coerce(a), Poly.coerce(b)
        return QX.divmod(a, b)
    return ZZ.divmod(a, b)


def gcd(a, b):
    """Normalized gcd: monic for polynomials, nonnegative for integers."""
    if isinstance(a, Poly) or isinstance(b, Poly):
        return QX.gcd(Poly.coerce(a), Poly.coerce(b))
    return ZZ.gcd(a, b)


def poly_from_strings(coefficients: Sequence[str]) -> Poly:
    return Poly(Fraction(c) for c in coefficients)
