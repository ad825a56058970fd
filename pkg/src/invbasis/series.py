"""Truncated Taylor series ("jets") with exact rational coefficients.

A :class:`Jet` stores ``c_0 .. c_{N-1}`` of ``f(point + h)``.  Coefficients
beyond ``N`` are unknown, so an all-zero jet is *not* zero unless it carries
``known_zero``; :func:`order_of` reports that case as ``BELOW_TRUNCATION``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .errors import DomainError, NotAUnitError
from .rings import Poly, as_fraction

DEFAULT_TRUNCATION = 16


@dataclass(frozen=True)
class JetOrder:
    """Vanishing order of a jet.

    ``kind`` is ``"finite"`` (``value`` holds the order), ``"known_zero"`` or
    ``"below_truncation"``.
    """

    kind: str
    value: Optional[int] = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    def __str__(self):
        return str(self.value) if self.is_finite else self.kind


KNOWN_ZERO = JetOrder("known_zero")
BELOW_TRUNCATION = JetOrder("below_truncation")


def Finite(k: int) -> JetOrder:
    return JetOrder("finite", k)


class Jet:
    __slots__ = ("point", "N", "coefficients", "known_zero")

    def __init__(self, coefficients: Sequence = (), point=0, N: int = DEFAULT_TRUNCATION,
                 known_zero: bool = False):
        if N < 1:
            raise DomainError("truncation order must be positive")
        c = [as_fraction(v) for v in coefficients][:N]
        c += [Fraction(0)] * (N - len(c))
        if known_zero and any(c):
            raise DomainError("a known-zero jet cannot have nonzero coefficients")
        self.point = as_fraction(point)
        self.N = N
        self.coefficients = tuple(c)
        self.known_zero = known_zero

    @classmethod
    def zero(cls, point=0, N: int = DEFAULT_TRUNCATION) -> "Jet":
        return cls((), point, N, known_zero=True)

    @classmethod
    def const(cls, value, point=0, N: int = DEFAULT_TRUNCATION) -> "Jet":
        value = as_fraction(value)
        if value == 0:
            return cls.zero(point, N)
        return cls((value,), point, N)

    @classmethod
    def from_poly(cls, p: Poly, point=0, N: int = DEFAULT_TRUNCATION) -> "Jet":
        """Taylor expansion of a polynomial; the zero polynomial is known zero."""
        if p.is_zero():
            return cls.zero(point, N)
        return cls(p.taylor_shift(point).coefficients, point, N)

    def _like(self, coefficients, known_zero=False) -> "Jet":
        return Jet(coefficients, self.point, self.N, known_zero)

    def _check(self, other: "Jet"):
        if self.point != other.point or self.N != other.N:
            raise DomainError(
                f"jet mismatch: point {self.point} / N={self.N} vs point {other.point} / N={other.N}"
            )

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Jet.const(other, self.point, self.N)
        if isinstance(other, Poly):
            return Jet.from_poly(other, self.point, self.N)
        raise TypeError(f"cannot combine Jet with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.known_zero:
            return other
        if other.known_zero:
            return self
        return self._like([a + b for a, b in zip(self.coefficients, other.coefficients)])

    __radd__ = __add__

    def __neg__(self):
        if self.known_zero:
            return self
        return self._like([-a for a in self.coefficients])

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.known_zero or other.known_zero:
            return Jet.zero(self.point, self.N)
        a, b, N = self.coefficients, other.coefficients, self.N
        out = [Fraction(0)] * N
        for i in range(N):
            if a[i] == 0:
                continue
            for j in range(N - i):
                out[i + j] += a[i] * b[j]
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("jet powers must be nonnegative integers")
        result, base = Jet.const(1, self.point, self.N), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        return jet_div_unit(self, self._coerce(other))

    def __eq__(self, other):
        if isinstance(other, Jet):
            return (self.point, self.N, self.coefficients, self.known_zero) == (
                other.point, other.N, other.coefficients, other.known_zero)
        return NotImplemented

    def __hash__(self):
        return hash((self.point, self.N, self.coefficients, self.known_zero))

    def value(self) -> Fraction:
        """Value at the expansion point."""
        return self.coefficients[0]

    def order(self) -> JetOrder:
        return order_of(self)

    def shift_down(self, k: int) -> "Jet":
        """Coefficients of ``self / h^k``; the top ``k`` become unknown and are set to 0.

        Only the first ``N - k`` coefficients of the result are meaningful.
        """
        if self.known_zero:
            return self
        c = self.coefficients
        if any(c[:k]):
            raise DomainError(f"jet is not divisible by h^{k}")
        return self._like(c[k:])

    def to_strings(self) -> list:
        return [str(c) for c in self.coefficients]

    def __repr__(self):
        flag = ", known_zero" if self.known_zero else ""
        return f"Jet({self.to_strings()}, point={self.point}, N={self.N}{flag})"


def jet_arith(a: Jet, b: Jet, op: str) -> Jet:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise DomainError(f"unknown jet operation {op!r}")


def jet_div_unit(a: Jet, u: Jet) -> Jet:
    """Solve ``q * u = a`` to order N; ``u`` must have nonzero constant term."""
    a._check(u)
    if u.known_zero or u.coefficients[0] == 0:
        raise NotAUnitError("divisor jet has zero constant term")
    if a.known_zero:
        return a
    N, uc = a.N, u.coefficients
    inv0 = 1 / uc[0]
    q = [Fraction(0)] * N
    for k in range(N):
        s = a.coefficients[k]
        for j in range(1, k + 1):
            s -= uc[j] * q[k - j]
        q[k] = s * inv0
    return a._like(q)


def order_of(a: Jet) -> JetOrder:
    if a.known_zero:
        return KNOWN_ZERO
    for k, c in enumerate(a.coefficients):
        if c != 0:
            return Finite(k)
    return BELOW_TRUNCATION


def _trig_at_zero(name: str, k: int) -> Fraction:
    # k-th Taylor coefficient at 0 of the unscaled builtin
    if name == "exp":
        return Fraction(1, factorial(k))
    if name == "sinh":
        return Fraction(1, factorial(k)) if k % 2 else Fraction(0)
    if name == "cosh":
        return Fraction(0) if k % 2 else Fraction(1, factorial(k))
    if name == "sin":
        return Fraction((-1) ** (k // 2), factorial(k)) if k % 2 else Fraction(0)
    if name == "cos":
        return Fraction(0) if k % 2 else Fraction((-1) ** (k // 2), factorial(k))
    raise DomainError(f"unknown builtin {name!r}")


BUILTINS = ("exp", "sin", "cos", "sinh", "cosh", "poly")


def builtin_jet(name: str, scale=1, point=0, N: int = DEFAULT_TRUNCATION,
                poly: Optional[Poly] = None) -> Jet:
    """Jet of ``f(scale * z)`` expanded at ``z = point``.

    ``name="poly"`` expands ``poly(scale * z)`` (default ``poly = x``).  The
    transcendental builtins need ``f(scale * point)`` and its derivatives to be
    rational, which for a rational argument only happens when ``scale * point``
    is 0; any other point raises :class:`DomainError`.
    """
    if N < 1:
        raise DomainError("truncation order must be positive")
    scale, point = as_fraction(scale), as_fraction(point)
    if name == "poly":
        p = Poly.x() if poly is None else poly
        # compose with scale*z
        scaled = Poly(c * scale ** i for i, c in enumerate(p.coefficients))
        return Jet.from_poly(scaled, point, N)
    if name not in BUILTINS:
        raise DomainError(f"unknown builtin {name!r}")
    if scale * point != 0:
        raise DomainError(
            f"{name}({scale}*z) has irrational Taylor coefficients at z={point}; "
            "only expansion points with scale*point = 0 are exact"
        )
    return Jet([_trig_at_zero(name, k) * scale ** k for k in range(N)], point, N)


class JetRing:
    """Ring context for jets sharing an expansion point and truncation order."""

    def __init__(self, point=0, N: int = DEFAULT_TRUNCATION):
        self.point = as_fraction(point)
        self.N = N

    @property
    def name(self):
        return f"jets@{self.point}/N={self.N}"

    def zero(self) -> Jet:
        return Jet.zero(self.point, self.N)

    def one(self) -> Jet:
        return Jet.const(1, self.point, self.N)

    def coerce(self, value) -> Jet:
        if isinstance(value, Jet):
            if value.point != self.point or value.N != self.N:
                raise DomainError("jet does not belong to this ring")
            return value
        if isinstance(value, Poly):
            return Jet.from_poly(value, self.point, self.N)
        return Jet.const(value, self.point, self.N)

    def is_zero(self, a: Jet) -> bool:
        # only a flagged zero is certainly zero
        return a.known_zero

    def __eq__(self, other):
        return isinstance(other, JetRing) and (self.point, self.N) == (other.point, other.N)

    def __hash__(self):
        return hash((self.point, self.N))

    def __repr__(self):
        return f"<{self.name}>"
