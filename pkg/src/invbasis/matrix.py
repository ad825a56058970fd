"""Dense matrices over an exact ring (Poly, int or Jet entries)."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Sequence

from .errors import DomainError
from .rings import QX, ZZ, Poly
from .series import Jet, JetRing


def infer_ring(entries):
    for e in entries:
        if isinstance(e, Poly):
            return QX
        if isinstance(e, Jet):
            return JetRing(e.point, e.N)
    return ZZ


class RingMatrix:
    """Immutable-by-convention m x n matrix; entries share one ring."""

    __slots__ = ("rows", "cols", "ring", "_e")

    def __init__(self, entries: Sequence[Sequence], ring=None, cols: int = None):
        rows = [list(r) for r in entries]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DomainError("ragged matrix rows")
        if ring is None:
            ring = infer_ring(e for r in rows for e in r)
        self.ring = ring
        self.rows = len(rows)
        self.cols = cols
        self._e = [[ring.coerce(e) for e in r] for r in rows]

    @classmethod
    def identity(cls, n: int, ring) -> "RingMatrix":
        return cls([[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)], ring, n)

    @classmethod
    def zeros(cls, m: int, n: int, ring) -> "RingMatrix":
        return cls([[ring.zero()] * n for _ in range(m)], ring, n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], ring, nrows: int) -> "RingMatrix":
        return cls([[c[i] for c in columns] for i in range(nrows)], ring, len(columns))

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def tolist(self) -> List[list]:
        return [list(r) for r in self._e]

    def row(self, i: int) -> list:
        return list(self._e[i])

    def col(self, j: int) -> list:
        return [r[j] for r in self._e]

    def columns(self) -> List[list]:
        return [self.col(j) for j in range(self.cols)]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RingMatrix":
        return RingMatrix([[self._e[i][j] for j in cols] for i in rows], self.ring, len(cols))

    def take_columns(self, cols: Sequence[int]) -> "RingMatrix":
        return self.submatrix(range(self.rows), cols)

    def take_rows(self, rows: Sequence[int]) -> "RingMatrix":
        return self.submatrix(rows, range(self.cols))

    def transpose(self) -> "RingMatrix":
        return RingMatrix([self.col(j) for j in range(self.cols)], self.ring, self.rows)

    @property
    def T(self):
        return self.transpose()

    def map(self, f) -> "RingMatrix":
        return RingMatrix([[f(e) for e in r] for r in self._e], None, self.cols)

    def __matmul__(self, other):
        if isinstance(other, RingMatrix):
            if self.cols != other.rows:
                raise DomainError(f"shape mismatch {self.shape} @ {other.shape}")
            z = self.ring.zero()
            out = []
            ocols = other.columns()
            for r in self._e:
                out.append([_dot(r, c, z) for c in ocols])
            return RingMatrix(out, self.ring, other.cols)
        return self.apply(other)

    def apply(self, vector: Sequence) -> list:
        if len(vector) != self.cols:
            raise DomainError("vector length does not match column count")
        z = self.ring.zero()
        v = [self.ring.coerce(x) for x in vector]
        return [_dot(r, v, z) for r in self._e]

    def __add__(self, other: "RingMatrix"):
        self._same_shape(other)
        return RingMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.ring, self.cols)

    def __sub__(self, other: "RingMatrix"):
        self._same_shape(other)
        return RingMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._e, other._e)], self.ring, self.cols)

    def __neg__(self):
        return RingMatrix([[-a for a in r] for r in self._e], self.ring, self.cols)

    def scale(self, c) -> "RingMatrix":
        return RingMatrix([[c * a for a in r] for r in self._e], self.ring, self.cols)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return self.shape == other.shape and self._e == other._e

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self._e))

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(e) for r in self._e for e in r)

    def evaluate(self, point=None) -> List[List[Fraction]]:
        """Constant rational matrix obtained by evaluating every entry."""
        return [[evaluate_entry(e, point) for e in r] for r in self._e]

    def det(self):
        if self.rows != self.cols:
            raise DomainError("determinant of a non-square matrix")
        return det(self._e, self.ring)

    def minors(self, k: int) -> Iterator:
        for rs in combinations(range(self.rows), k):
            for cs in combinations(range(self.cols), k):
                yield det([[self._e[i][j] for j in cs] for i in rs], self.ring)

    def hstack(self, other: "RingMatrix") -> "RingMatrix":
        if self.rows != other.rows:
            raise DomainError("row count mismatch")
        return RingMatrix([a + b for a, b in zip(self._e, other._e)], self.ring, self.cols + other.cols)

    def __repr__(self):
        return f"RingMatrix({self.rows}x{self.cols} over {self.ring!r})"

    def __str__(self):
        return "\n".join("[" + ", ".join(str(e) for e in r) + "]" for r in self._e)


def _dot(a, b, zero):
    acc = zero
    for x, y in zip(a, b):
        acc = acc + x * y
    return acc


def evaluate_entry(e, point=None) -> Fraction:
    if isinstance(e, Poly):
        if point is None:
            raise DomainError("evaluating a polynomial entry needs a point")
        return e(point)
    if isinstance(e, Jet):
        if point is not None and Fraction(point) != e.point:
            raise DomainError(f"jet expanded at {e.point} cannot be evaluated at {point}")
        return e.value()
    return Fraction(e)


def det(rows: Sequence[Sequence], ring):
    """Determinant; Bareiss elimination over Euclidean rings, Laplace otherwise."""
    n = len(rows)
    if n == 0:
        return ring.one()
    if not hasattr(ring, "exact_div"):
        return _laplace(rows, ring)
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one()
    for k in range(n - 1):
        if ring.is_zero(M[k][k]):
            p = next((i for i in range(k + 1, n) if not ring.is_zero(M[i][k])), None)
            if p is None:
                return ring.zero()
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = ring.exact_div(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def _laplace(rows, ring):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = ring.zero()
    for j in range(n):
        if ring.is_zero(rows[0][j]):
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _laplace(minor, ring)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def vector_is_zero(v: Sequence, ring) -> bool:
    return all(ring.is_zero(e) for e in v)
