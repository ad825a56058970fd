"""Smith normal form over a Euclidean ring with unimodular transformations.

``smith_decompose(A)`` returns ``U, S, V`` with ``A = U @ S @ V``.  The
inverses ``U_inv`` and ``V_inv`` are accumulated alongside, since every
elementary operation has an elementary inverse; :func:`unimodular_inverse`
provides the independent adjugate route.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List

from .errors import DomainError, NotAUnitError
from .matrix import RingMatrix, det
from .rings import QX, EuclideanRing, Poly, root_order


@dataclass(frozen=True)
class SmithDecomposition:
    U: RingMatrix
    S: RingMatrix
    V: RingMatrix
    U_inv: RingMatrix
    V_inv: RingMatrix
    rank: int
    invariant_factors: List = field(default_factory=list)

    @property
    def ring(self) -> EuclideanRing:
        return self.S.ring

    def diagonal(self) -> list:
        return [self.S[i, i] for i in range(min(self.S.rows, self.S.cols))]


class _Reducer:
    """Working state: S plus the four transformation matrices."""

    def __init__(self, A: RingMatrix):
        R = A.ring
        self.R = R
        self.m, self.n = A.rows, A.cols
        self.S = A.tolist()
        self.U = RingMatrix.identity(self.m, R).tolist()
        self.Uinv = RingMatrix.identity(self.m, R).tolist()
        self.V = RingMatrix.identity(self.n, R).tolist()
        self.Vinv = RingMatrix.identity(self.n, R).tolist()

    # row operations act on S and Uinv from the left, on U from the right
    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.S, self.Uinv):
            M[i], M[j] = M[j], M[i]
        for r in self.U:
            r[i], r[j] = r[j], r[i]

    def add_row(self, i, j, c):
        """row_i += c * row_j"""
        for M in (self.S, self.Uinv):
            M[i] = [a + c * b for a, b in zip(M[i], M[j])]
        for r in self.U:
            r[j] = r[j] - c * r[i]

    def scale_row(self, i, u):
        uinv = self.R.unit_inverse(u)
        for M in (self.S, self.Uinv):
            M[i] = [u * a for a in M[i]]
        for r in self.U:
            r[i] = r[i] * uinv

    # column operations act on S and Vinv from the right, on V from the left
    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.S, self.Vinv):
            for r in M:
                r[i], r[j] = r[j], r[i]
        self.V[i], self.V[j] = self.V[j], self.V[i]

    def add_col(self, i, j, c):
        """col_i += c * col_j"""
        for M in (self.S, self.Vinv):
            for r in M:
                r[i] = r[i] + c * r[j]
        self.V[j] = [a - c * b for a, b in zip(self.V[j], self.V[i])]

    def pivot(self, t):
        R, best = self.R, None
        for i in range(t, self.m):
            for j in range(t, self.n):
                e = self.S[i][j]
                if R.is_zero(e):
                    continue
                size = R.size(e)
                if best is None or size < best[0]:
                    best = (size, i, j)
        return best

    def reduce(self) -> int:
        R = self.R
        t = 0
        while t < min(self.m, self.n):
            found = self.pivot(t)
            if found is None:
                break
            while True:
                _, pi, pj = found
                self.swap_rows(t, pi)
                self.swap_cols(t, pj)
                p = self.S[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    if R.is_zero(self.S[i][t]):
                        continue
                    q, r = R.divmod(self.S[i][t], p)
                    self.add_row(i, t, -q)
                    clean = clean and R.is_zero(r)
                for j in range(t + 1, self.n):
                    if R.is_zero(self.S[t][j]):
                        continue
                    q, r = R.divmod(self.S[t][j], p)
                    self.add_col(j, t, -q)
                    clean = clean and R.is_zero(r)
                if clean:
                    bad = self._non_multiple(t)
                    if bad is None:
                        break
                    # pull the offending row into row t; its entry then needs reducing
                    self.add_row(t, bad, R.one())
                found = self.pivot(t)
            self.scale_row(t, R.normal_unit(self.S[t][t]))
            t += 1
        return t

    def _non_multiple(self, t):
        p = self.S[t][t]
        for i in range(t + 1, self.m):
            for j in range(t + 1, self.n):
                if not self.R.divides(p, self.S[i][j]):
                    return i
        return None


def smith_decompose(A: RingMatrix) -> SmithDecomposition:
    """Smith form ``A = U @ S @ V`` with unimodular ``U``, ``V``.

    Pivots are chosen by minimal Euclidean size (ties: first in row-major
    order).  Invariant factors are normalized, the unit being absorbed in U.
    """
    if not isinstance(A.ring, EuclideanRing):
        raise DomainError(f"Smith decomposition needs a Euclidean ring, got {A.ring!r}")
    red = _Reducer(A)
    rank = red.reduce()
    R = A.ring
    mk = lambda rows, c: RingMatrix(rows, R, c)
    S = mk(red.S, A.cols)
    return SmithDecomposition(
        U=mk(red.U, A.rows), S=S, V=mk(red.V, A.cols),
        U_inv=mk(red.Uinv, A.rows), V_inv=mk(red.Vinv, A.cols),
        rank=rank,
        invariant_factors=[S[i, i] for i in range(rank)],
    )


def invariant_factors(A: RingMatrix) -> list:
    return smith_decompose(A).invariant_factors


def determinantal_divisors_oracle(A: RingMatrix, k: int):
    """Normalized gcd of all k x k minors (exhaustive)."""
    if not 1 <= k <= min(A.rows, A.cols):
        raise DomainError(f"minor size {k} out of range for a {A.rows}x{A.cols} matrix")
    return A.ring.gcd_many(A.minors(k))


def is_unimodular(U: RingMatrix) -> bool:
    return U.rows == U.cols and U.ring.is_unit(U.det())


def adjugate(M: RingMatrix) -> RingMatrix:
    n, R, e = M.rows, M.ring, M.tolist()
    if n == 1:
        return RingMatrix([[R.one()]], R, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1:] for k, r in enumerate(e) if k != i]
            c = det(minor, R)
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return RingMatrix(out, R, n)


def unimodular_inverse(U: RingMatrix) -> RingMatrix:
    """``adj(U) / det(U)``; raises unless ``det(U)`` is a unit."""
    if U.rows != U.cols:
        raise DomainError("only square matrices can be unimodular")
    R = U.ring
    d = U.det()
    if not R.is_unit(d):
        raise NotAUnitError(f"determinant {d} is not a unit")
    return adjugate(U).scale(R.unit_inverse(d))


def partial_multiplicities_at(D: SmithDecomposition, point) -> List[int]:
    """Positive root orders of ``point`` in the invariant factors, largest first."""
    if D.ring is not QX:
        raise DomainError("partial multiplicities need polynomial invariant factors")
    orders = [root_order(f, point) for f in D.invariant_factors]
    return sorted((k for k in orders if k > 0), reverse=True)


def poly_matrix(rows) -> RingMatrix:
    """Convenience constructor: nested lists of Poly/rationals -> matrix over Q[x]."""
    return RingMatrix([[Poly.coerce(e) if not isinstance(e, Poly) else e for e in r] for r in rows], QX)
