"""Invertible bases of null modules ``null(A) = ker A  cap  Q[x]^n``.

The construction: take a polynomial basis ``K`` of ``ker A`` over Q(x),
Smith-decompose ``K = U S V`` and keep the first ``p`` columns of ``U``.
Those columns sit inside a unimodular matrix, hence are left invertible.

:func:`check_invertible_conditions` tests the five equivalent
characterizations of an invertible basis by deliberately separate routes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import linalg
from .errors import DomainError, NotInModule, NotInSpanError, RankDeficientError
from .matrix import RingMatrix
from .rings import QX, Poly
from .smith import SmithDecomposition, smith_decompose

EXHAUSTIVE_MINOR_LIMIT = (12, 4)


def fraction_free_reduce(rows: List[list], ring=QX):
    """Fraction-free Gauss-Jordan elimination (in place on a copy).

    Returns ``(M, pivots, d)``: every pivot row ``i`` has ``M[i][pivots[i]] == d``
    and zeros in the other pivot columns.  All divisions are exact.
    """
    M = [list(r) for r in rows]
    if not M:
        return M, [], ring.one()
    ncols = len(M[0])
    prev = ring.one()
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if not ring.is_zero(M[i][c])), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        piv = M[r][c]
        for i in range(len(M)):
            if i == r:
                continue
            f = M[i][c]
            M[i] = [ring.exact_div(piv * a - f * b, prev) for a, b in zip(M[i], M[r])]
        prev = piv
        pivots.append(c)
        r += 1
    return M, pivots, prev


def rank_over_fractions(A: RingMatrix) -> int:
    if A.rows == 0 or A.cols == 0:
        return 0
    return len(fraction_free_reduce(A.tolist(), A.ring)[1])


def _normalize_column(col: List[Poly]) -> List[Poly]:
    g = QX.gcd_many(col)
    col = [QX.exact_div(e, g) for e in col]
    lead = next(e for e in col if not e.is_zero())
    return [e / lead.lc for e in col]


def kernel_over_fractions(A: RingMatrix) -> RingMatrix:
    """Primitive polynomial basis (as columns) of ``ker A`` over Q(x)."""
    n = A.cols
    if A.rows == 0:
        return RingMatrix.identity(n, QX)
    M, pivots, d = fraction_free_reduce(A.tolist(), QX)
    free = [j for j in range(n) if j not in pivots]
    cols = []
    for f in free:
        v = [Poly()] * n
        v[f] = d
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][f]
        cols.append(_normalize_column(v))
    return RingMatrix.from_columns(cols, QX, n)


@dataclass(frozen=True)
class InvertibleBasis:
    Q: RingMatrix
    L: RingMatrix
    kernel: RingMatrix
    provenance: Optional[SmithDecomposition] = None

    @property
    def dim(self) -> int:
        return self.Q.cols


def _empty(n: int) -> RingMatrix:
    return RingMatrix([[] for _ in range(n)], QX, 0)


def invertible_null_basis(A: RingMatrix) -> InvertibleBasis:
    n = A.cols
    K = kernel_over_fractions(A)
    p = K.cols
    if p == 0:
        return InvertibleBasis(Q=_empty(n), L=RingMatrix([], QX, n), kernel=K)
    D = smith_decompose(K)
    Q = D.U.take_columns(range(p))
    DQ = smith_decompose(Q)
    if DQ.rank != p or not all(QX.is_unit(f) for f in DQ.invariant_factors):
        raise AssertionError("columns of a unimodular matrix lost their trivial Smith form")
    St = DQ.S.transpose()
    L = DQ.V_inv @ St @ DQ.U_inv
    return InvertibleBasis(Q=Q, L=L, kernel=K, provenance=D)


def solve_in_ring(Q: RingMatrix, b: List) -> List[Poly]:
    """Unique solution of ``Q a = b`` when it is polynomial.

    Raises :class:`NotInSpanError` if ``b`` is outside the Q(x)-span of the
    columns and :class:`NotInModule` if the solution has a non-polynomial
    coordinate.
    """
    n, p = Q.rows, Q.cols
    if len(b) != n:
        raise DomainError("right-hand side has the wrong length")
    aug = [Q.row(i) + [Poly.coerce(b[i])] for i in range(n)]
    M, pivots, d = fraction_free_reduce(aug, QX)
    if p in pivots:
        raise NotInSpanError("b is not in the column span of Q")
    if pivots != list(range(p)):
        raise RankDeficientError("Q does not have full column rank")
    a = []
    for i in range(p):
        num = M[i][p]
        q, r = QX.divmod(num, d)
        if not r.is_zero():
            g = QX.gcd(num, d)
            raise NotInModule(i, f"({QX.exact_div(num, g)})/({QX.exact_div(d, g)})")
        a.append(q)
    return a


class _RowReduction:
    """Unimodular row reduction of an n x p matrix to ``[T; 0]``, T upper triangular."""

    def __init__(self, Q: RingMatrix):
        n = Q.rows
        self.T = Q.tolist()
        self.E = RingMatrix.identity(n, QX).tolist()
        self.Einv = RingMatrix.identity(n, QX).tolist()
        self.n, self.p = n, Q.cols

    def _add(self, i, j, c):
        self.T[i] = [a + c * b for a, b in zip(self.T[i], self.T[j])]
        self.E[i] = [a + c * b for a, b in zip(self.E[i], self.E[j])]
        for r in self.Einv:
            r[j] = r[j] - c * r[i]

    def _swap(self, i, j):
        self.T[i], self.T[j] = self.T[j], self.T[i]
        self.E[i], self.E[j] = self.E[j], self.E[i]
        for r in self.Einv:
            r[i], r[j] = r[j], r[i]

    def run(self):
        for j in range(self.p):
            while True:
                rows = [i for i in range(j, self.n) if not self.T[i][j].is_zero()]
                if not rows:
                    raise RankDeficientError("Q does not have full column rank")
                best = min(rows, key=lambda i: (self.T[i][j].degree, i))
                self._swap(j, best)
                done = True
                for i in range(j + 1, self.n):
                    if self.T[i][j].is_zero():
                        continue
                    q, _ = QX.divmod(self.T[i][j], self.T[j][j])
                    self._add(i, j, -q)
                    done = done and self.T[i][j].is_zero()
                if done:
                    break
        return self

    def diagonal(self):
        return [self.T[j][j] for j in range(self.p)]

    def left_inverse(self) -> Optional[RingMatrix]:
        diag = self.diagonal()
        if not all(QX.is_unit(t) for t in diag):
            return None
        T = [list(r) for r in self.T[:self.p]]
        E = [list(r) for r in self.E[:self.p]]
        for j in range(self.p - 1, -1, -1):
            inv = Poly.const(1 / T[j][j].lc)
            T[j] = [inv * a for a in T[j]]
            E[j] = [inv * a for a in E[j]]
            for i in range(j):
                c = T[i][j]
                if c.is_zero():
                    continue
                T[i] = [a - c * b for a, b in zip(T[i], T[j])]
                E[i] = [a - c * b for a, b in zip(E[i], E[j])]
        return RingMatrix(E, QX, self.n)


@dataclass
class InvertibilityReport:
    cond1: bool
    cond2: bool
    cond3: bool
    cond4: bool
    cond5: bool
    cond2_mode: str = "sampled"
    sample_points: List[Fraction] = field(default_factory=list)
    witness: dict = field(default_factory=dict)
    left_inverse: Optional[RingMatrix] = None
    minor_gcd: Optional[Poly] = None

    @property
    def exact_conditions_agree(self) -> bool:
        return self.cond1 == self.cond3 == self.cond4 == self.cond5

    @property
    def invertible(self) -> bool:
        return self.cond1


def sample_points(samples: int, seed: int = 0, bound: int = 5) -> List[Fraction]:
    rng = random.Random(seed)
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(samples)]


def _random_poly(rng: random.Random, deg: int = 2) -> Poly:
    return Poly(rng.randint(-3, 3) for _ in range(deg + 1))


def check_invertible_conditions(Q: RingMatrix, samples: int = 20, seed: int = 0) -> InvertibilityReport:
    """Evaluate the five equivalent invertibility conditions for the columns of Q.

    1. a polynomial left inverse exists (unimodular row reduction),
    2. Q(a) has full column rank at sampled rational points a (one-sided),
    3. the p x p minors are coprime,
    4. ``Q a = b`` with b polynomial forces a polynomial,
    5. the Smith form of Q is trivial.
    """
    n, p = Q.rows, Q.cols
    if p > n or rank_over_fractions(Q) != p:
        raise RankDeficientError("Q must have full column rank over Q(x)")
    witness: dict = {}

    red = _RowReduction(Q).run()
    L = red.left_inverse()
    cond1 = L is not None
    if cond1 and L @ Q != RingMatrix.identity(p, QX):
        raise AssertionError("constructed left inverse failed verification")
    if not cond1:
        bad = next(t for t in red.diagonal() if not QX.is_unit(t))
        witness["non_unit_pivot"] = bad

    points = sample_points(samples, seed)
    cond2 = True
    for a in points:
        if linalg.rank(Q.evaluate(a)) < p:
            cond2 = False
            witness["rank_deficient_at"] = a
            break

    if n <= EXHAUSTIVE_MINOR_LIMIT[0] and p <= EXHAUSTIVE_MINOR_LIMIT[1]:
        g = QX.gcd_many(Q.minors(p))
    else:
        g = Poly.const(1)
        for f in smith_decompose(Q).invariant_factors:
            g = g * f
    cond3 = QX.is_unit(g)
    if not cond3:
        witness["minor_gcd"] = g

    # ring vectors of cs(Q) over Q(x): E^-1 [y; 0]; unit y suffice, random y add coverage
    rng = random.Random(seed)
    Einv = RingMatrix(red.Einv, QX, n)
    ys = [[Poly.const(int(i == j)) for i in range(p)] for j in range(p)]
    ys += [[_random_poly(rng) for _ in range(p)] for _ in range(min(samples, 4))]
    cond4 = True
    for y in ys:
        b = Einv.apply(y + [Poly()] * (n - p))
        try:
            a = solve_in_ring(Q, b)
        except NotInModule as exc:
            cond4 = False
            witness["non_ring_coefficients"] = {"b": b, "index": exc.index, "value": exc.value}
            break
        if Q.apply(a) != b:
            raise AssertionError("ring solve failed verification")

    D = smith_decompose(Q)
    cond5 = D.rank == p and all(QX.is_unit(f) for f in D.invariant_factors)

    return InvertibilityReport(cond1, cond2, cond3, cond4, cond5, "sampled", points, witness, L, g)
