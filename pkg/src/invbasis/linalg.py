"""Dense exact linear algebra over Q on lists of lists of Fractions."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

QMatrix = List[List[Fraction]]


def to_q(rows: Sequence[Sequence]) -> QMatrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence], ncols: Optional[int] = None) -> Tuple[QMatrix, List[int]]:
    """Reduced row echelon form and pivot column indices."""
    M = to_q(rows)
    if not M:
        return M, []
    n = len(M[0]) if ncols is None else ncols
    pivots: List[int] = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def transpose(rows: Sequence[Sequence]) -> QMatrix:
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def hstack(*blocks: Sequence[Sequence], nrows: Optional[int] = None) -> QMatrix:
    """Concatenate column blocks; empty blocks (no columns) are allowed."""
    if nrows is None:
        nrows = next(len(b) for b in blocks if b)
    out: QMatrix = [[] for _ in range(nrows)]
    for b in blocks:
        if not b:
            continue
        for i in range(nrows):
            out[i].extend(Fraction(v) for v in b[i])
    return out


def columns_to_matrix(cols: Sequence[Sequence], nrows: int) -> QMatrix:
    """Matrix whose columns are ``cols`` (``nrows`` x ``len(cols)``)."""
    return [[Fraction(c[i]) for c in cols] for i in range(nrows)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of the right null space as a list of column vectors."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(rows, ncols)
    free = [j for j in range(ncols) if j not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], b: Sequence, ncols: int) -> Optional[List[Fraction]]:
    """Some solution of ``rows @ x = b`` or ``None`` when inconsistent."""
    if not rows:
        return [Fraction(0)] * ncols
    aug = [list(r) + [b[i]] for i, r in enumerate(rows)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(piv):
        x[pc] = R[i][ncols]
    return x


def matvec(rows: Sequence[Sequence], v: Sequence) -> List[Fraction]:
    return [sum((Fraction(a) * b for a, b in zip(r, v)), Fraction(0)) for r in rows]


def in_span(columns: Sequence[Sequence], v: Sequence, n: int) -> bool:
    if not columns:
        return all(x == 0 for x in v)
    return solve(columns_to_matrix(columns, n), v, len(columns)) is not None


def span_equal(a: Sequence[Sequence], b: Sequence[Sequence], n: int) -> bool:
    """Equality of the column spans of two lists of column vectors in Q^n."""
    ra = rank(columns_to_matrix(a, n)) if a else 0
    rb = rank(columns_to_matrix(b, n)) if b else 0
    both = list(a) + list(b)
    rab = rank(columns_to_matrix(both, n)) if both else 0
    return ra == rb == rab


def reduce_modulo(v: Sequence, columns: Sequence[Sequence], n: int) -> List[Fraction]:
    """Canonical representative of ``v`` modulo the span of ``columns``.

    Eliminates ``v`` against the reduced echelon basis of the span, so two
    vectors in the same coset map to the same representative.
    """
    v = [Fraction(x) for x in v]
    if not columns:
        return v
    R, piv = rref([list(c) for c in columns], n)
    for i, pc in enumerate(piv):
        if v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, R[i])]
    return v
