"""Local spectral structure of polynomial and analytic (jet) matrices at a point.

Polynomial matrices are handled exactly through the global Smith form and an
invertible null basis.  Jet matrices go through :func:`local_smith_jet`, the
Smith reduction over the truncated local ring; any conclusion that depends on
coefficients beyond the truncation is reported with ``certified=False``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import linalg
from .errors import DomainError, InsufficientTruncation, NotARootVector, TruncationError
from .matrix import RingMatrix, evaluate_entry
from .nullbasis import InvertibleBasis, invertible_null_basis, rank_over_fractions
from .rings import QX, Poly, as_fraction, root_order
from .series import Jet, JetRing, order_of
from .smith import partial_multiplicities_at, smith_decompose


def _is_jet_matrix(A: RingMatrix) -> bool:
    return isinstance(A.ring, JetRing)


def _check_point(A: RingMatrix, point) -> Fraction:
    point = as_fraction(point)
    if _is_jet_matrix(A) and point != A.ring.point:
        raise DomainError(f"jet matrix is expanded at {A.ring.point}, not at {point}")
    return point


def evaluate_vector(v: Sequence, point) -> List[Fraction]:
    return [evaluate_entry(e, point) for e in v]


# ---------------------------------------------------------------------------
# local Smith form over truncated series
# ---------------------------------------------------------------------------

@dataclass
class LocalSmithForm:
    """``row_transform @ A @ col_transform == diag(h^orders, 0...)`` locally.

    ``orders`` are the certified pivot orders (nondecreasing).  When the
    trailing block is not flagged as exactly zero, ``rank_certified`` is
    False and the trailing positions are listed in ``uncertified``.  The
    transforms are exact modulo ``h^precision``.
    """

    orders: List[int]
    rank: int
    rank_certified: bool
    S: RingMatrix
    row_transform: RingMatrix
    col_transform: RingMatrix
    precision: int
    point: Fraction
    N: int
    uncertified: List[tuple] = field(default_factory=list)

    @property
    def partial_multiplicities(self) -> List[int]:
        return sorted((k for k in self.orders if k > 0), reverse=True)

    @property
    def certified(self) -> bool:
        return self.rank_certified


def local_smith_jet(A: RingMatrix) -> LocalSmithForm:
    """Smith reduction of a jet matrix over the discrete valuation ring of jets.

    The pivot is the entry of least order (ties: first in row-major order).
    Eliminated entries are set to exact zero, corresponding to the exact
    analytic quotient; the block that remains is exact modulo ``h^N``, while
    the transforms lose ``max(order)`` coefficients of precision.
    """
    if not _is_jet_matrix(A):
        raise DomainError("local_smith_jet needs a matrix of jets")
    R = A.ring
    N = R.N
    m, n = A.rows, A.cols
    S = A.tolist()
    P = RingMatrix.identity(m, R).tolist()
    W = RingMatrix.identity(n, R).tolist()
    orders: List[int] = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                o = order_of(S[i][j])
                if o.is_finite and (best is None or o.value < best[0]):
                    best = (o.value, i, j)
        if best is None:
            break
        k, pi, pj = best
        if k >= N - 1:
            raise InsufficientTruncation(
                f"pivot of order {k} reaches the truncation bound N={N}; increase the truncation"
            )
        S[t], S[pi] = S[pi], S[t]
        P[t], P[pi] = P[pi], P[t]
        for M in (S, W):
            for r in M:
                r[t], r[pj] = r[pj], r[t]
        unit = S[t][t].shift_down(k)
        for i in range(t + 1, m):
            e = S[i][t]
            if e.known_zero:
                continue
            q = e.shift_down(k) / unit
            S[i] = [R.zero() if j == t else a - q * b for j, (a, b) in enumerate(zip(S[i], S[t]))]
            P[i] = [a - q * b for a, b in zip(P[i], P[t])]
        for j in range(t + 1, n):
            e = S[t][j]
            if e.known_zero:
                continue
            q = e.shift_down(k) / unit
            for r in S:
                r[j] = r[j] - q * r[t]
            S[t][j] = R.zero()
            for r in W:
                r[j] = r[j] - q * r[t]
        # pivot becomes exactly h^k
        S[t][t] = Jet([0] * k + [1], R.point, N)
        P[t] = [a / unit for a in P[t]]
        orders.append(k)
        t += 1
    uncertified = [(i, j) for i in range(t, m) for j in range(t, n) if not S[i][j].known_zero]
    precision = N - max(orders, default=0)
    return LocalSmithForm(
        orders=orders, rank=t, rank_certified=not uncertified,
        S=RingMatrix(S, R, n), row_transform=RingMatrix(P, R, m), col_transform=RingMatrix(W, R, n),
        precision=precision, point=R.point, N=N, uncertified=uncertified,
    )


# ---------------------------------------------------------------------------
# eigenvalues and ker_lambda
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EigenvalueCheck:
    generic_rank: int
    rank_at_point: int
    is_eigenvalue: bool
    certified: bool = True


def is_eigenvalue(A: RingMatrix, point) -> EigenvalueCheck:
    point = _check_point(A, point)
    at = linalg.rank(A.evaluate(point)) if A.rows and A.cols else 0
    if _is_jet_matrix(A):
        loc = local_smith_jet(A)
        generic = loc.rank
        # an uncertified trailing block can only raise the generic rank
        return EigenvalueCheck(generic, at, at < generic, loc.rank_certified or at < generic)
    generic = rank_over_fractions(A)
    return EigenvalueCheck(generic, at, at < generic)


@dataclass
class LocalKernel:
    """``span Q(point)`` for an invertible basis Q of the null module."""

    point: Fraction
    columns: List[List[Fraction]]
    n: int
    basis: Optional[object] = None
    certified: bool = True

    @property
    def dim(self) -> int:
        return len(self.columns)

    def matrix(self) -> List[List[Fraction]]:
        return linalg.columns_to_matrix(self.columns, self.n)

    def contains(self, v: Sequence) -> bool:
        return linalg.in_span(self.columns, v, self.n)


def _null_basis_columns(A: RingMatrix):
    """Ring-valued null basis columns plus a certification flag."""
    if _is_jet_matrix(A):
        loc = local_smith_jet(A)
        W = loc.col_transform
        return [W.col(j) for j in range(loc.rank, A.cols)], loc.rank_certified, loc
    B = invertible_null_basis(A)
    return B.Q.columns(), True, B


def ker_lambda(A: RingMatrix, point, basis: Optional[Sequence[Sequence]] = None) -> LocalKernel:
    """Evaluate an invertible null basis at ``point``.

    ``basis`` may supply the null-basis columns explicitly (e.g. a known
    analytic basis); otherwise one is constructed.
    """
    point = _check_point(A, point)
    if basis is not None:
        cols, cert, src = [list(c) for c in basis], not _is_jet_matrix(A), basis
    else:
        cols, cert, src = _null_basis_columns(A)
    values = [evaluate_vector(c, point) for c in cols]
    if values and linalg.rank(linalg.columns_to_matrix(values, A.cols)) != len(values):
        raise DomainError("null basis is not invertible: it loses rank at the point")
    return LocalKernel(point, values, A.cols, basis=(cols, src), certified=cert)


def membership_witness(A: RingMatrix, point, v: Sequence, kernel: Optional[LocalKernel] = None) -> list:
    """Ring vector ``w`` with ``A w = 0`` and ``w(point) = v``."""
    kernel = kernel or ker_lambda(A, point)
    v = [as_fraction(x) for x in v]
    cols = kernel.basis[0]
    if not kernel.columns:
        if any(v):
            raise DomainError("vector is not in ker_lambda (which is {0})")
        return [A.ring.zero() for _ in range(A.cols)]
    c = linalg.solve(kernel.matrix(), v, kernel.dim)
    if c is None:
        raise DomainError("vector is not in ker_lambda")
    w = [A.ring.zero() for _ in range(A.cols)]
    for coef, col in zip(c, cols):
        if coef == 0:
            continue
        w = [a + coef * b for a, b in zip(w, col)]
    return w


# ---------------------------------------------------------------------------
# root vectors
# ---------------------------------------------------------------------------

def vector_order(v: Sequence, point) -> Optional[int]:
    """Order of vanishing of a ring vector at ``point``; ``None`` if it is zero.

    Raises :class:`TruncationError` for a jet vector whose stored
    coefficients all vanish without being flagged as exactly zero.
    """
    orders = []
    below = False
    for e in v:
        if isinstance(e, Jet):
            o = order_of(e)
            if o.is_finite:
                orders.append(o.value)
            elif o.kind == "below_truncation":
                below = True
        elif isinstance(e, Poly):
            if not e.is_zero():
                orders.append(root_order(e, point))
        elif e != 0:
            orders.append(0)
    if orders:
        return min(orders)
    if below:
        raise TruncationError("vanishing order is beyond the truncation order")
    return None


@dataclass
class RootVector:
    r: list
    order: int
    residual: list

    def at(self, point) -> List[Fraction]:
        return evaluate_vector(self.r, point)


def _divide_out(v: Sequence, point, k: int) -> list:
    out = []
    for e in v:
        if isinstance(e, Jet):
            out.append(e.shift_down(k))
        else:
            out.append(QX.exact_div(Poly.coerce(e), Poly.linear(point) ** k))
    return out


def root_vector(A: RingMatrix, r: Sequence, point, kernel: Optional[LocalKernel] = None) -> RootVector:
    point = _check_point(A, point)
    kernel = kernel or ker_lambda(A, point)
    r = [A.ring.coerce(e) for e in r]
    if kernel.contains(evaluate_vector(r, point)):
        if not kernel.certified:
            # the kernel column may be a root vector whose order exceeds the truncation
            raise TruncationError("r(lambda) lies in an uncertified ker_lambda; raise the truncation")
        raise NotARootVector("in_kernel_at_lambda")
    Ar = A.apply(r)
    k = vector_order(Ar, point)
    if k is None:
        raise NotARootVector("annihilated")
    if k == 0:
        # r(point) is outside ker_lambda but A(point) r(point) != 0
        raise NotARootVector("not_in_kernel_of_A_at_lambda")
    return RootVector(r, k, _divide_out(Ar, point, k))


def root_vector_order(A: RingMatrix, r: Sequence, point, kernel: Optional[LocalKernel] = None) -> int:
    """Order of ``r`` as a root vector at ``point``.

    Raises :class:`NotARootVector` (reason ``in_kernel_at_lambda``,
    ``annihilated`` or ``not_in_kernel_of_A_at_lambda``) and, for jets,
    :class:`TruncationError` when the order is not visible within N terms.
    """
    return root_vector(A, r, point, kernel).order


@dataclass
class RootVectorSet:
    vectors: List[RootVector]
    point: Fraction
    lambda_independent: bool
    complete: bool
    ordered: bool
    maximal: bool
    certified: bool
    evidence: dict = field(default_factory=dict)

    @property
    def orders(self) -> List[int]:
        return [v.order for v in self.vectors]


def partial_multiplicities(A: RingMatrix, point):
    """``(multiplicities, certified)`` of ``point`` for A."""
    point = _check_point(A, point)
    if _is_jet_matrix(A):
        loc = local_smith_jet(A)
        return loc.partial_multiplicities, loc.rank_certified
    return partial_multiplicities_at(smith_decompose(A), point), True


def check_set(A: RingMatrix, point, vectors: Sequence[Sequence],
              kernel: Optional[LocalKernel] = None) -> RootVectorSet:
    """Classify a list of candidate root vectors at ``point``.

    Maximality is judged on the set: its sorted orders must equal the partial
    multiplicities.  ``ordered`` reports whether the given sequence already
    has nonincreasing orders.
    """
    point = _check_point(A, point)
    kernel = kernel or ker_lambda(A, point)
    n = A.cols
    roots: List[RootVector] = []
    rejected = {}
    for idx, r in enumerate(vectors):
        try:
            roots.append(root_vector(A, r, point, kernel))
        except NotARootVector as exc:
            rejected[idx] = exc.reason
    all_roots = not rejected
    block = kernel.columns + [v.at(point) for v in roots]
    rank_block = linalg.rank(linalg.columns_to_matrix(block, n)) if block else 0
    A_at = A.evaluate(point)
    dim_ker = n - (linalg.rank(A_at) if A.rows and n else 0)
    independent = all_roots and rank_block == kernel.dim + len(roots)
    complete = independent and rank_block == dim_ker
    orders = [v.order for v in roots]
    ordered = complete and all(a >= b for a, b in zip(orders, orders[1:]))
    mults, mult_cert = partial_multiplicities(A, point)
    sorted_orders = sorted(orders, reverse=True)
    list_test = complete and sorted_orders == mults
    sum_test = complete and sum(orders) == sum(mults)
    if list_test != sum_test:
        raise AssertionError("maximality tests disagree: order list vs order sum")
    evidence = {
        "kernel_dim": kernel.dim,
        "rank_with_kernel": rank_block,
        "dim_ker_A_at_lambda": dim_ker,
        "partial_multiplicities": mults,
        "orders": orders,
        "rejected": rejected,
        "sum_test": sum_test,
    }
    return RootVectorSet(roots, point, independent, complete, ordered, list_test,
                         certified=kernel.certified and mult_cert, evidence=evidence)


def maximal_set(A: RingMatrix, point) -> RootVectorSet:
    """Maximal set of root vectors transported from the Smith form.

    For ``A = U S V`` the unit vectors at the invariant factors vanishing at
    ``point`` form a maximal set for S; their images under ``V^-1`` form one
    for A, listed with nonincreasing orders.
    """
    point = _check_point(A, point)
    if _is_jet_matrix(A):
        loc = local_smith_jet(A)
        W = loc.col_transform
        idx = [i for i, k in enumerate(loc.orders) if k > 0]
        kernel = LocalKernel(point, [evaluate_vector(W.col(j), point) for j in range(loc.rank, A.cols)],
                             A.cols, basis=([W.col(j) for j in range(loc.rank, A.cols)], loc),
                             certified=loc.rank_certified)
    else:
        D = smith_decompose(A)
        W = D.V_inv
        idx = [i for i, f in enumerate(D.invariant_factors) if root_order(f, point) > 0]
        kernel = ker_lambda(A, point)
    candidates = [W.col(i) for i in reversed(idx)]
    result = check_set(A, point, candidates, kernel)
    if not (result.maximal and result.ordered) and not result.evidence["rejected"]:
        raise AssertionError("transported Smith root vectors are not maximal")
    return result


@dataclass(frozen=True)
class EigenvectorClass:
    representative: List[Fraction]
    kernel_basis: List[List[Fraction]]

    def same_class(self, v: Sequence) -> bool:
        diff = [a - as_fraction(b) for a, b in zip(self.representative, v)]
        return linalg.in_span(self.kernel_basis, diff, len(diff))


def eigenvectors_at(A: RingMatrix, point, vectors: Optional[Sequence[Sequence]] = None,
                    kernel: Optional[LocalKernel] = None) -> List[EigenvectorClass]:
    """Classes ``[x_i(point)]`` modulo ``ker_lambda`` for a complete set of root vectors.

    Uses ``vectors`` when given (they must form a complete set), otherwise a
    maximal set.  Representatives are reduced against the echelon basis of
    ``ker_lambda``.
    """
    point = _check_point(A, point)
    kernel = kernel or ker_lambda(A, point)
    if vectors is None:
        rs = maximal_set(A, point)
    else:
        rs = check_set(A, point, vectors, kernel)
        if not rs.complete:
            raise DomainError("eigenvectors need a complete set of root vectors")
    return [EigenvectorClass(linalg.reduce_modulo(v.at(point), kernel.columns, A.cols), kernel.columns)
            for v in rs.vectors]
