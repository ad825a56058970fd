"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``python tests/test_acceptance.py`` for the summary, or
``pytest -s tests/test_acceptance.py`` to see the lines under pytest.
"""
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import diag_matrix, identity, rand_int_matrix, rand_poly, rand_poly_matrix, rand_unimodular  # noqa: E402
from invbasis import linalg  # noqa: E402
from invbasis.eigen import (check_set, ker_lambda, local_smith_jet, maximal_set,  # noqa: E402
                            partial_multiplicities, root_vector_order)
from invbasis.errors import InsufficientTruncation  # noqa: E402
from invbasis.matfile import bundled, read_matrix_file  # noqa: E402
from invbasis.matrix import RingMatrix  # noqa: E402
from invbasis.nullbasis import (check_invertible_conditions, invertible_null_basis,  # noqa: E402
                                rank_over_fractions)
from invbasis.rings import QX, ZZ, Poly, root_order  # noqa: E402
from invbasis.series import Jet, JetRing  # noqa: E402
from invbasis.smith import determinantal_divisors_oracle, smith_decompose  # noqa: E402

x = Poly.x()
SEED = 20261016


def report(number, ok, detail):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def worked_example():
    mf = read_matrix_file(bundled())
    return mf, mf.to_matrix(point=0, trunc=16)


# -- criterion 1 -------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    _, A = worked_example()
    loc = local_smith_jet(A)
    elapsed = time.perf_counter() - t0
    ok = (sorted(loc.partial_multiplicities) == [1, 2] and loc.rank == 2
          and not loc.rank_certified and loc.uncertified == [(2, 2)] and elapsed < 5)
    return report(1, ok, f"multiplicities={loc.partial_multiplicities} rank={loc.rank} "
                         f"rank_certified={loc.rank_certified} time={elapsed:.2f}s")


# -- criterion 2 -------------------------------------------------------------

def criterion_2():
    mf, A = worked_example()
    v1 = mf.parse_vector("1, -exp(z), 0", point=0, trunc=16)
    v2 = mf.parse_vector("1, -2*exp(z), 0", point=0, trunc=16)
    K = ker_lambda(A, 0)
    o1, o2 = root_vector_order(A, v1, 0, K), root_vector_order(A, v2, 0, K)
    at = [[e.value() for e in v] for v in (v1, v2)]
    r = linalg.rank(linalg.columns_to_matrix(K.columns + at, 3))
    rs = check_set(A, 0, [v1, v2], K)
    ok = (o1, o2) == (1, 2) and r == 3 and rs.lambda_independent and rs.complete and rs.maximal
    return report(2, ok, f"orders=({o1},{o2}) rank[Q(0) v1(0) v2(0)]={r} independent={rs.lambda_independent} "
                         f"complete={rs.complete} maximal={rs.maximal}")


# -- criterion 3 -------------------------------------------------------------

def criterion_3():
    _, A = worked_example()
    K = ker_lambda(A, 0)
    ok = linalg.span_equal(K.columns, [[1, -2, 1]], 3)
    return report(3, ok, f"ker_0 basis={[[str(c) for c in col] for col in K.columns]}")


# -- criterion 4 -------------------------------------------------------------

def smith_is_valid(A):
    R = A.ring
    D = smith_decompose(A)
    if D.U @ D.S @ D.V != A:
        return False
    if not (R.is_unit(D.U.det()) and R.is_unit(D.V.det())):
        return False
    diag = D.diagonal()
    if any(not R.is_zero(D.S[i, j]) for i in range(A.rows) for j in range(A.cols) if i != j):
        return False
    if not all(R.divides(a, b) for a, b in zip(diag, diag[1:])):
        return False
    prod = R.one()
    for k in range(1, min(A.shape) + 1):
        prod = R.normalize(prod * D.invariant_factors[k - 1]) if k <= D.rank else R.zero()
        if prod != determinantal_divisors_oracle(A, k):
            return False
    return True


def criterion_4(count=200):
    rng = random.Random(SEED + 4)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(count):
        A = rand_poly_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), deg=3)
        bad += not smith_is_valid(A)
        B = rand_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        bad += not smith_is_valid(B)
    elapsed = time.perf_counter() - t0
    ok = bad == 0 and elapsed < 60
    return report(4, ok, f"{count} over Q[x] + {count} over Z, failures={bad}, time={elapsed:.1f}s")


# -- criterion 5 -------------------------------------------------------------

def random_full_column_rank(rng):
    n = rng.randint(2, 4)
    p = rng.randint(1, n - 1)
    Q = rand_unimodular(rng, n).take_columns(range(p))
    kind = rng.choice(["invertible", "rational_root", "irrational", "generic"])
    if kind == "invertible":
        return Q @ rand_unimodular(rng, p)
    if kind == "generic":
        while True:
            G = RingMatrix([[rand_poly(rng, 2, 3) for _ in range(p)] for _ in range(n)], QX, p)
            if rank_over_fractions(G) == p:
                return G
    f = x - rng.randint(-4, 4) if kind == "rational_root" else x**2 + rng.randint(1, 3)
    return Q @ diag_matrix([f] + [1] * (p - 1), p, p) @ rand_unimodular(rng, p)


def criterion_5(count=100):
    rng = random.Random(SEED + 5)
    disagree = contradict = invertible = 0
    for i in range(count):
        rep = check_invertible_conditions(random_full_column_rank(rng), samples=20, seed=i)
        if not (rep.cond1 == rep.cond3 == rep.cond4 == rep.cond5):
            disagree += 1
        if rep.cond1 and not rep.cond2:
            contradict += 1
        invertible += rep.cond1
    ok = disagree == 0 and contradict == 0
    return report(5, ok, f"{count} matrices ({invertible} invertible), cond 1/3/4/5 disagreements={disagree}, "
                         f"sampled cond 2 contradictions={contradict}")


# -- criterion 6 -------------------------------------------------------------

def criterion_6(count=100):
    rng = random.Random(SEED + 6)
    bad = 0
    for _ in range(count):
        m, n = rng.randint(1, 4), rng.randint(2, 5)
        r = rng.randint(0, min(m, n - 1))
        A = (rand_poly_matrix(rng, m, r, 2, zero_prob=0.1) @ rand_poly_matrix(rng, r, n, 2, zero_prob=0.1)
             if r else RingMatrix.zeros(m, n, QX))
        B = invertible_null_basis(A)
        p = n - rank_over_fractions(A)
        ok = (B.dim == p and (A @ B.Q).is_zero() and B.L @ B.Q == identity(p)
              and all(f == Poly.const(1) for f in smith_decompose(B.Q).invariant_factors))
        bad += not ok
    return report(6, bad == 0, f"{count} rank-deficient matrices, failures={bad}")


# -- criterion 7 -------------------------------------------------------------

def constructed_instance(rng):
    """A = U0 * S0 * V0 with a prescribed divisibility chain and multiplicities at lam."""
    lam = rng.randint(-2, 2)
    m, n = rng.randint(2, 4), rng.randint(2, 4)
    r = rng.randint(1, min(m, n))
    exps = sorted(rng.randint(0, 3) for _ in range(r))
    extra = [Poly.const(1), x - lam - 1, x**2 + 1]
    factors, f, prev = [], Poly.const(1), 0
    for k in exps:
        f = f * Poly.linear(lam) ** (k - prev) * rng.choice(extra)
        prev = k
        factors.append(f)
    A = rand_unimodular(rng, m) @ diag_matrix(factors, m, n) @ rand_unimodular(rng, n)
    prescribed = sorted((k for k in exps if k > 0), reverse=True)
    return A, lam, prescribed, factors


def invertible_at(rng, n, lam):
    c = lam + rng.choice([-3, -1, 1, 2])
    return rand_unimodular(rng, n) @ diag_matrix([x - c] + [1] * (n - 1), n, n)


def criterion_7(count=100):
    rng = random.Random(SEED + 7)
    fail = {"orders": 0, "algebraic": 0, "transport": 0, "mapped": 0}
    for _ in range(count):
        A, lam, prescribed, factors = constructed_instance(rng)
        rs = maximal_set(A, lam)
        if rs.orders != prescribed or not rs.maximal:
            fail["orders"] += 1
        r = len(factors)
        alg = root_order(determinantal_divisors_oracle(A, r), lam)
        if sum(rs.orders) != alg:
            fail["algebraic"] += 1
        M, N = invertible_at(rng, A.rows, lam), invertible_at(rng, A.cols, lam).T
        B = M @ A @ N
        rs_B = maximal_set(B, lam)
        if rs_B.orders != prescribed:
            fail["transport"] += 1
        back = check_set(A, lam, [N.apply(v.r) for v in rs_B.vectors])
        if not back.maximal or sorted(back.orders, reverse=True) != prescribed:
            fail["mapped"] += 1
    ok = not any(fail.values())
    return report(7, ok, f"{count} constructed instances, failures={fail}")


# -- criterion 8 -------------------------------------------------------------

def criterion_8(count=50, N=16):
    rng = random.Random(SEED + 8)
    bad = skipped = 0
    for i in range(count):
        if i % 2:
            A, lam, _, _ = constructed_instance(rng)
        else:
            lam = rng.randint(-2, 2)
            A = rand_poly_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), deg=2)
        exact, _ = partial_multiplicities(A, lam)
        R = JetRing(lam, N)
        J = RingMatrix([[Jet.from_poly(e, lam, N) for e in A.row(k)] for k in range(A.rows)], R, A.cols)
        try:
            loc = local_smith_jet(J)
        except InsufficientTruncation:
            skipped += 1
            continue
        bad += loc.partial_multiplicities != exact or loc.rank != rank_over_fractions(A)
    return report(8, bad == 0, f"{count} polynomial matrices as jets (N={N}), mismatches={bad}, "
                               f"beyond truncation={skipped}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(criterion):
    assert criterion()


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
