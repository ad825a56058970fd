import random
from fractions import Fraction

import pytest

from invbasis.matrix import RingMatrix
from invbasis.rings import QX, ZZ, Poly

x = Poly.x()


def rand_poly(rng, deg=3, coef=3, allow_zero=True):
    while True:
        d = rng.randint(0, deg)
        p = Poly(Fraction(rng.randint(-coef, coef)) for _ in range(d + 1))
        if allow_zero or not p.is_zero():
            return p


def rand_poly_matrix(rng, m, n, deg=3, coef=3, zero_prob=0.2):
    return RingMatrix(
        [[Poly() if rng.random() < zero_prob else rand_poly(rng, deg, coef) for _ in range(n)]
         for _ in range(m)], QX, n)


def rand_int_matrix(rng, m, n, bound=9):
    return RingMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], ZZ, n)


def rand_unimodular(rng, n, ring=QX, steps=None, deg=1):
    """Product of random elementary operations (determinant a unit)."""
    U = RingMatrix.identity(n, ring).tolist()
    if n == 1:
        u = Fraction(rng.choice([1, -1, 2, Fraction(1, 2)])) if ring is QX else rng.choice([1, -1])
        return RingMatrix([[ring.coerce(u)]], ring, 1)
    for _ in range(steps or 2 * n):
        i, j = rng.sample(range(n), 2)
        if ring is QX:
            c = rand_poly(rng, deg, 2)
        else:
            c = rng.randint(-2, 2)
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        if rng.random() < 0.3:
            U[i], U[j] = U[j], U[i]
    return RingMatrix(U, ring, n)


def diag_matrix(entries, m, n, ring=QX):
    rows = [[ring.zero() for _ in range(n)] for _ in range(m)]
    for i, e in enumerate(entries):
        rows[i][i] = ring.coerce(e)
    return RingMatrix(rows, ring, n)


def identity(n, ring=QX):
    return RingMatrix.identity(n, ring)


@pytest.fixture
def rng():
    return random.Random(20261016)
