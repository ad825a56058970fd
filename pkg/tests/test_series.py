from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from invbasis.errors import DomainError, NotAUnitError
from invbasis.rings import Poly
from invbasis.series import (BELOW_TRUNCATION, KNOWN_ZERO, Finite, Jet, builtin_jet, jet_arith,
                             jet_div_unit, order_of)

Z = sympy.Symbol("z")


def sympy_jet(expr, N, point=0):
    """Oracle: Taylor coefficients from sympy's series expansion."""
    s = sympy.series(expr, Z, point, N).removeO()
    poly = sympy.Poly(sympy.expand(s.subs(Z, Z + point)), Z) if point else sympy.Poly(s, Z)
    coeffs = [Fraction(0)] * N
    for (k,), c in poly.terms():
        coeffs[k] = Fraction(int(sympy.numer(c)), int(sympy.denom(c)))
    return coeffs


def jet(name, scale=1, N=16):
    return builtin_jet(name, scale, 0, N)


def test_exp_squared():
    e = jet("exp", 1, 4)
    assert list((e * e).coefficients) == [1, 2, 2, Fraction(4, 3)]


def test_additive_identity():
    a = jet("sin", 1, 5)
    assert a + Jet.zero(0, 5) == a
    assert Jet.zero(0, 5) + a == a


def test_sin_squared_matches_oracle():
    s = jet("sin", 1, 6)
    expected = sympy_jet(sympy.sin(Z) ** 2, 6)
    assert expected == [0, 0, 1, 0, Fraction(-1, 3), 0]
    assert list((s * s).coefficients) == expected


def test_jet_arith_dispatch_and_mismatch():
    a, b = jet("exp", 1, 4), jet("cos", 1, 4)
    assert jet_arith(a, b, "sub") == a - b
    with pytest.raises(DomainError):
        jet_arith(a, jet("exp", 1, 5), "add")
    with pytest.raises(DomainError):
        a + builtin_jet("poly", 1, 1, 4)


def test_known_zero_propagation():
    z = Jet.zero(0, 4)
    assert (z * jet("exp", 1, 4)).known_zero
    assert order_of(z) == KNOWN_ZERO


def test_div_unit_examples():
    u = jet("exp", 1, 8)
    assert jet_div_unit(u, u) == Jet.const(1, 0, 8)
    zj = builtin_jet("poly", 1, 0, 8)
    q = jet_div_unit(zj, u)
    assert list(q.coefficients) == sympy_jet(Z * sympy.exp(-Z), 8)
    assert list(q.coefficients[:4]) == [0, 1, -1, Fraction(1, 2)]
    assert jet_div_unit(Jet.zero(0, 8), u).known_zero
    with pytest.raises(NotAUnitError):
        jet_div_unit(u, zj)


def test_order_examples():
    assert order_of(builtin_jet("poly", 1, 0, 16) * jet("exp", 2)) == Finite(1)
    assert order_of(jet("exp") * jet("sin") ** 2) == Finite(2)
    assert order_of(Jet([0, 0, 0], 0, 3)) == BELOW_TRUNCATION


@pytest.mark.parametrize("name,scale,N,expected", [
    ("exp", 2, 4, [1, 2, 2, Fraction(4, 3)]),
    ("sin", 1, 5, [0, 1, 0, Fraction(-1, 6), 0]),
    ("sinh", 1, 5, [0, 1, 0, Fraction(1, 6), 0]),
])
def test_builtin_examples(name, scale, N, expected):
    assert list(builtin_jet(name, scale, 0, N).coefficients) == expected


@pytest.mark.parametrize("name,fn", [
    ("exp", sympy.exp), ("sin", sympy.sin), ("cos", sympy.cos),
    ("sinh", sympy.sinh), ("cosh", sympy.cosh),
])
@pytest.mark.parametrize("scale", [1, -2, Fraction(1, 3)])
def test_builtins_match_oracle(name, fn, scale):
    s = sympy.Rational(scale.numerator, scale.denominator) if isinstance(scale, Fraction) else scale
    assert list(builtin_jet(name, scale, 0, 10).coefficients) == sympy_jet(fn(s * Z), 10)


def test_builtin_errors():
    with pytest.raises(DomainError):
        builtin_jet("tan", 1, 0, 4)
    with pytest.raises(DomainError):
        builtin_jet("sin", 1, 1, 4)
    # exp(0*z) is rational anywhere
    assert builtin_jet("exp", 0, 3, 4) == Jet.const(1, 3, 4)


def test_poly_builtin_recenters():
    p = Poly([1, 0, 2])  # 1 + 2x^2
    j = builtin_jet("poly", 1, 3, 4, poly=p)
    assert list(j.coefficients) == sympy_jet(1 + 2 * Z**2, 4, point=3)


coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)
N_small = 6
jets = st.lists(coef, min_size=N_small, max_size=N_small).map(lambda c: Jet(c, 0, N_small))
units = jets.filter(lambda j: j.coefficients[0] != 0)


@settings(max_examples=50)
@given(jets, jets, jets)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@settings(max_examples=50)
@given(jets, units)
def test_div_unit_inverts_mul(a, u):
    assert jet_div_unit(a * u, u) == a


@settings(max_examples=50)
@given(jets, jets)
def test_order_is_additive(a, b):
    oa, ob = order_of(a), order_of(b)
    if oa.is_finite and ob.is_finite and oa.value + ob.value < N_small:
        assert order_of(a * b) == Finite(oa.value + ob.value)


@settings(max_examples=30)
@given(st.lists(coef, min_size=4, max_size=4), st.lists(coef, min_size=4, max_size=4))
def test_truncation_prefix_consistency(ca, cb):
    small = (Jet(ca, 0, 4) * Jet(cb, 0, 4) + jet("exp", 1, 4)) * jet("sin", 1, 4)
    big = (Jet(ca, 0, 9) * Jet(cb, 0, 9) + jet("exp", 1, 9)) * jet("sin", 1, 9)
    assert big.coefficients[:4] == small.coefficients
