import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eqthom.scalars import OMEGA_FLOAT, Scalar, numeric_value

half = Fraction(1, 2)


def test_half_powers_add():
    assert Scalar.omega(half) * Scalar.omega(half) == Scalar.omega(1)


def test_adding_minus_one_leaves_omega():
    assert (Scalar(1) + Scalar.omega(1)) + (-1) == Scalar.omega(1)


def test_inverse_power_cancels():
    assert Scalar.omega(-1) * Scalar.omega(1, 2) == 2


def test_numeric_values():
    # sqrt(2 pi) from the float library
    assert Scalar.omega(half).to_float() == pytest.approx(math.sqrt(2 * math.pi), rel=1e-15)
    assert numeric_value(Scalar(0), {"omega": OMEGA_FLOAT}) == 0.0
    assert Scalar(Fraction(3, 2)).to_float() == 1.5


def test_no_zero_terms_are_stored():
    a = Scalar.omega(1) - Scalar.omega(1)
    assert a.is_zero() and not a.terms


def test_sqrt_arithmetic():
    r2 = Scalar.sqrt(2)
    assert r2 * r2 == 2
    assert (1 / r2) * 2 == r2
    with pytest.raises(ValueError):
        Scalar.sqrt(4)


def test_bad_exponent():
    with pytest.raises(ValueError):
        Scalar.omega(Fraction(1, 3))


fractions = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))
exponents = st.integers(-4, 4).map(lambda k: Fraction(k, 2))
monomials = st.builds(lambda c, e: Scalar.omega(e, c), fractions, exponents)
scalars = st.lists(monomials, min_size=0, max_size=3).map(lambda xs: sum(xs, Scalar(0)))


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(monomials.filter(lambda x: not x.is_zero()), scalars)
def test_division_by_monomials(m, a):
    assert (a / m) * m == a


@given(scalars, scalars)
def test_numeric_value_is_a_homomorphism(a, b):
    fa, fb = a.to_float(), b.to_float()
    assert (a * b).to_float() == pytest.approx(fa * fb, rel=1e-9, abs=1e-9)
    assert (a + b).to_float() == pytest.approx(fa + fb, rel=1e-9, abs=1e-9)
