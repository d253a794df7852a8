from fractions import Fraction

import pytest

from polarcalc.scalars import Scalar, ScalarError


def test_rational_arithmetic_is_exact():
    a = Scalar.of(Fraction(1, 3))
    b = Scalar.of(Fraction(1, 6))
    assert a + b == Scalar.of(Fraction(1, 2))
    assert a - a == Scalar.zero()
    assert a * Scalar.of(3) == Scalar.one()


def test_tau_grading():
    t = Scalar.tau()
    assert t * t == Scalar.tau(2)
    assert (t * Scalar.of(2)) * t.inverse() == Scalar.of(2)
    mixed = Scalar.of(3) + Scalar.tau()
    assert mixed.tau_exponents() == [0, 1]
    assert mixed - Scalar.tau() == Scalar.of(3)


def test_division_and_powers():
    t = Scalar.tau()
    assert t / t == Scalar.one()
    assert t ** -2 == Scalar.tau(-2)
    assert Scalar.of(Fraction(2, 5)).inverse() == Scalar.of(Fraction(5, 2))


def test_non_monomial_division_fails():
    mixed = Scalar.one() + Scalar.tau()
    with pytest.raises(ScalarError):
        Scalar.one() / mixed


def test_rational_value_guards():
    with pytest.raises(ScalarError):
        Scalar.tau().rational_value()
    assert Scalar.of(Fraction(-7, 2)).rational_value() == Fraction(-7, 2)


def test_zero_division_refused():
    with pytest.raises(ScalarError):
        Scalar.one() / Scalar.zero()
