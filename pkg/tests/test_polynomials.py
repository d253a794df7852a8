from fractions import Fraction

import pytest

from polarcalc.polynomials import (
    POLE_FREE,
    Polynomial,
    PolynomialError,
    RationalFunction,
    poly_divides,
    poly_gcd,
    poly_resultant,
    rational_roots,
)
from polarcalc.scalars import Scalar

COORDS = ("x", "y")


def x():
    return Polynomial.variable(COORDS, "x")


def y():
    return Polynomial.variable(COORDS, "y")


def const(v):
    return Polynomial.constant(COORDS, Scalar.of(v))


def test_ring_arithmetic():
    p = (x() + y()) * (x() - y())
    assert p == x() * x() - y() * y()
    assert (p - p).is_zero()
    assert p.total_degree() == 2
    assert p.degree_in("x") == 2


def test_gcd_and_divisibility():
    p = x() * x() - y() * y()
    q = x() + y()
    g = poly_gcd(p, q)
    assert poly_divides(g, p) and poly_divides(g, q)
    assert not g.is_constant()
    assert poly_divides(q, p)
    assert not poly_divides(x(), p)


def test_rational_function_canonical_form():
    p = (x() + y()) * x()
    q = (x() + y()) * y()
    rf = RationalFunction(p, q)
    assert rf == RationalFunction(x(), y())
    assert RationalFunction(p, p) == RationalFunction.constant(
        COORDS, Scalar.one()
    )


def test_rf_zero_denominator_refused():
    with pytest.raises((PolynomialError, ZeroDivisionError)):
        RationalFunction(x(), Polynomial.zero(COORDS))


def test_ord_along():
    rf = RationalFunction(y(), x() * x())
    assert rf.ord_along(x()) == -2
    assert rf.ord_along(y()) == 1
    assert RationalFunction.from_poly(const(5)).ord_along(x()) == 0
    assert RationalFunction.constant(COORDS, Scalar.zero()).ord_along(
        x()
    ) == POLE_FREE


def test_evaluate_and_pole_detection():
    rf = RationalFunction(const(1), x() - const(1))
    assert rf.evaluate({"x": Fraction(3), "y": Fraction(0)}) == Scalar.of(
        Fraction(1, 2)
    )
    with pytest.raises(ZeroDivisionError):
        rf.evaluate({"x": Fraction(1), "y": Fraction(0)})


def test_rational_roots_with_multiplicity():
    coords = ("x",)

    def u(v=None):
        if v is None:
            return Polynomial.variable(coords, "x")
        return Polynomial.constant(coords, Scalar.of(v))

    # (x - 1/2)^2 (x + 3), all roots rational: fully split
    p = (u() - u(Fraction(1, 2))) * (u() - u(Fraction(1, 2))) * (u() + u(3))
    roots, split = rational_roots(p)
    assert split
    assert sorted(roots) == [(Fraction(-3), 1), (Fraction(1, 2), 2)]
    # x^2 - 2 has no rational roots
    roots, split = rational_roots(u() * u() - u(2))
    assert roots == [] and not split


def test_resultant_detects_common_factor():
    p = (x() - y()) * (x() + const(1))
    q = (x() - y()) * (x() + const(2))
    assert poly_resultant(p, q, "x").is_zero()
    r = poly_resultant(x() - y(), x() + y(), "x")
    assert not r.is_zero()


def test_substitute_with_explicit_targets():
    rf = RationalFunction(x() + y(), x())
    out = rf.substitute(
        {
            "x": RationalFunction.constant(("t",), Scalar.of(2)),
            "y": RationalFunction.variable(("t",), "t"),
        },
        ("t",),
    )
    t = Polynomial.variable(("t",), "t")
    two = Polynomial.constant(("t",), Scalar.of(2))
    assert out == RationalFunction(t + two, two)
