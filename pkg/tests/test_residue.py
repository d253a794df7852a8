"""Residue extraction against independently derived values.

The expected numbers are frozen from hand partial-fraction decompositions:
  1/(z(z-1)(z-2)) = (1/2)/z - 1/(z-1) + (1/2)/(z-2)
and from the classical minus-one residue at infinity of dz/z.
"""

from fractions import Fraction

import pytest

from polarcalc.geometry import (
    INF,
    DivisorComponent,
    VarietyPoint,
    plane_curve,
    point_component,
    product_of_lines,
    proj_line,
    proj_plane,
)
from polarcalc.parsing import parse_form, parse_polynomial, parse_rational
from polarcalc.polynomials import Polynomial, RationalFunction
from polarcalc.residue import (
    ResidueError,
    iterated_residue,
    poincare_residue,
    total_residue_p1,
)
from polarcalc.scalars import Scalar


def line_z():
    return proj_line("z")


def comp_at(line, value):
    return point_component(line, VarietyPoint.product_point([value]))


def test_residue_of_dlog_at_origin():
    line = line_z()
    omega = parse_form("dlog(z)", ("z",), line.main_chart.id)
    res = poincare_residue(omega, comp_at(line, 0), line)
    assert res.value == Scalar.one()


def test_partial_fraction_residues():
    line = line_z()
    omega = parse_form("d(z)/(z*(z-1)*(z-2))", ("z",), line.main_chart.id)
    expected = {
        Fraction(0): Scalar.of(Fraction(1, 2)),
        Fraction(1): Scalar.of(-1),
        Fraction(2): Scalar.of(Fraction(1, 2)),
    }
    for value, want in expected.items():
        res = poincare_residue(omega, comp_at(line, value), line)
        assert res.value == want


def test_residue_at_infinity():
    line = line_z()
    omega = parse_form("dlog(z)", ("z",), line.main_chart.id)
    res = poincare_residue(
        omega, point_component(line, VarietyPoint.product_point([INF])), line
    )
    assert res.value == Scalar.of(-1)


def test_second_order_pole_rejected():
    line = line_z()
    omega = parse_form("d(z)/z^2", ("z",), line.main_chart.id)
    with pytest.raises(ResidueError):
        poincare_residue(omega, comp_at(line, 0), line)


def test_total_residue_vanishes():
    line = line_z()
    omega = parse_form(
        "(z^2 + 3) * d(z) / ((z-1)*(z+1)*(z-2))", ("z",), line.main_chart.id
    )
    total, breakdown = total_residue_p1(omega, line)
    assert total.is_zero()
    # three finite poles plus the pole at infinity (deg num = deg den - 1)
    assert len(breakdown) == 4


def test_irrational_pole_rejected():
    line = line_z()
    omega = parse_form("d(z)/(z^2 - 2)", ("z",), line.main_chart.id)
    with pytest.raises(ResidueError):
        total_residue_p1(omega, line)


def test_residue_on_product_is_a_form():
    prod = product_of_lines(["z1", "z2"])
    coords = prod.main_chart.coords
    omega = parse_form(
        "dlog(z1) wedge dlog(z2)", coords, prod.main_chart.id
    )
    comp = DivisorComponent.from_chart_poly(
        prod, prod.main_chart.id, parse_polynomial("z1", coords)
    )
    res = poincare_residue(omega, comp, prod)
    assert res.kind == "line"
    expected = parse_form("dlog(z2)", ("z2",), res.form.chart)
    assert res.form == expected


def test_iterated_residue_anticommutes():
    prod = product_of_lines(["z1", "z2"])
    coords = prod.main_chart.coords
    omega = parse_form(
        "(z1 + 2*z2 + 3) * d(z1) wedge d(z2) / (z1 * z2)",
        coords, prod.main_chart.id,
    )
    c1 = DivisorComponent.from_chart_poly(
        prod, prod.main_chart.id, parse_polynomial("z1", coords)
    )
    c2 = DivisorComponent.from_chart_poly(
        prod, prod.main_chart.id, parse_polynomial("z2", coords)
    )
    fwd = iterated_residue(omega, c1, c2, prod)
    bwd = iterated_residue(omega, c2, c1, prod)
    # numerator at the origin is 3, so the residues are +3 and -3
    assert fwd.value == Scalar.of(3)
    assert bwd.value == Scalar.of(-3)


def test_direction_independence():
    plane = proj_plane("x", "y")
    coords = plane.main_chart.coords
    p = parse_polynomial("x + y - 1", coords)
    comp = DivisorComponent.from_chart_poly(plane, "A0", p)
    omega = parse_form(
        "d(x) wedge d(y) / (x + y - 1)", coords, "A0"
    )
    res_x = poincare_residue(omega, comp, plane, direction="x")
    res_y = poincare_residue(omega, comp, plane, direction="y")
    assert res_x.form == res_y.form


def test_elliptic_curve_residue():
    plane = proj_plane("x", "y")
    coords = plane.main_chart.coords
    p = parse_polynomial("y^2 - x^3 - 2*x - 3", coords)
    comp = DivisorComponent.from_chart_poly(plane, "A0", p)
    omega = parse_form(
        "d(x) wedge d(y) / (y^2 - x^3 - 2*x - 3)", coords, "A0"
    )
    res = poincare_residue(omega, comp, plane)
    assert res.kind == "curve"
    # -dx/(2y) in the curve ring: y-numerator over y^2 = x^3 + 2x + 3
    g = parse_polynomial("x^3 + 2*x + 3", coords)
    num = Polynomial.variable(coords, "y").scale(Scalar.of(Fraction(-1, 2)))
    expected = RationalFunction(num, g)
    assert res.form.components[(0,)] == expected
