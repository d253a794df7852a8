import random
from fractions import Fraction

import pytest

from polarcalc.chains import PolarChain, boundary, make_triple, point_term
from polarcalc.geometry import (
    INF,
    VarietyPoint,
    point_component,
    product_of_lines,
    proj_line,
)
from polarcalc.homotopy import (
    HomotopyError,
    cylinder_homotopy,
    section_pushforwards,
    verify_homotopy_identity,
)
from polarcalc.maps import VarietyMap
from polarcalc.parsing import parse_form
from polarcalc.polynomials import RationalFunction
from polarcalc.scalars import Scalar


def rng():
    return random.Random(0)


def weighted_point(line, value, weight):
    return PolarChain(line, [point_term(
        line, VarietyPoint.product_point([value]), Scalar.of(weight)
    )])


def section_chain(amb, src, g_rf, form, decl):
    coords = src.main_chart.coords
    m = VarietyMap(src, amb, amb.main_chart.id, {
        "t": RationalFunction.variable(coords, "t"),
        "z": g_rf,
    })
    return PolarChain(amb, [make_triple(src, m, form, decl, rng())])


def test_identity_for_weighted_point():
    line = proj_line("z")
    a = weighted_point(line, 2, 5)
    rep = verify_homotopy_identity(a, 0, rng())
    assert rep["zero"]
    assert rep["residual"].is_zero()


def test_point_at_basepoint_maps_to_zero():
    line = proj_line("z")
    a = weighted_point(line, 0, 3)
    cyl = cylinder_homotopy(a, 0, rng())
    assert cyl.chain.is_zero()
    rep = verify_homotopy_identity(a, 0, rng())
    assert rep["zero"]


def test_point_on_infinity_section():
    line = proj_line("z")
    a = PolarChain(line, [point_term(
        line, VarietyPoint.product_point([INF]), Scalar.of(2)
    )])
    rep = verify_homotopy_identity(a, 0, rng())
    assert rep["zero"]


def test_identity_for_diagonal_section_with_repair():
    amb = product_of_lines(["t", "z"])
    src = proj_line("t")
    coords = src.main_chart.coords
    form = parse_form("dlog(t/(t-1))", coords, src.main_chart.id)
    decl = [
        point_component(src, VarietyPoint.product_point([0])),
        point_component(src, VarietyPoint.product_point([1])),
    ]
    a = section_chain(amb, src, RationalFunction.variable(coords, "t"),
                      form, decl)
    cyl = cylinder_homotopy(a, 0, rng())
    assert any(r.get("repaired") for r in cyl.records)
    rep = verify_homotopy_identity(a, 0, rng())
    assert rep["zero"]


def test_identity_without_repair():
    amb = product_of_lines(["t", "z"])
    src = proj_line("t")
    coords = src.main_chart.coords
    form = parse_form("dlog((t-2)/(t-3))", coords, src.main_chart.id)
    decl = [
        point_component(src, VarietyPoint.product_point([2])),
        point_component(src, VarietyPoint.product_point([3])),
    ]
    a = section_chain(amb, src, RationalFunction.variable(coords, "t"),
                      form, decl)
    cyl = cylinder_homotopy(a, 0, rng())
    assert not any(r.get("repaired") for r in cyl.records)
    rep = verify_homotopy_identity(a, 0, rng())
    assert rep["zero"]


def test_section_pushforward_moves_points():
    line = proj_line("z")
    a = weighted_point(line, 7, 2)
    pushed = section_pushforwards(a, 4)
    lam, t = pushed.terms[0]
    assert t.map.image_point() == VarietyPoint.product_point([4])


def test_nonzero_basepoint():
    line = proj_line("z")
    a = weighted_point(line, Fraction(1, 2), Fraction(-3, 4))
    rep = verify_homotopy_identity(a, 2, rng())
    assert rep["zero"]
    assert rep["basepoint"] == "2"


def test_homotopy_requires_line_factor():
    from polarcalc.geometry import proj_plane

    plane = proj_plane("x", "y")
    a = PolarChain(plane, [point_term(
        plane, VarietyPoint.plane_point([1, 0, 0]), Scalar.one()
    )])
    with pytest.raises(HomotopyError):
        cylinder_homotopy(a, 0, rng())
