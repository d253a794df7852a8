import random
from fractions import Fraction

import pytest

from polarcalc.geometry import (
    INF,
    VarietyPoint,
    product_of_lines,
    proj_line,
    proj_plane,
)
from polarcalc.maps import MapError, VarietyMap
from polarcalc.polynomials import RationalFunction
from polarcalc.scalars import Scalar


def rf_var(coords, name):
    return RationalFunction.variable(coords, name)


def test_identity_and_equality():
    line = proj_line("z")
    m = VarietyMap.identity(line)
    assert m == VarietyMap.identity(line)
    assert m.compose(m) == m


def test_constant_map_is_constant():
    line = proj_line("z")
    pt = VarietyPoint.product_point([Fraction(3, 2)])
    m = VarietyMap.constant(line, line, pt)
    assert m.is_constant()
    assert m.jacobian_max_rank(random.Random(0)) == 0


def test_image_point_of_point_source():
    from polarcalc.geometry import point_variety

    line = proj_line("z")
    pt = VarietyPoint.product_point([Fraction(3, 2)])
    m = VarietyMap.constant(point_variety(), line, pt)
    assert m.image_point() == pt


def test_squaring_map_composition():
    line = proj_line("z")
    coords = line.main_chart.coords
    sq = VarietyMap(line, line, line.main_chart.id, {
        "z": rf_var(coords, "z") ** 2
    })
    quad = sq.compose(sq)
    assert quad.formulas_on(line.main_chart.id)["z"] == rf_var(coords, "z") ** 4


def test_retarget_through_charts():
    line = proj_line("z")
    coords = line.main_chart.coords
    sq = VarietyMap(line, line, line.main_chart.id, {
        "z": rf_var(coords, "z") ** 2
    })
    other = [ch.id for ch in line.charts if ch.id != line.main_chart.id][0]
    fs = sq.formulas_on(other)
    assert fs["z_"] == RationalFunction.constant(coords, Scalar.one()) / (
        rf_var(coords, "z") ** 2
    )


def test_section_into_product():
    line = proj_line("t")
    prod = product_of_lines(["t", "z"])
    coords = line.main_chart.coords
    m = VarietyMap(line, prod, prod.main_chart.id, {
        "t": rf_var(coords, "t"),
        "z": rf_var(coords, "t") * RationalFunction.constant(coords, Scalar.of(2)),
    })
    assert not m.is_constant()
    assert m.jacobian_max_rank(random.Random(0)) == 1


def test_jacobian_rank_of_constant_is_zero():
    line = proj_line("z")
    m = VarietyMap.constant(line, line, VarietyPoint.product_point([1]))
    assert m.jacobian_max_rank(random.Random(0)) == 0


def test_dimension_mismatch_rejected():
    line = proj_line("z")
    plane = proj_plane("x", "y")
    coords = line.main_chart.coords
    with pytest.raises(MapError):
        VarietyMap(line, plane, plane.main_chart.id, {
            "x": rf_var(coords, "z"),
        })


def test_constant_map_at_infinity():
    from polarcalc.geometry import point_variety

    line = proj_line("z")
    pt = VarietyPoint.product_point([INF])
    m = VarietyMap.constant(point_variety(), line, pt)
    assert m.image_point() == pt
