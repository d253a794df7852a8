import random
from fractions import Fraction

import pytest

from polarcalc.chains import (
    ChainError,
    PolarChain,
    boundary,
    boundary_witness_p1,
    check_d_squared,
    is_cycle,
    make_triple,
    normalize_chain,
    point_term,
    reduce_relative,
    support,
    term_weight,
)
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
from polarcalc.maps import VarietyMap
from polarcalc.parsing import parse_form, parse_polynomial, parse_rational
from polarcalc.polynomials import RationalFunction
from polarcalc.scalars import Scalar


def rng():
    return random.Random(0)


def p1_comp(line, value):
    if value == INF:
        return point_component(line, VarietyPoint.product_point([INF]))
    return point_component(line, VarietyPoint.product_point([value]))


def dlog_chain(line, *values):
    """(P1, id, dlog((z-v1)...) style chain with declared poles."""
    coords = line.main_chart.coords
    text = " + ".join("dlog(z - %s)" % v if v else "dlog(z)" for v in values)
    form = parse_form(text, coords, line.main_chart.id)
    decl = [p1_comp(line, Fraction(v)) for v in values] + [p1_comp(line, INF)]
    t = make_triple(line, VarietyMap.identity(line), form, decl, rng())
    return PolarChain(line, [t])


def test_make_triple_rejects_undeclared_pole():
    line = proj_line("z")
    form = parse_form("dlog(z)", ("z",), line.main_chart.id)
    with pytest.raises(ChainError):
        # dz/z also has a pole at infinity
        make_triple(line, VarietyMap.identity(line), form,
                    [p1_comp(line, 0)], rng())


def test_make_triple_rejects_higher_order_pole():
    line = proj_line("z")
    form = parse_form("d(z)/z^2", ("z",), line.main_chart.id)
    with pytest.raises(ChainError):
        make_triple(line, VarietyMap.identity(line), form,
                    [p1_comp(line, 0), p1_comp(line, INF)], rng())


def test_boundary_of_dlog_pair():
    line = proj_line("z")
    coords = line.main_chart.coords
    form = parse_form("dlog(z/(z-1))", coords, line.main_chart.id)
    t = make_triple(line, VarietyMap.identity(line), form,
                    [p1_comp(line, 0), p1_comp(line, 1)], rng())
    b = boundary(PolarChain(line, [t]), rng()).chain
    expected = normalize_chain(PolarChain(line, [
        point_term(line, VarietyPoint.product_point([0]), Scalar.tau()),
        point_term(line, VarietyPoint.product_point([1]), -Scalar.tau()),
    ]), rng())
    assert b.key() == expected.key()


def test_p2_flagship_d_squared():
    plane = proj_plane("x", "y")
    coords = plane.main_chart.coords
    form = parse_form("d(x) wedge d(y) / (x*y)", coords, "A0")
    decl = [
        DivisorComponent.from_chart_poly(plane, "A0", parse_polynomial("x", coords)),
        DivisorComponent.from_chart_poly(plane, "A0", parse_polynomial("y", coords)),
        DivisorComponent.from_chart_poly(
            plane, "A1",
            parse_polynomial("x1", plane.chart("A1").coords),
            "{line at infinity}",
        ),
    ]
    t = make_triple(plane, VarietyMap.identity(plane), form, decl, rng())
    rep = check_d_squared(PolarChain(plane, [t]), rng())
    assert rep["zero"]
    assert len(rep["boundary"].terms) == 3
    # three corner points, each cancelling in pairs
    assert len(rep["cancellations"]) == 3
    for entry in rep["cancellations"]:
        assert entry["total"] == "0"
        assert len(entry["weights"]) == 2


def test_product_d_squared():
    prod = product_of_lines(["z1", "z2"])
    coords = prod.main_chart.coords
    form = parse_form("dlog(z1) wedge dlog(z2)", coords, prod.main_chart.id)
    decl = []
    for var in ("z1", "z2"):
        decl.append(DivisorComponent.from_chart_poly(
            prod, prod.main_chart.id, parse_polynomial(var, coords)))
    for ch in prod.charts:
        for inv in ("z1_", "z2_"):
            if inv in ch.coords and not any(
                c.visible_on(ch.id) and c.poly_on(ch.id)
                == parse_polynomial(inv, ch.coords) for c in decl
            ):
                decl.append(DivisorComponent.from_chart_poly(
                    prod, ch.id, parse_polynomial(inv, ch.coords),
                    "{%s = inf}" % inv[:-1]))
                break
    t = make_triple(prod, VarietyMap.identity(prod), form, decl, rng())
    rep = check_d_squared(PolarChain(prod, [t]), rng())
    assert rep["zero"]
    assert len(rep["boundary"].terms) == 4


def test_r2_squaring_pair_cancels():
    line = proj_line("z")
    coords = line.main_chart.coords
    form = parse_form("dlog(z)", coords, line.main_chart.id)
    decl = [p1_comp(line, 0), p1_comp(line, INF)]
    sq = VarietyMap(line, line, line.main_chart.id, {
        "z": RationalFunction.variable(coords, "z") ** 2
    })
    t_sq = make_triple(line, sq, form, decl, rng())
    t_id = make_triple(line, VarietyMap.identity(line), form, decl, rng())
    pair = PolarChain(line, [(Scalar.one(), t_sq), (-Scalar.one(), t_id)])
    assert normalize_chain(pair, rng()).is_zero()


def test_r3_prunes_constant_maps():
    line = proj_line("z")
    form = parse_form("dlog(z)", ("z",), line.main_chart.id)
    decl = [p1_comp(line, 0), p1_comp(line, INF)]
    const = VarietyMap.constant(line, line, VarietyPoint.product_point([5]))
    t = make_triple(line, const, form, decl, rng())
    assert normalize_chain(PolarChain(line, [t]), rng()).is_zero()


def test_r1_scalar_folding_merges_terms():
    line = proj_line("z")
    c = dlog_chain(line, 0)
    doubled = c + c
    n = normalize_chain(doubled, rng())
    assert len(n.terms) == 1
    lam, t = n.terms[0]
    assert lam == Scalar.one()


def test_support_reports_images():
    line = proj_line("z")
    c = dlog_chain(line, 0)
    items = support(c, rng())
    assert items == ["P1(z)"]


def test_relative_cycle():
    line = proj_line("z")
    coords = line.main_chart.coords
    form = parse_form("dlog(z/(z-1))", coords, line.main_chart.id)
    t = make_triple(line, VarietyMap.identity(line), form,
                    [p1_comp(line, 0), p1_comp(line, 1)], rng())
    c = PolarChain(line, [t])
    flag, residual = is_cycle(c, rng())
    assert not flag
    zone = [VarietyPoint.product_point([0]), VarietyPoint.product_point([1])]
    rel = reduce_relative(c, zone, rng())
    flag, residual = is_cycle(rel, rng())
    # the raw boundary is still reported, but it sits entirely inside Z
    assert flag and not residual.is_zero()


def test_witness_refuses_nonzero_total():
    with pytest.raises(ChainError):
        boundary_witness_p1([(Fraction(0), Scalar.one()),
                             (Fraction(1), Scalar.of(2))])


def test_witness_round_trip():
    line = proj_line("z")
    cycle = [
        (Fraction(0), Scalar.of(2)),
        (Fraction(1), Scalar.of(-3)),
        (Fraction(-2), Scalar.one()),
    ]
    w = boundary_witness_p1(cycle, line, rng())
    b = boundary(w, rng()).chain
    expected = normalize_chain(PolarChain(line, [
        point_term(line, VarietyPoint.product_point([v]), s)
        for v, s in cycle
    ]), rng())
    assert b.key() == expected.key()


def test_curve_source_requires_holomorphic_form():
    curve = plane_curve(parse_polynomial("y^2 - x^3 - 2*x - 3", ("x", "y")))
    plane = proj_plane("x", "y")
    coords = curve.main_chart.coords
    embed = VarietyMap(curve, plane, "A0", {
        "x": RationalFunction.variable(coords, "x"),
        "y": RationalFunction.variable(coords, "y"),
    })
    # -dx/(2y) is holomorphic on the curve (adjunction): accepted
    good = parse_form("-d(x) / (2*y)", coords, curve.main_chart.id)
    t = make_triple(curve, embed, good, [], rng())
    assert t.degree == 1
    # dx/x has genuine poles on the curve: rejected
    bad = parse_form("d(x)/x", coords, curve.main_chart.id)
    with pytest.raises(ChainError):
        make_triple(curve, embed, bad, [], rng())


def test_boundary_skips_curve_triples():
    curve = plane_curve(parse_polynomial("y^2 - x^3 - 2*x - 3", ("x", "y")))
    plane = proj_plane("x", "y")
    coords = curve.main_chart.coords
    embed = VarietyMap(curve, plane, "A0", {
        "x": RationalFunction.variable(coords, "x"),
        "y": RationalFunction.variable(coords, "y"),
    })
    form = parse_form("-d(x) / (2*y)", coords, curve.main_chart.id)
    t = make_triple(curve, embed, form, [], rng())
    c = PolarChain(plane, [t])
    flag, residual = is_cycle(c, rng())
    assert flag and residual.is_zero()
