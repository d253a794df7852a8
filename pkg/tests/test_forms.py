import pytest

from polarcalc.forms import DifferentialForm, FormError, polar_profile
from polarcalc.parsing import parse_form
from polarcalc.polynomials import Polynomial, RationalFunction
from polarcalc.scalars import Scalar

COORDS = ("x", "y")


def dx():
    return DifferentialForm.d_coordinate("", COORDS, "x")


def dy():
    return DifferentialForm.d_coordinate("", COORDS, "y")


def rf(text):
    from polarcalc.parsing import parse_rational

    return parse_rational(text, COORDS)


def test_wedge_anticommutes():
    assert dx().wedge(dy()) == -(dy().wedge(dx()))
    assert dx().wedge(dx()).is_zero()


def test_exterior_derivative_squares_to_zero():
    f = DifferentialForm.function("", COORDS, rf("x^2*y + y/x"))
    df = f.exterior_derivative()
    assert df.exterior_derivative().is_zero()


def test_leibniz_on_products():
    f = rf("x*y")
    g = rf("x + 1")
    fg = DifferentialForm.function("", COORDS, f * g)
    lhs = fg.exterior_derivative()
    rhs = DifferentialForm.function("", COORDS, f).exterior_derivative().multiply(
        g
    ) + DifferentialForm.function("", COORDS, g).exterior_derivative().multiply(f)
    assert lhs == rhs


def test_contract_extracts_coefficient():
    omega = dx().wedge(dy()).multiply(rf("1/(x*y)"))
    iota = omega.contract("x", RationalFunction.constant(COORDS, Scalar.one()))
    assert iota == dy().multiply(rf("1/(x*y)"))


def test_pullback_respects_chain_rule():
    omega = dx().multiply(rf("1/x"))
    t = ("t",)
    mapping = {
        "x": RationalFunction.variable(t, "t") ** 2,
        "y": RationalFunction.variable(t, "t"),
    }
    pulled = omega.pullback(mapping, "", t)
    expected = parse_form("2 * dlog(t)", t)
    assert pulled == expected


def test_degree_mismatch_rejected():
    with pytest.raises(FormError):
        dx() + dx().wedge(dy())


def test_polar_profile_orders():
    omega = dx().wedge(dy()).multiply(rf("1/(x*y^2)"))
    xp = Polynomial.variable(COORDS, "x")
    yp = Polynomial.variable(COORDS, "y")
    profile = polar_profile(omega, [xp, yp])
    assert profile.order_of(xp) == -1
    assert profile.order_of(yp) == -2
    assert not profile.is_admissible()


def test_polar_profile_undeclared_pole():
    omega = dx().multiply(rf("1/(x*(y-1))"))
    xp = Polynomial.variable(COORDS, "x")
    profile = polar_profile(omega, [xp])
    assert not profile.is_admissible()
