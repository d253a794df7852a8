"""Poincare residues of simple-pole forms onto divisor components.

The extraction formula is: pick a coordinate direction j whose partial
of the defining polynomial is not divisible by it, contract p*omega with
(1/d_j p) d_j, and restrict to {p = 0}.  Restriction is realized by
parametrization substitution for rational loci, by curve-ring reduction
for smooth plane curves, and by evaluation for points.
"""

from fractions import Fraction

from .forms import DifferentialForm, FormError
from .geometry import (
    INF,
    CatalogVariety,
    DivisorComponent,
    GeometryError,
    VarietyPoint,
    curve_reduce,
    plane_curve,
    point_component,
    point_from_chart,
    point_variety,
    proj_line,
)
from .maps import VarietyMap
from .polynomials import (
    POLE_FREE,
    Polynomial,
    PolynomialError,
    RationalFunction,
    poly_divides,
    rational_roots,
)
from .scalars import Scalar


class ResidueError(ValueError):
    pass


class ResidueResult:
    """A residue together with where it lives.

    kind is "scalar" (point target), "line" (parametrized rational
    locus, target a projective line), or "curve" (plane-curve target).
    `embed` maps the target into the ambient variety.
    """

    __slots__ = ("kind", "target", "embed", "form")

    def __init__(self, kind, target, embed, form):
        self.kind = kind
        self.target = target
        self.embed = embed
        self.form = form

    @property
    def value(self) -> Scalar:
        """The Scalar carried by a point residue."""
        if self.kind != "scalar":
            raise ResidueError("residue is not a point residue")
        if self.form.is_zero():
            return Scalar.zero()
        return self.form.components[()].constant_value()

    def __repr__(self):
        return "ResidueResult(%s, %s)" % (self.kind, self.form)


# ---------------------------------------------------------------------------
# component classification
# ---------------------------------------------------------------------------


def _linear_root(p: Polynomial, coord) -> Fraction:
    """Root of a polynomial that is degree 1 in its single variable."""
    a = Scalar.zero()
    b = Scalar.zero()
    for e, c in p.terms.items():
        k = e[p.variables.index(coord)]
        if k == 1:
            a = a + c
        elif k == 0:
            b = b + c
        else:
            raise ResidueError("component polynomial is not linear")
    return -b.rational_value() / a.rational_value()


def classify_component(comp: DivisorComponent, variety: CatalogVariety):
    """How a component can be restricted to.

    Returns ("point", chart, root) on 1-dimensional varieties,
    ("graph", chart, solve, param, value_rf) for loci linear in one
    chart coordinate, or ("curve", poly_on_A0) for plane curves.
    """
    if variety.dimension == 1:
        if variety.kind != "P1":
            raise ResidueError(
                "unsupported divisor component on %s" % variety.name
            )
        for ch in variety.charts:
            p = comp.poly_on(ch.id)
            if p.is_constant():
                continue
            coord = ch.coords[0]
            if p.degree_in(coord) == 1:
                return ("point", ch, _linear_root(p, coord))
        raise ResidueError(
            "component %s has no rational point representation" % comp.label
        )
    if variety.dimension == 2:
        for ch in variety.charts:
            p = comp.poly_on(ch.id)
            if p.is_constant():
                continue
            solve = None
            for coord in reversed(ch.coords):
                if p.degree_in(coord) == 1:
                    solve = coord
                    break
            if solve is None:
                continue
            param = next(c for c in ch.coords if c != solve)
            a = Polynomial.zero(ch.coords)
            b = Polynomial.zero(ch.coords)
            for e, c in p.terms.items():
                k = e[ch.coords.index(solve)]
                t = Polynomial(ch.coords, {e: c})
                if k == 1:
                    a = a + _drop_exponent(t, solve)
                else:
                    b = b + t
            value = RationalFunction(-b, a)
            return ("graph", ch, solve, param, value)
        if variety.kind == "P2":
            p = comp.poly_on("A0")
            if p.is_constant():
                raise ResidueError(
                    "component %s invisible on the affine chart" % comp.label
                )
            return ("curve", p)
        raise ResidueError(
            "unsupported divisor component %s on %s" % (comp.label, variety.name)
        )
    raise ResidueError("residues only implemented up to dimension 2")


def _drop_exponent(p: Polynomial, coord) -> Polynomial:
    i = p.variables.index(coord)
    out = {}
    for e, c in p.terms.items():
        ne = list(e)
        ne[i] -= 1
        out[tuple(ne)] = c
    return Polynomial(p.variables, out)


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def _pole_order(form: DifferentialForm, p: Polynomial):
    worst = POLE_FREE
    for _, rf in form.sorted_components():
        o = rf.ord_along(p)
        if o < worst:
            worst = o
    return worst


def _choose_direction(p: Polynomial, coords, direction=None):
    if direction is not None:
        d = p.differentiate(direction)
        if d.is_zero() or poly_divides(p, d):
            raise ResidueError("direction %s is not admissible" % direction)
        return direction
    for coord in coords:
        d = p.differentiate(coord)
        if d.is_zero():
            continue
        if not poly_divides(p, d):
            return coord
    raise ResidueError("no admissible direction for %s" % p)


def _contracted(form: DifferentialForm, p: Polynomial, coords, direction):
    """The pre-restriction form: contraction of p*omega."""
    j = _choose_direction(p, coords, direction)
    dp = p.differentiate(j)
    scale = RationalFunction.from_poly(Polynomial.constant(p.variables, Scalar.one())) / RationalFunction.from_poly(dp)
    return form.multiply(RationalFunction.from_poly(p)).contract(j, scale)


def poincare_residue(
    omega: DifferentialForm,
    comp: DivisorComponent,
    variety: CatalogVariety,
    direction=None,
) -> ResidueResult:
    """Residue of a simple-pole form along one divisor component."""
    shape = classify_component(comp, variety)

    if shape[0] == "point":
        _, chart, root = shape
        form = variety.transition_form(omega, chart.id) if omega.chart != chart.id else omega
        p = comp.poly_on(chart.id)
        _require_simple(form, p, comp)
        rho = _contracted(form, p, chart.coords, direction)
        coord = chart.coords[0]
        try:
            value = rho.components.get((), _zero_rf(chart.coords)).evaluate({coord: root})
        except ZeroDivisionError:
            raise ResidueError(
                "residual denominator vanishes at the pole of %s" % comp.label
            )
        target = point_variety()
        pt = point_from_chart(variety, chart.id, {coord: root})
        embed = VarietyMap.constant(target, variety, pt)
        rf = RationalFunction.constant((), value)
        return ResidueResult("scalar", target, embed, DifferentialForm.function("pt", (), rf))

    if shape[0] == "graph":
        _, chart, solve, param, value = shape
        form = variety.transition_form(omega, chart.id) if omega.chart != chart.id else omega
        p = comp.poly_on(chart.id)
        _require_simple(form, p, comp)
        rho = _contracted(form, p, chart.coords, direction)
        base = param.rstrip("_") or param
        target = proj_line(base)
        t = RationalFunction.variable((base,), base)
        mapping = {param: t, solve: value.substitute({param: t}, (base,))}
        try:
            restricted = rho.pullback(mapping, target.main_chart.id, (base,))
        except ZeroDivisionError:
            raise ResidueError(
                "residual denominator vanishes along %s" % comp.label
            )
        embed = VarietyMap(target, variety, chart.id, mapping)
        return ResidueResult("line", target, embed, restricted)

    # plane-curve target
    _, p = shape
    chart = variety.chart("A0")
    form = variety.transition_form(omega, chart.id) if omega.chart != chart.id else omega
    _require_simple(form, p, comp)
    try:
        curve = plane_curve(p)
    except GeometryError as e:
        raise ResidueError("residue onto a singular component: %s" % e)
    rho = _contracted(form, p, chart.coords, direction)
    x, y = chart.coords
    a = rho.components.get((0,), _zero_rf(chart.coords))
    b = rho.components.get((1,), _zero_rf(chart.coords))
    px = RationalFunction.from_poly(p.differentiate(x))
    py = RationalFunction.from_poly(p.differentiate(y))
    coeff = a - b * px / py
    try:
        reduced = curve_reduce(coeff, curve)
    except ZeroDivisionError:
        raise ResidueError("residual denominator vanishes along %s" % comp.label)
    cform = DifferentialForm(
        curve.main_chart.id, chart.coords, 1, {(0,): reduced.as_rf()}
    )
    embed = VarietyMap(curve, variety, chart.id, {
        x: RationalFunction.variable(chart.coords, x),
        y: RationalFunction.variable(chart.coords, y),
    })
    return ResidueResult("curve", curve, embed, cform)


def _zero_rf(coords) -> RationalFunction:
    return RationalFunction.constant(coords, Scalar.zero())


def _require_simple(form: DifferentialForm, p: Polynomial, comp):
    worst = _pole_order(form, p)
    if worst < -1:
        raise ResidueError(
            "pole of order %d along %s; only simple poles supported"
            % (-worst, comp.label)
        )


# ---------------------------------------------------------------------------
# iterated residues and the P1 residue theorem
# ---------------------------------------------------------------------------


def induced_component(comp: DivisorComponent, inner: ResidueResult) -> DivisorComponent:
    """The trace of an ambient component on an inner residue target."""
    if inner.kind != "line":
        raise ResidueError("iterated residues need a rational first target")
    chart_id = inner.embed.target_chart
    poly = comp.poly_on(chart_id)
    if poly.is_constant():
        raise ResidueError(
            "component %s invisible on the restriction chart" % comp.label
        )
    coords = inner.target.main_chart.coords
    rf = poly.substitute(inner.embed.formulas, coords)
    num = rf.num
    if num.is_constant():
        raise ResidueError(
            "components %s and the restriction locus do not meet in the chart"
            % comp.label
        )
    return DivisorComponent.from_chart_poly(
        inner.target, inner.target.main_chart.id, num, comp.label
    )


def iterated_residue(
    omega: DifferentialForm,
    p: DivisorComponent,
    q: DivisorComponent,
    variety: CatalogVariety,
) -> ResidueResult:
    """res_q(res_p(omega)), re-profiling the inner result along p meets q."""
    inner = poincare_residue(omega, p, variety)
    if inner.kind == "scalar":
        raise ResidueError("iterated residue needs a positive-dimensional target")
    if inner.kind == "curve":
        raise ResidueError("iterated residues onto curve targets not supported")
    comp2 = induced_component(q, inner)
    outer = poincare_residue(inner.form, comp2, inner.target)
    embed = inner.embed.compose(outer.embed)
    return ResidueResult(outer.kind, outer.target, embed, outer.form)


def p1_pole_points(omega: DifferentialForm, variety: CatalogVariety):
    """Rational pole locations of a 1-form on P1, both charts inspected."""
    if variety.kind != "P1":
        raise ResidueError("expected a projective line")
    points = []
    main = variety.main_chart
    form = omega if omega.chart == main.id else variety.transition_form(omega, main.id)
    coeff = form.components.get((0,), _zero_rf(main.coords))
    den = coeff.den
    if not den.is_constant():
        roots, split = rational_roots(den)
        if not split:
            raise ResidueError("irrational pole location in %s" % den)
        for r, _mult in roots:
            points.append(VarietyPoint.product_point([r]))
    inf_chart = variety.charts[1]
    inf_form = variety.transition_form(omega, inf_chart.id)
    inf_coeff = inf_form.components.get((0,), _zero_rf(inf_chart.coords))
    if inf_coeff.ord_along(
        Polynomial.variable(inf_chart.coords, inf_chart.coords[0])
    ) < 0:
        points.append(VarietyPoint.product_point([INF]))
    return points


def total_residue_p1(omega: DifferentialForm, variety: CatalogVariety):
    """Sum of the residues of a simple-pole 1-form on P1 (always zero)."""
    total = Scalar.zero()
    breakdown = []
    for pt in p1_pole_points(omega, variety):
        comp = point_component(variety, pt)
        res = poincare_residue(omega, comp, variety)
        breakdown.append((pt, res.value))
        total = total + res.value
    return total, breakdown
