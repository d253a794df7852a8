"""The cylinder homotopy on a product M x P1.

For a term (A, f, alpha) whose map hits the line factor through a
rational function g, the lifted term lives on A x P1 and carries

    beta = (1/TAU) * (g - c) dz / ((z - c)(z - g)) wedge alpha
         = (1/TAU) * (dz/(z - g) - dz/(z - c)) wedge alpha

where c is the basepoint playing the role of 0.  Its residues along the
two sections and the lifted vertical components reproduce alpha, -alpha
and the lifted residues, which is exactly what makes
boundary(h(a)) + h(boundary(a)) = a - section(projection(a)).

When the basepoint section fails the normal-crossing requirement, a
shifted basepoint c' is probed in the deterministic order 1, -1, 2, -2,
... and the term is emitted as beta' plus (beta - beta'), the second
piece having only section and vertical poles.
"""

import random
from fractions import Fraction

from .chains import ChainError, PolarChain, Triple, make_triple, scalar_fold, term_weight
from .forms import DifferentialForm
from .geometry import (
    INF,
    CatalogVariety,
    DivisorComponent,
    VarietyPoint,
    point_component,
    product_of_lines,
    proj_line,
    validate_normal_crossing,
)
from .maps import VarietyMap
from .polynomials import Polynomial, RationalFunction
from .scalars import Scalar

BASEPOINT_PROBES = 12


class HomotopyError(ValueError):
    pass


class CylinderChain:
    """The lifted chain h(a) together with its bookkeeping."""

    __slots__ = ("chain", "base", "basepoint", "records")

    def __init__(self, chain, base, basepoint, records):
        self.chain = chain
        self.base = base
        self.basepoint = basepoint
        self.records = list(records)


def _line_factor(ambient: CatalogVariety):
    """The coordinate of the last P1 factor (the cylinder direction)."""
    if ambient.kind not in ("P1", "product") or not ambient.factors:
        raise HomotopyError(
            "cylinder homotopy needs a product with a line factor, got %s"
            % ambient.name
        )
    return ambient.factors[-1]


def _probe_sequence(basepoint):
    yield Fraction(basepoint)
    k = 1
    count = 0
    while count < BASEPOINT_PROBES:
        for cand in (Fraction(k), Fraction(-k)):
            if cand != Fraction(basepoint):
                yield cand
                count += 1
        k += 1


def _rename_rf(rf: RationalFunction, new_vars):
    return RationalFunction(
        rf.num.rename(new_vars), rf.den.rename(new_vars), _canonical=True
    )


def _map_with_section(t: Triple, ambient, zc):
    """Chart and formulas of the term's map with a finite line factor."""
    for ch in ambient.charts:
        parts = ch.id.split("|")
        if parts[-1] != zc:
            continue
        try:
            fs = t.map.formulas_on(ch.id)
        except ZeroDivisionError:
            continue
        return ch, fs
    raise HomotopyError(
        "term %s cannot be expressed with a finite line factor" % t.render()
    )


def _section_formulas(fs, zc, value, src_coords):
    out = {}
    for coord, rf in fs.items():
        if coord == zc:
            out[coord] = RationalFunction.constant(src_coords, Scalar.of(value))
        else:
            out[coord] = rf if rf.variables == src_coords else rf.lift(src_coords)
    return out


def section_pushforwards(a: PolarChain, basepoint=0) -> PolarChain:
    """Replace every term's line-factor map by the constant basepoint."""
    zc = _line_factor(a.ambient)
    idx = a.ambient.factors.index(zc)
    out = []
    for lam, t in a.terms:
        if t.degree == 0:
            pt = t.map.image_point()
            moved = VarietyPoint(pt.kind, tuple(
                Fraction(basepoint) if i == idx else u
                for i, u in enumerate(pt.data)
            ))
            m = VarietyMap.constant(t.source, a.ambient, moved)
            out.append((lam, Triple(t.source, m, t.form, t.declared_poles)))
            continue
        ch, fs = _map_with_section(t, a.ambient, zc)
        src = t.source.main_chart.coords
        nf = _section_formulas(fs, zc, basepoint, src)
        out.append((lam, Triple(t.source, VarietyMap(t.source, a.ambient, ch.id, nf),
                                t.form, t.declared_poles)))
    return PolarChain(a.ambient, out, a.relative_to, a.warnings)


def _section_rf(coords, zc, value):
    z = RationalFunction.variable(coords, zc)
    return z - RationalFunction.constant(coords, Scalar.of(value))


def _kernel(cyl, zc, g_lift, c):
    """(1/(z-g) - 1/(z-c)), the partial-fraction form of the beta kernel."""
    coords = cyl.main_chart.coords
    one = RationalFunction.constant(coords, Scalar.one())
    z = RationalFunction.variable(coords, zc)
    return one / (z - g_lift) - one / _section_rf(coords, zc, c)


def _h_point_term(lam, t, ambient, zc, c, rng):
    pt = t.map.image_point()
    idx = ambient.factors.index(zc)
    v = pt.data[idx]
    if v != INF and v == Fraction(c):
        return [], {"term": t.render(), "basepoint": str(c), "zero": True}
    weight = lam * term_weight(t)
    line = proj_line(zc)
    coords = (zc,)
    if v == INF:
        # limit of the kernel as the graph point escapes to infinity
        one = RationalFunction.constant(coords, Scalar.one())
        kernel = -(one / _section_rf(coords, zc, c))
        chart_pt = VarietyPoint(
            pt.kind,
            tuple(Fraction(0) if i == idx else u for i, u in enumerate(pt.data)),
        )
    else:
        kernel = _kernel(
            line, zc, RationalFunction.constant(coords, Scalar.of(v)), c
        )
        chart_pt = pt
    beta = DifferentialForm.d_coordinate(line.main_chart.id, coords, zc).multiply(
        kernel
    ).scale(weight / Scalar.tau())
    chart, values = chart_pt.finite_chart(ambient)
    formulas = {}
    for coord, val in values.items():
        if coord == zc:
            formulas[coord] = RationalFunction.variable(coords, zc)
        else:
            formulas[coord] = RationalFunction.constant(coords, Scalar.of(val))
    m = VarietyMap(line, ambient, chart.id, formulas)
    decl = [
        point_component(line, VarietyPoint.product_point([v])),
        point_component(line, VarietyPoint.product_point([Fraction(c)])),
    ]
    triple = make_triple(line, m, beta, decl, rng)
    return [(Scalar.one(), triple)], {
        "term": t.render(), "basepoint": str(c), "repaired": False,
    }


def _lift_components(t: Triple, cyl, tname):
    """Vertical components of the cylinder over the poles of alpha."""
    out = []
    src = t.source
    for comp in t.declared_poles:
        chart = comp.first_visible_chart()
        p = comp.poly_on(chart.id)
        new_var = tname if not chart.coords[0].endswith("_") else tname + "_"
        p = p.rename((new_var,))
        cyl_chart = None
        for ch in cyl.charts:
            if ch.id.split("|")[0] == new_var:
                cyl_chart = ch
                break
        out.append(
            DivisorComponent.from_chart_poly(
                cyl, cyl_chart.id, p.lift(cyl_chart.coords), comp.label
            )
        )
    return out


def _h_line_term(lam, t, ambient, zc, c, rng):
    told = t.source.main_chart.coords[0]
    tname = told if told != zc else told + "s"
    cyl = product_of_lines([tname, zc])
    coords = cyl.main_chart.coords
    chart, fs = _map_with_section(t, ambient, zc)
    g = fs[zc]
    if g.variables != (told,):
        g = g.lift((told,))
    g_lift = _rename_rf(g, (tname,)).lift(coords)
    c = Fraction(c)
    if g.num.is_constant() and g.den.is_constant():
        if g.constant_value().rational_value() == c:
            return [], {"term": t.render(), "basepoint": str(c), "zero": True}

    alpha = t.form if t.form.chart == t.source.main_chart.id else (
        t.source.transition_form(t.form, t.source.main_chart.id)
    )
    a_coeff = alpha.components.get(
        (0,), RationalFunction.constant((told,), Scalar.zero())
    )
    alpha_lift = DifferentialForm(
        cyl.main_chart.id, coords, 1,
        {(0,): _rename_rf(a_coeff, (tname,)).lift(coords)},
    ).scale(lam)
    dz = DifferentialForm.d_coordinate(cyl.main_chart.id, coords, zc)

    # map of the lifted term: base part from f, line factor untouched
    formulas = {}
    for coord, rf in fs.items():
        if coord == zc:
            formulas[coord] = RationalFunction.variable(coords, zc)
        else:
            if rf.variables != (told,):
                rf = rf.lift((told,))
            formulas[coord] = _rename_rf(rf, (tname,)).lift(coords)
    lifted_map = VarietyMap(cyl, ambient, chart.id, formulas)

    verticals = _lift_components(t, cyl, tname)
    z = RationalFunction.variable(coords, zc)
    graph_rf = z - g_lift
    graph = DivisorComponent.from_chart_poly(
        cyl, cyl.main_chart.id, graph_rf.num, "{z = g}"
    )
    for v in verticals:
        if v == graph:
            raise HomotopyError(
                "graph section coincides with a lifted pole component %s" % v.label
            )

    one = RationalFunction.constant(coords, Scalar.one())
    tau_inv = Scalar.one() / Scalar.tau()
    is_const_g = g.num.is_constant() and g.den.is_constant()
    for probe in _probe_sequence(c):
        section = DivisorComponent.from_chart_poly(
            cyl, cyl.main_chart.id, _section_rf(coords, zc, probe).num
        )
        if section == graph:
            continue
        decl = [section, graph] + verticals
        report = validate_normal_crossing(decl, cyl, rng)
        if not report.ok:
            continue
        kernel = _kernel(cyl, zc, g_lift, probe)
        beta = dz.multiply(kernel).wedge(alpha_lift).scale(tau_inv)
        try:
            main = make_triple(cyl, lifted_map, beta, _prune(decl, beta, cyl), rng)
        except ChainError:
            continue
        terms = [(Scalar.one(), main)]
        repaired = probe != c
        if repaired:
            # beta(c) - beta(probe): only section and vertical poles remain
            diff_kernel = one / _section_rf(coords, zc, probe) - one / _section_rf(
                coords, zc, c
            )
            diff = dz.multiply(diff_kernel).wedge(alpha_lift).scale(tau_inv)
            base_section = DivisorComponent.from_chart_poly(
                cyl, cyl.main_chart.id, _section_rf(coords, zc, c).num
            )
            decl2 = [base_section, section] + verticals
            tail = make_triple(cyl, lifted_map, diff, _prune(decl2, diff, cyl), rng)
            terms.append((Scalar.one(), tail))
        return terms, {
            "term": t.render(),
            "basepoint": str(probe),
            "repaired": repaired,
        }
    raise HomotopyError(
        "no admissible basepoint among probes for term %s" % t.render()
    )


def _prune(declared, form, source):
    from .chains import _prune_declared

    return _prune_declared(form, source, declared)


def cylinder_homotopy(a: PolarChain, basepoint=0, rng=None) -> CylinderChain:
    """The chain-level homotopy h applied termwise."""
    if rng is None:
        rng = random.Random(0)
    zc = _line_factor(a.ambient)
    terms = []
    records = []
    for lam, t in a.terms:
        if t.degree == 0:
            new, rec = _h_point_term(lam, t, a.ambient, zc, basepoint, rng)
        elif t.degree == 1 and t.source.kind == "P1":
            new, rec = _h_line_term(lam, t, a.ambient, zc, basepoint, rng)
        else:
            raise HomotopyError(
                "cylinder homotopy supports point and line sources, got %s"
                % t.source.name
            )
        terms.extend(new)
        records.append(rec)
    chain = PolarChain(a.ambient, terms, a.relative_to, a.warnings)
    base = section_pushforwards(a, basepoint)
    return CylinderChain(chain, base, Fraction(basepoint), records)


def verify_homotopy_identity(a: PolarChain, basepoint=0, rng=None, strict=False):
    """Check boundary(h(a)) + h(boundary(a)) + s*pi*(a) - a == 0."""
    from .chains import boundary, normalize_chain

    if rng is None:
        rng = random.Random(0)
    h_a = cylinder_homotopy(a, basepoint, rng)
    d_h = boundary(h_a.chain, rng, strict).chain
    d_a = boundary(a, rng, strict).chain
    h_d = cylinder_homotopy(d_a, basepoint, rng)
    s_pi = section_pushforwards(a, basepoint)
    combo = d_h + h_d.chain + s_pi - a
    total = normalize_chain(combo, rng, strict)
    return {
        "zero": total.is_zero(),
        "residual": total,
        "dh": d_h,
        "hd": h_d.chain,
        "s_pi": normalize_chain(s_pi, rng, strict),
        "basepoint": str(h_a.basepoint),
        "records": h_a.records + h_d.records,
    }
