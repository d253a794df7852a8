"""The polar chain complex.

Chains are formal sums of triples (source variety, map into the
ambient, top-degree form with simple poles).  The boundary operator
sends a triple to TAU times the sum of its residues over the declared
pole components; the relations are scalar folding (R1), merging of
terms with a common image by summed pushforwards (R2), and dropping of
terms whose image has too small a dimension (R3).
"""

import random
from fractions import Fraction

from . import univar
from .forms import DifferentialForm, FormError, polar_profile
from .geometry import (
    INF,
    CatalogVariety,
    DivisorComponent,
    GeometryError,
    VarietyPoint,
    curve_reduce,
    point_component,
    point_from_chart,
    point_variety,
    proj_line,
    validate_normal_crossing,
)
from .maps import MapError, VarietyMap
from .polynomials import (
    POLE_FREE,
    Polynomial,
    RationalFunction,
    poly_div_exact,
    poly_gcd,
    poly_resultant,
)
from .residue import ResidueError, classify_component, p1_pole_points, poincare_residue
from .scalars import Scalar, ScalarError

R3_PROBES = 16


class ChainError(ValueError):
    pass


# ---------------------------------------------------------------------------
# triples
# ---------------------------------------------------------------------------


class Triple:
    """One generator (A, f, alpha) with its declared pole components."""

    __slots__ = ("source", "map", "form", "declared_poles")

    def __init__(self, source, map_, form, declared_poles):
        self.source = source
        self.map = map_
        self.form = form
        self.declared_poles = tuple(declared_poles)

    @property
    def degree(self) -> int:
        return self.source.dimension

    def with_form(self, form: DifferentialForm) -> "Triple":
        return Triple(self.source, self.map, form, self.declared_poles)

    def key(self):
        return (
            self.source.signature(),
            self.map.key(),
            str(self.form),
            tuple(sorted(str(c.key()) for c in self.declared_poles)),
        )

    def merge_key(self):
        """Identity of (source, map) for structural merging."""
        return (self.source.signature(), self.map.key())

    def render(self) -> str:
        return "(%s, %s, %s)" % (self.source.name, self.map.describe(), self.form)

    def __repr__(self):
        return "Triple%s" % self.render()


def make_triple(source, map_, form, declared_poles, rng=None) -> Triple:
    """Validated triple; raises with the failing chart and component."""
    if map_.source.signature() != source.signature():
        raise ChainError("map source does not match the triple's source variety")
    if form.degree != source.dimension:
        raise ChainError(
            "form degree %d does not match source dimension %d"
            % (form.degree, source.dimension)
        )
    declared_poles = tuple(declared_poles)
    if source.kind == "point":
        if declared_poles:
            raise ChainError("point sources carry no pole components")
        return Triple(source, map_, form, ())
    if form.chart != source.main_chart.id:
        form = source.transition_form(form, source.main_chart.id)
    if source.kind == "curve":
        if declared_poles:
            raise ChainError(
                "curve sources only carry holomorphic forms (no declared poles)"
            )
        if not _curve_holomorphic(form, source):
            raise ChainError(
                "form on %s is not holomorphic; curve-source poles are unsupported"
                % source.name
            )
        return Triple(source, map_, form, ())
    for comp in declared_poles:
        if comp.variety.signature() != source.signature():
            raise ChainError(
                "pole component %s lives on a different variety" % comp.label
            )
    if declared_poles:
        report = validate_normal_crossing(list(declared_poles), source, rng)
        if not report.ok:
            raise ChainError("declared poles violate normal crossing: %s" % report.message())
    for chart in source.charts:
        local = source.transition_form(form, chart.id)
        polys = [c.poly_on(chart.id) for c in declared_poles if c.visible_on(chart.id)]
        try:
            profile = polar_profile(local, polys)
        except FormError as e:
            raise ChainError("chart %s: %s" % (chart.id, e))
        for p, o in profile.components:
            if o < -1:
                raise ChainError(
                    "pole of order %d along %s on chart %s (only simple poles allowed)"
                    % (-o, p, chart.id)
                )
        if not profile.residual_denominator.is_unit():
            raise ChainError(
                "undeclared pole components %s on chart %s"
                % (profile.residual_denominator, chart.id)
            )
    return Triple(source, map_, form, declared_poles)


def _curve_holomorphic(form: DifferentialForm, curve: CatalogVariety) -> bool:
    """Degree criterion for a 1-form c*dx on a smooth plane curve."""
    if form.is_zero():
        return True
    coords = curve.main_chart.coords
    x, y = coords
    a = form.components.get((0,), RationalFunction.constant(coords, Scalar.zero()))
    b = form.components.get((1,), RationalFunction.constant(coords, Scalar.zero()))
    p = curve.curve_polys["A0"]
    px = RationalFunction.from_poly(p.differentiate(x))
    py = RationalFunction.from_poly(p.differentiate(y))
    try:
        c = curve_reduce(a - b * px / py, curve)
        g = curve_reduce(c.as_rf() * py, curve)
    except ZeroDivisionError:
        return False
    if g.is_zero():
        return True
    d = max(sum(e) for e in p.terms)
    total = 0
    for k, coeff in enumerate(g.coeffs):
        if coeff.is_zero():
            continue
        if not coeff.den.is_constant():
            return False
        deg_x = max((sum(e) for e in coeff.num.terms), default=0)
        total = max(total, deg_x + k)
    return total <= d - 3


def scalar_fold(lam: Scalar, t: Triple) -> Triple:
    """Fold a scalar into the triple's form (relation R1)."""
    return t.with_form(t.form.scale(lam))


# ---------------------------------------------------------------------------
# chains
# ---------------------------------------------------------------------------


class PolarChain:
    """Formal sum of triples mapping into one ambient variety.

    Terms are (Scalar, Triple) pairs; normalization folds every scalar
    to 1 and applies the relations.
    """

    __slots__ = ("ambient", "terms", "relative_to", "warnings")

    def __init__(self, ambient, terms=(), relative_to=(), warnings=()):
        self.ambient = ambient
        fixed = []
        for item in terms:
            if isinstance(item, Triple):
                item = (Scalar.one(), item)
            lam, t = item
            if t.map.target.signature() != ambient.signature():
                raise ChainError("term maps into a different ambient variety")
            fixed.append((lam, t))
        self.terms = tuple(fixed)
        self.relative_to = tuple(relative_to)
        self.warnings = tuple(warnings)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        return max((t.degree for _, t in self.terms), default=None)

    def __add__(self, other: "PolarChain") -> "PolarChain":
        if other.ambient.signature() != self.ambient.signature():
            raise ChainError("cannot add chains on different ambient varieties")
        return PolarChain(
            self.ambient,
            self.terms + other.terms,
            self.relative_to,
            self.warnings + other.warnings,
        )

    def __neg__(self) -> "PolarChain":
        minus = Scalar.of(-1)
        return PolarChain(
            self.ambient,
            [(lam * minus, t) for lam, t in self.terms],
            self.relative_to,
            self.warnings,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, lam: Scalar) -> "PolarChain":
        return PolarChain(
            self.ambient,
            [(lam * s, t) for s, t in self.terms],
            self.relative_to,
            self.warnings,
        )

    def key(self):
        return (
            self.ambient.signature(),
            tuple(sorted((str(s), t.key()) for s, t in self.terms)),
        )

    def __eq__(self, other):
        return isinstance(other, PolarChain) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for lam, t in self.terms:
            if lam == Scalar.one():
                parts.append(t.render())
            else:
                parts.append("%s*%s" % (lam, t.render()))
        return " + ".join(parts)

    def __repr__(self):
        return "PolarChain(%s)" % self.render()


def point_term(ambient, pt: VarietyPoint, weight: Scalar) -> Triple:
    """0-dimensional generator: a weighted rational point of the ambient."""
    src = point_variety()
    m = VarietyMap.constant(src, ambient, pt)
    form = DifferentialForm.function("pt", (), RationalFunction.constant((), weight))
    return Triple(src, m, form, ())


def term_weight(t: Triple) -> Scalar:
    """The Scalar carried by a 0-dimensional term."""
    if t.degree != 0:
        raise ChainError("weights only defined for point terms")
    if t.form.is_zero():
        return Scalar.zero()
    return t.form.components[()].constant_value()


# ---------------------------------------------------------------------------
# pushforward (trace)
# ---------------------------------------------------------------------------


def _trace_p1(r: RationalFunction, form: DifferentialForm, target_coord):
    """Trace of a 1-form along a non-constant rational map of lines.

    r is the map formula in the source coordinate t; the result is a
    1-form in target_coord obtained by summing over the preimages via
    Newton-identity elimination modulo the fiber polynomial.
    """
    (t,) = r.variables
    w = (target_coord,)
    rn = univar.from_poly_in(r.num, t, ())
    rd = univar.from_poly_in(r.den, t, ())
    rn = [_lift_const(c, w) for c in rn]
    rd = [_lift_const(c, w) for c in rd]
    wvar = RationalFunction.variable(w, target_coord)
    fiber = univar.usub(rn, univar.uscale(rd, wvar))
    d = univar.udeg(fiber)
    if d <= 0:
        raise MapError("trace along a constant map is undefined")
    a = form.components.get((0,), RationalFunction.constant((t,), Scalar.zero()))
    if a.is_zero():
        return DifferentialForm.zero("z", w, 1)
    dr = r.differentiate(t)
    un = univar.umul(_lift_poly(a.num, t, w), _lift_poly(dr.den, t, w))
    ud = univar.umul(_lift_poly(a.den, t, w), _lift_poly(dr.num, t, w))
    un = univar.umod(un, fiber)
    ud = univar.umod(ud, fiber)
    if not ud:
        raise MapError("trace denominator vanishes on the fiber")
    c = univar.umod(univar.umul(un, univar.uinvert(ud, fiber)), fiber)
    sums = univar.newton_power_sums(fiber, max(len(c) - 1, 0))
    total = RationalFunction.constant(w, Scalar.zero())
    for k, ck in enumerate(c):
        if k == 0:
            total = total + ck * RationalFunction.constant(w, Scalar.of(d))
        else:
            total = total + ck * sums[k - 1]
    return DifferentialForm("z", w, 1, {(0,): total})


def _lift_const(rf: RationalFunction, w):
    return RationalFunction.constant(w, rf.constant_value())


def _lift_poly(p: Polynomial, t, w):
    return [_lift_const(c, w) for c in univar.from_poly_in(p, t, ())]


def pushforward_form(map_: VarietyMap, form: DifferentialForm,
                     source: CatalogVariety, image: CatalogVariety) -> DifferentialForm:
    """Trace pushforward within the supported map family."""
    if (
        source.signature() == image.signature()
        and map_ == VarietyMap.identity(source)
    ):
        return form
    if source.kind == "P1" and image.kind == "P1":
        coord = image.main_chart.coords[0]
        try:
            r = map_.formulas_on(image.main_chart.id)[coord]
        except ZeroDivisionError:
            raise MapError("map image avoids the target's affine chart")
        f = form if form.chart == source.main_chart.id else source.transition_form(
            form, source.main_chart.id
        )
        out = _trace_p1(r, f, coord)
        return DifferentialForm(image.main_chart.id, (coord,), 1, dict(out.components))
    raise MapError("pushforward outside the supported map family")


# ---------------------------------------------------------------------------
# image identification (for R2 and support)
# ---------------------------------------------------------------------------


def _squarefree_part(p: Polynomial) -> Polynomial:
    g = p
    for v in p.variables:
        d = p.differentiate(v)
        if not d.is_zero():
            g = poly_gcd(g, d)
    if g.is_unit():
        return p
    return poly_div_exact(p, g)


def image_description(t: Triple, ambient: CatalogVariety):
    """Classify the image of a term's map.

    Returns ("point", VarietyPoint), ("dominant",), ("component",
    DivisorComponent) or ("opaque", key-string).
    """
    if t.degree == 0:
        return ("point", t.map.image_point())
    m = t.map.canonical()
    if t.degree == ambient.dimension:
        return ("dominant",)
    if t.degree == 1 and ambient.dimension == 2 and t.source.kind == "P1":
        chart = ambient.chart(m.target_chart)
        tvar = t.source.main_chart.coords[0]
        ext = (tvar,) + chart.coords
        polys = []
        for coord in chart.coords:
            rf = m.formulas[coord]
            xc = Polynomial.variable(ext, coord)
            polys.append(rf.num.lift(ext) - xc * rf.den.lift(ext))
        res = poly_resultant(polys[0], polys[1], tvar)
        if res.is_zero() or res.is_constant():
            return ("opaque", str(t.map.key()))
        res = _squarefree_part(res)
        comp = DivisorComponent.from_chart_poly(ambient, m.target_chart, res)
        return ("component", comp)
    if t.degree == 1 and t.source.kind == "curve":
        poly = t.source.curve_polys["A0"]
        try:
            comp = DivisorComponent.from_chart_poly(ambient, "A0", poly)
            return ("component", comp)
        except GeometryError:
            return ("opaque", str(t.map.key()))
    return ("opaque", str(t.map.key()))


def _image_group_key(desc):
    if desc[0] == "point":
        return ("point", desc[1].kind, desc[1].data)
    if desc[0] == "dominant":
        return ("dominant",)
    if desc[0] == "component":
        return ("component", desc[1].key())
    return ("opaque", desc[1])


# ---------------------------------------------------------------------------
# normalization (R1/R2/R3)
# ---------------------------------------------------------------------------


def normalize_chain(c: PolarChain, rng=None, strict=False) -> PolarChain:
    """Canonical form: scalars folded, R3 pruned, coincident images merged."""
    if rng is None:
        rng = random.Random(0)
    warnings = list(c.warnings)

    # R1: fold every scalar into the form.
    folded = [scalar_fold(lam, t) for lam, t in c.terms if not lam.is_zero()]
    folded = [t for t in folded if not t.form.is_zero()]

    # structural merge: identical (source, map) pairs add their forms.
    by_struct = {}
    order = []
    for t in folded:
        k = t.merge_key()
        if k in by_struct:
            by_struct[k] = _merge_structural(by_struct[k], t, rng)
        else:
            by_struct[k] = t
            order.append(k)
    terms = [by_struct[k] for k in order if not by_struct[k].form.is_zero()]

    # R3: drop terms whose image dimension falls below the degree.
    kept = []
    for t in terms:
        if t.degree == 0:
            kept.append(t)
            continue
        if t.map.is_constant():
            continue
        rank = t.map.jacobian_max_rank(rng, R3_PROBES)
        if rank < t.degree:
            if strict:
                warnings.append(
                    "term %s kept: image-dimension drop suggested by probes "
                    "but not certified" % t.render()
                )
                kept.append(t)
            continue
        kept.append(t)
    terms = kept

    # R2: merge coincident images via summed pushforwards.
    groups = {}
    order = []
    for t in terms:
        desc = image_description(t, c.ambient)
        k = _image_group_key(desc)
        if k not in groups:
            groups[k] = (desc, [])
            order.append(k)
        groups[k][1].append(t)
    out = []
    for k in order:
        desc, members = groups[k]
        merged, warn = _merge_group(desc, members, c.ambient, rng)
        out.extend(merged)
        warnings.extend(warn)

    out.sort(key=lambda t: t.key())
    return PolarChain(c.ambient, out, c.relative_to, tuple(warnings))


def _merge_structural(a: Triple, b: Triple, rng) -> Triple:
    form = a.form + b.form
    decl = list(a.declared_poles)
    for comp in b.declared_poles:
        if comp not in decl:
            decl.append(comp)
    decl = _prune_declared(form, a.source, decl)
    return make_triple(a.source, a.map, form, decl, rng)


def _prune_declared(form, source, declared):
    kept = []
    for comp in declared:
        chart = comp.first_visible_chart()
        local = form if form.chart == chart.id else source.transition_form(form, chart.id)
        worst = POLE_FREE
        for rf in local.components.values():
            o = rf.ord_along(comp.poly_on(chart.id))
            if o < worst:
                worst = o
        if worst < 0:
            kept.append(comp)
    return kept


def _merge_group(desc, members, ambient, rng):
    """Merge one coincident-image group; returns (terms, warnings)."""
    if len(members) == 1:
        return members, []
    if desc[0] == "point":
        total = Scalar.zero()
        for t in members:
            total = total + term_weight(t)
        if total.is_zero():
            return [], []
        return [point_term(ambient, desc[1], total)], []
    if desc[0] == "dominant" and ambient.kind == "P1":
        coord = ambient.main_chart.coords[0]
        try:
            forms = [
                pushforward_form(t.map, t.form, t.source, ambient) for t in members
            ]
        except MapError as e:
            return members, ["unmergeable coincident-image terms (%s)" % e]
        total = forms[0]
        for f in forms[1:]:
            total = total + f
        if total.is_zero():
            return [], []
        line = proj_line(coord)
        try:
            t = make_triple(
                line, VarietyMap.identity(line), total,
                _infer_p1_poles(total, line), rng,
            )
        except (ChainError, ResidueError) as e:
            return members, ["unmergeable coincident-image terms (%s)" % e]
        return [t], []
    if desc[0] == "component":
        merged = _merge_onto_component(desc[1], members, ambient, rng)
        if merged is not None:
            return merged
        return members, [
            "unmergeable coincident-image terms on %s" % desc[1].label
        ]
    return members, ["unmergeable coincident-image terms (opaque image)"]


def _merge_onto_component(comp, members, ambient, rng):
    try:
        shape = classify_component(comp, ambient)
    except ResidueError:
        return None
    if shape[0] != "graph":
        return None
    _, chart, solve, param, value = shape
    base = param.rstrip("_") or param
    line = proj_line(base)
    bvar = RationalFunction.variable((base,), base)
    embed = VarietyMap(
        line, ambient, chart.id,
        {param: bvar, solve: value.substitute({param: bvar}, (base,))},
    )
    total = DifferentialForm.zero(line.main_chart.id, (base,), 1)
    for t in members:
        try:
            r = t.map.formulas_on(chart.id)[param]
        except ZeroDivisionError:
            return None
        f = t.form if t.form.chart == t.source.main_chart.id else (
            t.source.transition_form(t.form, t.source.main_chart.id)
        )
        try:
            traced = _trace_p1(r, f, base)
        except MapError:
            return None
        total = total + DifferentialForm(
            line.main_chart.id, (base,), 1, dict(traced.components)
        )
    if total.is_zero():
        return [], []
    try:
        t = make_triple(line, embed, total, _infer_p1_poles(total, line), rng)
    except (ChainError, ResidueError):
        return None
    return [t], []


def _infer_p1_poles(form: DifferentialForm, line: CatalogVariety):
    return [point_component(line, pt) for pt in p1_pole_points(form, line)]


# ---------------------------------------------------------------------------
# boundary operator
# ---------------------------------------------------------------------------


class BoundaryResult:
    """A boundary chain plus per-term provenance records."""

    __slots__ = ("chain", "provenance", "raw_terms")

    def __init__(self, chain, provenance, raw_terms):
        self.chain = chain
        self.provenance = list(provenance)
        self.raw_terms = list(raw_terms)


def _residue_term(parent: Triple, comp: DivisorComponent, rng):
    res = poincare_residue(parent.form, comp, parent.source)
    embed = parent.map.compose(res.embed)
    if res.kind == "scalar":
        t = point_term(parent.map.target, embed.image_point(), res.value)
        return res, t
    if res.kind == "line":
        decl = _infer_p1_poles(res.form, res.target)
        return res, make_triple(res.target, embed, res.form, decl, rng)
    return res, make_triple(res.target, embed, res.form, (), rng)


def boundary(c: PolarChain, rng=None, strict=False) -> BoundaryResult:
    """TAU times the sum of residues over every simple-pole component."""
    if rng is None:
        rng = random.Random(0)
    raw = []
    provenance = []
    for lam, parent in c.terms:
        t = scalar_fold(lam, parent)
        if t.degree == 0 or t.source.kind == "curve" or t.form.is_zero():
            continue
        for comp in t.declared_poles:
            chart = comp.first_visible_chart()
            local = t.form if t.form.chart == chart.id else (
                t.source.transition_form(t.form, chart.id)
            )
            worst = POLE_FREE
            for rf in local.components.values():
                o = rf.ord_along(comp.poly_on(chart.id))
                if o < worst:
                    worst = o
            if worst >= 0:
                continue
            res, term = _residue_term(t, comp, rng)
            raw.append((Scalar.tau(), term))
            provenance.append({
                "parent": t.render(),
                "component": comp.label,
                "residue": str(res.form),
                "scalar": str(Scalar.tau()),
            })
    chain = normalize_chain(
        PolarChain(c.ambient, raw, c.relative_to), rng, strict
    )
    return BoundaryResult(chain, provenance, raw)


def check_d_squared(c: PolarChain, rng=None, strict=False):
    """Apply the boundary twice and report the pairwise cancellations."""
    first = boundary(c, rng, strict)
    second = boundary(first.chain, rng, strict)
    cancellations = []
    by_point = {}
    for lam, t in second.raw_terms:
        if t.degree != 0:
            continue
        pt = t.map.image_point()
        by_point.setdefault(pt, []).append(lam * term_weight(t))
    for pt, weights in sorted(by_point.items(), key=lambda kv: kv[0].sort_key()):
        total = Scalar.zero()
        for w in weights:
            total = total + w
        cancellations.append({
            "point": str(pt),
            "weights": [str(w) for w in weights],
            "total": str(total),
        })
    return {
        "zero": second.chain.is_zero(),
        "boundary": first.chain,
        "second": second.chain,
        "cancellations": cancellations,
    }


# ---------------------------------------------------------------------------
# support, cycles, relative reduction
# ---------------------------------------------------------------------------


def support(c: PolarChain, rng=None, strict=False):
    """Image descriptions of the terms of the canonical form."""
    n = normalize_chain(c, rng, strict)
    out = []
    for _, t in n.terms:
        desc = image_description(t, n.ambient)
        if desc[0] == "point":
            out.append("point %s" % desc[1])
        elif desc[0] == "dominant":
            out.append(n.ambient.name)
        elif desc[0] == "component":
            out.append(desc[1].label)
        else:
            out.append("image of %s" % t.render())
    return out


def _term_inside(t: Triple, ambient, zone) -> bool:
    desc = image_description(t, ambient)
    if desc[0] == "point":
        for z in zone:
            if isinstance(z, VarietyPoint) and z == desc[1]:
                return True
            if isinstance(z, DivisorComponent) and z.contains_point(desc[1]):
                return True
        return False
    if desc[0] == "component":
        return any(
            isinstance(z, DivisorComponent) and z == desc[1] for z in zone
        )
    return False


def reduce_relative(c: PolarChain, zone, rng=None, strict=False) -> PolarChain:
    """Drop the terms supported inside Z and mark the chain relative."""
    zone = tuple(zone)
    for z in zone:
        if isinstance(z, DivisorComponent):
            if z.variety.signature() != c.ambient.signature():
                raise ChainError("relative subvariety lives outside the ambient")
        elif not isinstance(z, VarietyPoint):
            raise ChainError("unsupported relative subvariety element")
    n = normalize_chain(c, rng, strict)
    kept = [(lam, t) for lam, t in n.terms if not _term_inside(t, c.ambient, zone)]
    return PolarChain(c.ambient, kept, zone, n.warnings)


def is_cycle(c: PolarChain, rng=None, strict=False):
    """(flag, residual boundary); relative chains discount terms in Z."""
    b = boundary(c, rng, strict)
    residual = b.chain
    if c.relative_to:
        kept = [
            (lam, t)
            for lam, t in residual.terms
            if not _term_inside(t, c.ambient, c.relative_to)
        ]
        residual = PolarChain(c.ambient, kept, c.relative_to, residual.warnings)
    return residual.is_zero(), b.chain


# ---------------------------------------------------------------------------
# boundary witness on the line
# ---------------------------------------------------------------------------


def boundary_witness_p1(zero_cycle, line=None, rng=None) -> PolarChain:
    """A 1-chain whose boundary is the given zero-sum 0-chain on P1.

    zero_cycle: list of (rational point value, Scalar weight).
    """
    if line is None:
        line = proj_line("z")
    coord = line.main_chart.coords[0]
    coords = (coord,)
    total = Scalar.zero()
    entries = []
    for value, weight in zero_cycle:
        total = total + weight
        if not weight.is_zero():
            entries.append((Fraction(value), weight))
    if not total.is_zero():
        raise ChainError(
            "total weight %s is nonzero: no boundary witness exists" % total
        )
    if not entries:
        return PolarChain(line)
    form = DifferentialForm.zero(line.main_chart.id, coords, 1)
    tau_inv = Scalar.one() / Scalar.tau()
    z = Polynomial.variable(coords, coord)
    decl = []
    for value, weight in entries:
        p = z - Polynomial.constant(coords, Scalar.of(value))
        term = RationalFunction(
            Polynomial.constant(coords, weight * tau_inv), p
        )
        form = form + DifferentialForm(line.main_chart.id, coords, 1, {(0,): term})
        decl.append(DivisorComponent.from_chart_poly(line, line.main_chart.id, p))
    t = make_triple(line, VarietyMap.identity(line), form, decl, rng)
    chain = PolarChain(line, [t])
    expected = PolarChain(
        line,
        [point_term(line, VarietyPoint.product_point([v]), w) for v, w in entries],
    )
    got = boundary(chain, rng)
    if got.chain != normalize_chain(expected, rng):
        raise ChainError("internal witness verification failed")
    return chain
