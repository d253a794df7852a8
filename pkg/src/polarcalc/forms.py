"""Meromorphic differential forms on an affine chart.

A form of degree q holds a map from strictly increasing q-tuples of
coordinate indices to RationalFunction coefficients.  Wedge, exterior
derivative, interior product and pullback are all exact; signs follow
the left interior product / Koszul convention with index tuples kept
strictly increasing.
"""

from __future__ import annotations

from .polynomials import (
    POLE_FREE,
    Polynomial,
    PolynomialError,
    RationalFunction,
    poly_div_exact,
    poly_divides,
    poly_gcd,
)
from .scalars import Scalar


class FormError(ValueError):
    pass


def _merge_sign(i: tuple, j: tuple):
    """Concatenate two increasing tuples; return (sorted tuple, sign) or None."""
    if set(i) & set(j):
        return None
    merged = i + j
    # count inversions of the concatenation
    sign = 1
    arr = list(merged)
    for a in range(len(arr)):
        for b in range(a + 1, len(arr)):
            if arr[a] > arr[b]:
                sign = -sign
    return tuple(sorted(merged)), sign


class DifferentialForm:
    __slots__ = ("chart", "coords", "degree", "components")

    def __init__(self, chart, coords, degree, components=None):
        self.chart = chart
        self.coords = tuple(coords)
        self.degree = int(degree)
        if self.degree < 0 or self.degree > len(self.coords):
            raise FormError(
                "degree %d out of range for chart of dimension %d"
                % (degree, len(self.coords))
            )
        clean = {}
        if components:
            for idx, rf in components.items():
                idx = tuple(idx)
                if len(idx) != self.degree or list(idx) != sorted(set(idx)):
                    raise FormError("bad index tuple %s for degree %d" % (idx, degree))
                if not rf.is_zero():
                    clean[idx] = rf
        self.components = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(chart, coords, degree) -> "DifferentialForm":
        return DifferentialForm(chart, coords, degree, {})

    @staticmethod
    def function(chart, coords, rf: RationalFunction) -> "DifferentialForm":
        return DifferentialForm(chart, coords, 0, {(): rf})

    @staticmethod
    def d_coordinate(chart, coords, name) -> "DifferentialForm":
        coords = tuple(coords)
        i = coords.index(name)
        one = RationalFunction.constant(coords, Scalar.one())
        return DifferentialForm(chart, coords, 1, {(i,): one})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.components

    def _check(self, other: "DifferentialForm"):
        if self.chart != other.chart or self.coords != other.coords:
            raise FormError("chart mismatch: %s vs %s" % (self.chart, other.chart))

    # -- linear structure ------------------------------------------------

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        self._check(other)
        if self.degree != other.degree:
            raise FormError("degree mismatch in form addition")
        out = dict(self.components)
        for idx, rf in other.components.items():
            cur = out.get(idx)
            out[idx] = rf if cur is None else cur + rf
        return DifferentialForm(self.chart, self.coords, self.degree, out)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(
            self.chart,
            self.coords,
            self.degree,
            {i: -rf for i, rf in self.components.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar: Scalar) -> "DifferentialForm":
        return DifferentialForm(
            self.chart,
            self.coords,
            self.degree,
            {i: rf.scale(scalar) for i, rf in self.components.items()},
        )

    def multiply(self, rf: RationalFunction) -> "DifferentialForm":
        return DifferentialForm(
            self.chart,
            self.coords,
            self.degree,
            {i: c * rf for i, c in self.components.items()},
        )

    # -- exterior algebra -------------------------------------------------

    def wedge(self, other: "DifferentialForm") -> "DifferentialForm":
        self._check(other)
        deg = self.degree + other.degree
        if deg > len(self.coords):
            return DifferentialForm.zero(self.chart, self.coords, min(deg, len(self.coords)))
        out = {}
        for i, a in self.components.items():
            for j, b in other.components.items():
                ms = _merge_sign(i, j)
                if ms is None:
                    continue
                idx, sign = ms
                c = a * b
                if sign < 0:
                    c = -c
                cur = out.get(idx)
                out[idx] = c if cur is None else cur + c
        return DifferentialForm(self.chart, self.coords, deg, out)

    def exterior_derivative(self) -> "DifferentialForm":
        deg = self.degree + 1
        if deg > len(self.coords):
            return DifferentialForm.zero(self.chart, self.coords, len(self.coords))
        out = {}
        for idx, rf in self.components.items():
            for j, name in enumerate(self.coords):
                if j in idx:
                    continue
                drf = rf.differentiate(name)
                if drf.is_zero():
                    continue
                ms = _merge_sign((j,), idx)
                nidx, sign = ms
                c = drf if sign > 0 else -drf
                cur = out.get(nidx)
                out[nidx] = c if cur is None else cur + c
        return DifferentialForm(self.chart, self.coords, deg, out)

    def contract(self, direction: str, scale: RationalFunction) -> "DifferentialForm":
        """Interior product with the vector field scale * d/d(direction)."""
        if self.degree == 0:
            raise FormError("cannot contract a 0-form")
        j = self.coords.index(direction)
        out = {}
        for idx, rf in self.components.items():
            if j not in idx:
                continue
            p = idx.index(j)
            nidx = idx[:p] + idx[p + 1 :]
            c = rf * scale
            if p % 2 == 1:
                c = -c
            cur = out.get(nidx)
            out[nidx] = c if cur is None else cur + c
        return DifferentialForm(self.chart, self.coords, self.degree - 1, out)

    # -- pullback -----------------------------------------------------------

    def pullback(self, mapping: dict, chart, coords) -> "DifferentialForm":
        """Pull back along the map whose target-coordinate formulas are given.

        mapping: {target_coord_name: RationalFunction in the source coords}.
        Returns a form on the source chart.
        """
        coords = tuple(coords)
        if self.degree > len(coords):
            return DifferentialForm.zero(chart, coords, len(coords))
        # precompute pulled-back differentials of each target coordinate
        dmaps = {}
        for name in self.coords:
            if name not in mapping:
                raise FormError("pullback map missing target coordinate %s" % name)
            rf = mapping[name]
            comps = {}
            for j, s in enumerate(coords):
                drf = rf.differentiate(s)
                if not drf.is_zero():
                    comps[(j,)] = drf
            dmaps[name] = DifferentialForm(chart, coords, 1, comps)
        out = DifferentialForm.zero(chart, coords, self.degree)
        for idx, rf in self.components.items():
            coeff = rf.substitute(mapping)
            term = DifferentialForm.function(chart, coords, coeff)
            for i in idx:
                term = term.wedge(dmaps[self.coords[i]])
            out = out + term
        return out

    # -- structure -----------------------------------------------------------

    def map_coefficients(self, fn) -> "DifferentialForm":
        return DifferentialForm(
            self.chart,
            self.coords,
            self.degree,
            {i: fn(rf) for i, rf in self.components.items()},
        )

    def sorted_components(self):
        return sorted(self.components.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, DifferentialForm)
            and self.chart == other.chart
            and self.coords == other.coords
            and self.degree == other.degree
            and self.components == other.components
        )

    def __hash__(self):
        return hash(
            (self.chart, self.coords, self.degree, frozenset(self.components.items()))
        )

    def __repr__(self):
        return "DifferentialForm(%s)" % str(self)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for idx, rf in self.sorted_components():
            basis = "^".join("d%s" % self.coords[i] for i in idx)
            cs = str(rf)
            if len(rf.num.terms) > 1 and rf.den.is_unit():
                cs = "(%s)" % cs
            if not basis:
                parts.append(cs)
            elif cs == "1":
                parts.append(basis)
            elif cs == "-1":
                parts.append("-%s" % basis)
            else:
                parts.append("%s %s" % (cs, basis))
        return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------
# pole profiling
# ---------------------------------------------------------------------------


class PolarProfile:
    """Pole orders of a form against a declared component list."""

    __slots__ = ("components", "residual_denominator")

    def __init__(self, components, residual_denominator):
        self.components = list(components)  # [(Polynomial, order)]
        self.residual_denominator = residual_denominator

    def order_of(self, poly: Polynomial):
        for p, o in self.components:
            if p == poly:
                return o
        return POLE_FREE

    def is_admissible(self) -> bool:
        return self.residual_denominator.is_unit() and all(
            o >= -1 for _, o in self.components
        )

    def worst_order(self):
        orders = [o for _, o in self.components]
        return min(orders) if orders else POLE_FREE

    def __repr__(self):
        return "PolarProfile(%s, residual=%s)" % (
            [(str(p), o) for p, o in self.components],
            self.residual_denominator,
        )


def polar_profile(form: DifferentialForm, declared) -> PolarProfile:
    """Per-component valuation of the worst coefficient, plus leftovers.

    declared: list of pairwise-coprime squarefree Polynomials on the
    form's chart.
    """
    declared = list(declared)
    for i, p in enumerate(declared):
        for q in declared[i + 1 :]:
            if not poly_gcd(p, q).is_unit():
                raise FormError(
                    "declared components not pairwise coprime: %s vs %s" % (p, q)
                )
    components = []
    for p in declared:
        if p.is_constant():
            components.append((p, POLE_FREE))
            continue
        worst = POLE_FREE
        for rf in form.components.values():
            o = rf.ord_along(p)
            if o < worst:
                worst = o
        components.append((p, worst))
    residual = Polynomial.constant(form.coords, Scalar.one())
    seen = set()
    for rf in form.components.values():
        den = rf.den
        for p in declared:
            if p.is_constant():
                continue
            while poly_divides(p, den):
                den = poly_div_exact(den, p)
        # fold remaining factors into the residual (up to multiplicity)
        g = poly_gcd(den, residual)
        extra = poly_div_exact(den, g) if not g.is_unit() else den
        if not extra.is_unit():
            residual = residual * extra
    return PolarProfile(components, residual)
