"""Rational maps between catalog varieties.

A map is stored as rational-function formulas for the coordinates of one
target chart, written in the source's main-chart coordinates.  Maps whose
image avoids that chart can be retargeted to any other chart on demand.
"""

from fractions import Fraction

from .geometry import CatalogVariety, VarietyPoint, point_from_chart
from .polynomials import Polynomial, RationalFunction
from .scalars import Scalar


class MapError(ValueError):
    pass


def _rational_rank(rows):
    """Rank of a matrix of Fractions by Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


class VarietyMap:
    """Rational map between two catalog varieties."""

    __slots__ = ("source", "target", "target_chart", "formulas")

    def __init__(self, source: CatalogVariety, target: CatalogVariety,
                 target_chart, formulas):
        self.source = source
        self.target = target
        self.target_chart = target_chart
        chart = target.chart(target_chart)
        src = source.main_chart.coords
        fixed = {}
        for coord in chart.coords:
            if coord not in formulas:
                raise MapError("missing formula for target coordinate %s" % coord)
            rf = formulas[coord]
            if rf.variables != src:
                rf = rf.lift(src)
            fixed[coord] = rf
        self.formulas = fixed

    # -- constructors --------------------------------------------------

    @staticmethod
    def identity(variety: CatalogVariety) -> "VarietyMap":
        ch = variety.main_chart
        return VarietyMap(
            variety, variety, ch.id,
            {c: RationalFunction.variable(ch.coords, c) for c in ch.coords},
        )

    @staticmethod
    def constant(source: CatalogVariety, target: CatalogVariety,
                 point: VarietyPoint) -> "VarietyMap":
        """Collapse the whole source onto one rational point of the target."""
        chart, values = point.finite_chart(target)
        src = source.main_chart.coords
        return VarietyMap(source, target, chart.id, {
            c: RationalFunction.constant(src, Scalar.of(v))
            for c, v in values.items()
        })

    # -- chart handling ------------------------------------------------

    def formulas_on(self, chart_id) -> dict:
        """Formulas retargeted to another chart (ZeroDivisionError if the
        image lies outside that chart)."""
        if chart_id == self.target_chart:
            return dict(self.formulas)
        trans = self.target.coord_map(chart_id, self.target_chart)
        src = self.source.main_chart.coords
        return {c: rf.substitute(self.formulas, src) for c, rf in trans.items()}

    def canonical(self) -> "VarietyMap":
        """Same map targeted at the first chart that can express it."""
        for ch in self.target.charts:
            try:
                fs = self.formulas_on(ch.id)
            except ZeroDivisionError:
                continue
            if ch.id == self.target_chart:
                return self
            return VarietyMap(self.source, self.target, ch.id, fs)
        raise MapError("map cannot be expressed on any target chart")

    # -- operations ----------------------------------------------------

    def compose(self, inner: "VarietyMap") -> "VarietyMap":
        """self after inner (inner's target must be self's source)."""
        if inner.target.signature() != self.source.signature():
            raise MapError("composition source/target mismatch")
        mid_chart = self.source.chart(inner.target_chart)
        mid = self.source.coord_map(self.source.main_chart.id, inner.target_chart)
        src = inner.source.main_chart.coords
        for ch in self.target.charts:
            try:
                fs = self.formulas_on(ch.id)
                out = {}
                for coord, rf in fs.items():
                    on_mid = rf.substitute(mid, mid_chart.coords)
                    out[coord] = on_mid.substitute(inner.formulas, src)
                return VarietyMap(inner.source, self.target, ch.id, out)
            except ZeroDivisionError:
                continue
        raise MapError("composite map lands outside every target chart")

    def image_point(self) -> VarietyPoint:
        """Image of a zero-dimensional source."""
        if self.source.dimension != 0:
            raise MapError("image_point needs a point source")
        values = {}
        for c, rf in self.formulas.items():
            values[c] = rf.constant_value().rational_value()
        return point_from_chart(self.target, self.target_chart, values)

    def is_constant(self) -> bool:
        """True when every coordinate formula is free of the source coords."""
        for rf in self.formulas.values():
            if not (rf.num.is_constant() and rf.den.is_constant()):
                return False
        return True

    def jacobian_max_rank(self, rng, probes=16) -> int:
        """Largest Jacobian rank observed at random rational points."""
        coords = self.source.main_chart.coords
        n = len(coords)
        if n == 0:
            return 0
        partials = [
            [rf.differentiate(v) for v in coords]
            for rf in (self.formulas[c] for c in sorted(self.formulas))
        ]
        cap = min(n, len(partials))
        best = 0
        done = 0
        attempts = 0
        while done < probes and attempts < 8 * probes:
            attempts += 1
            pt = {
                c: Fraction(rng.randint(-40, 40), rng.randint(1, 12))
                for c in coords
            }
            try:
                rows = [
                    [e.evaluate(pt).rational_value() for e in row]
                    for row in partials
                ]
            except (ZeroDivisionError, ValueError):
                continue
            done += 1
            best = max(best, _rational_rank(rows))
            if best >= cap:
                break
        return best

    # -- identity ------------------------------------------------------

    def key(self):
        m = self.canonical()
        return (
            m.source.signature(),
            m.target.signature(),
            m.target_chart,
            tuple((c, str(m.formulas[c])) for c in sorted(m.formulas)),
        )

    def __eq__(self, other):
        return isinstance(other, VarietyMap) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def describe(self) -> str:
        parts = ["%s = %s" % (c, self.formulas[c]) for c in sorted(self.formulas)]
        if not parts:
            return "chart %s" % self.target_chart
        return ", ".join(parts)

    def __repr__(self):
        return "VarietyMap(%s -> %s: %s)" % (
            self.source.name, self.target.name, self.describe()
        )
