"""Sparse multivariate polynomials and rational functions over Scalar.

Terms are kept in a dict {exponent_tuple: Scalar}; canonical printing
sorts by graded lexicographic order of the exponent vectors over the
chart's declared coordinate order.  Heavy primitives (multivariate gcd,
exact division, resultants, rational root extraction) are delegated to
sympy; everything else is direct dict arithmetic.
"""

from __future__ import annotations

import math
from fractions import Fraction

import sympy as sp

from .scalars import Scalar, ScalarError

TAU_SYM = sp.Symbol("TAU")

_sym_cache: dict = {}


def _sym(name: str) -> sp.Symbol:
    s = _sym_cache.get(name)
    if s is None:
        s = sp.Symbol(name)
        _sym_cache[name] = s
    return s


class PolynomialError(ArithmeticError):
    pass


def grlex_key(exp):
    return (sum(exp), exp)


class Polynomial:
    """Polynomial in an ordered tuple of variables, Scalar coefficients."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables, terms=None):
        self.variables = tuple(variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                if not isinstance(c, Scalar):
                    c = Scalar.of(c)
                if not c.is_zero():
                    clean[tuple(exp)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(variables, scalar) -> "Polynomial":
        if not isinstance(scalar, Scalar):
            scalar = Scalar.of(scalar)
        n = len(variables)
        return Polynomial(variables, {(0,) * n: scalar})

    @staticmethod
    def zero(variables) -> "Polynomial":
        return Polynomial(variables, {})

    @staticmethod
    def variable(variables, name) -> "Polynomial":
        variables = tuple(variables)
        i = variables.index(name)
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return Polynomial(variables, {exp: Scalar.one()})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def is_unit(self) -> bool:
        return self.is_constant() and not self.is_zero()

    def constant_value(self) -> Scalar:
        if self.is_zero():
            return Scalar.zero()
        if not self.is_constant():
            raise PolynomialError("not a constant: %s" % self)
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        if self.is_zero():
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, name: str) -> int:
        if self.is_zero():
            return -1
        i = self.variables.index(name)
        return max(e[i] for e in self.terms)

    def depends_on(self, name: str) -> bool:
        return self.degree_in(name) > 0

    # -- arithmetic ----------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.variables != other.variables:
            raise PolynomialError(
                "variable mismatch: %s vs %s" % (self.variables, other.variables)
            )

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return Polynomial(self.variables, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return Polynomial(self.variables, out)

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise PolynomialError("negative polynomial power")
        out = Polynomial.constant(self.variables, Scalar.one())
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, scalar: Scalar) -> "Polynomial":
        return Polynomial(self.variables, {e: c * scalar for e, c in self.terms.items()})

    # -- structure -----------------------------------------------------

    def leading(self):
        """(exponent, Scalar) of the graded-lex leading term."""
        if self.is_zero():
            raise PolynomialError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def min_tau(self) -> int:
        if self.is_zero():
            return 0
        return min(c.min_tau() for c in self.terms.values())

    def shift_tau(self, delta: int) -> "Polynomial":
        return Polynomial(
            self.variables, {e: c.shift_tau(delta) for e, c in self.terms.items()}
        )

    def differentiate(self, name: str) -> "Polynomial":
        i = self.variables.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            out[tuple(ne)] = c * Scalar.of(e[i])
        return Polynomial(self.variables, out)

    def evaluate(self, point: dict) -> Scalar:
        """Exact value at a rational point {var: Fraction}."""
        vals = [Fraction(point[v]) for v in self.variables]
        acc = Scalar.zero()
        for e, c in self.terms.items():
            m = Fraction(1)
            for x, k in zip(vals, e):
                m *= x**k
            acc = acc + c * Scalar.of(m)
        return acc

    def rename(self, variables) -> "Polynomial":
        """Same terms, new variable names (positional)."""
        if len(variables) != len(self.variables):
            raise PolynomialError("rename arity mismatch")
        return Polynomial(tuple(variables), dict(self.terms))

    def lift(self, variables) -> "Polynomial":
        """Reinterpret in a larger/reordered variable tuple."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.variables]
        n = len(variables)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for p, k in zip(pos, e):
                ne[p] = k
            out[tuple(ne)] = c
        return Polynomial(variables, out)

    def substitute(self, mapping: dict, target_vars=None) -> "RationalFunction":
        """Substitute RationalFunctions for variables; others must be absent."""
        target = tuple(target_vars) if target_vars is not None else None
        for v in self.variables:
            if self.depends_on(v) and v not in mapping:
                raise PolynomialError("no substitution for variable %s" % v)
        if target is None:
            for rf in mapping.values():
                target = rf.variables
                break
        if target is None:
            raise PolynomialError("empty substitution mapping")
        acc = RationalFunction.constant(target, Scalar.zero())
        for e, c in self.sorted_terms():
            term = RationalFunction.constant(target, c)
            for v, k in zip(self.variables, e):
                if k:
                    term = term * mapping[v] ** k
            acc = acc + term
        return acc

    # -- sympy bridge ----------------------------------------------------

    def to_sympy(self):
        expr = sp.Integer(0)
        syms = [_sym(v) for v in self.variables]
        for e, c in self.terms.items():
            mono = sp.Integer(1)
            for s, k in zip(syms, e):
                if k:
                    mono *= s**k
            coeff = sp.Integer(0)
            for tk, frac in c.coeffs.items():
                coeff += sp.Rational(frac.numerator, frac.denominator) * TAU_SYM**tk
            expr += coeff * mono
        return expr

    @staticmethod
    def from_sympy(expr, variables) -> "Polynomial":
        variables = tuple(variables)
        syms = [_sym(v) for v in variables]
        poly = sp.Poly(sp.expand(expr), *syms, TAU_SYM, domain="QQ")
        out = {}
        n = len(variables)
        for mono, coeff in poly.terms():
            e, tk = tuple(mono[:n]), mono[n]
            q = Fraction(coeff.p, coeff.q)
            c = out.get(e, Scalar.zero()) + Scalar.of(q, tk)
            out[e] = c
        return Polynomial(variables, out)

    # -- equality / printing -------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __repr__(self):
        return "Polynomial(%s)" % str(self)

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                ("%s^%d" % (v, k) if k > 1 else v)
                for v, k in zip(self.variables, e)
                if k
            )
            cs = str(c)
            if len(c.coeffs) > 1:
                cs = "(%s)" % cs
            if not mono:
                parts.append(cs)
            elif c.is_one():
                parts.append(mono)
            elif cs == "-1":
                parts.append("-%s" % mono)
            else:
                parts.append("%s*%s" % (cs, mono))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


# ---------------------------------------------------------------------------
# gcd / division helpers (sympy-backed)
# ---------------------------------------------------------------------------


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Canonical gcd; unit-normalized so the leading Scalar is 1."""
    if a.is_zero():
        return _canonical_assoc(b)
    if b.is_zero():
        return _canonical_assoc(a)
    sa = a.shift_tau(-a.min_tau())
    sb = b.shift_tau(-b.min_tau())
    g = sp.gcd(sa.to_sympy(), sb.to_sympy())
    return _canonical_assoc(Polynomial.from_sympy(g, a.variables))


def _canonical_assoc(p: Polynomial) -> Polynomial:
    """Divide out the leading Scalar (must be a TAU-monomial)."""
    if p.is_zero():
        return p
    _, lead = p.leading()
    if not lead.is_monomial():
        raise PolynomialError("leading coefficient is not a TAU-monomial: %s" % p)
    inv = lead.inverse()
    return p.scale(inv)


def poly_divides(p: Polynomial, q: Polynomial) -> bool:
    """Does p divide q exactly?"""
    if q.is_zero():
        return True
    if p.is_zero():
        return False
    quo, rem = _sympy_div(q, p)
    return rem.is_zero()


def poly_div_exact(q: Polynomial, p: Polynomial) -> Polynomial:
    quo, rem = _sympy_div(q, p)
    if not rem.is_zero():
        raise PolynomialError("inexact division")
    return quo


def _sympy_div(q: Polynomial, p: Polynomial):
    tq, tp = q.min_tau(), p.min_tau()
    sq, sp_ = q.shift_tau(-tq), p.shift_tau(-tp)
    syms = [_sym(v) for v in q.variables] + [TAU_SYM]
    quo, rem = sp.div(sq.to_sympy(), sp_.to_sympy(), *syms, domain="QQ")
    quo_p = Polynomial.from_sympy(quo, q.variables).shift_tau(tq - tp)
    rem_p = Polynomial.from_sympy(rem, q.variables).shift_tau(tq)
    return quo_p, rem_p


def poly_resultant(a: Polynomial, b: Polynomial, var: str) -> Polynomial:
    res = sp.resultant(a.to_sympy(), b.to_sympy(), _sym(var))
    rest = tuple(v for v in a.variables if v != var)
    return Polynomial.from_sympy(sp.expand(res), rest)


def is_squarefree(p: Polynomial) -> bool:
    for v in p.variables:
        if p.depends_on(v):
            if not poly_gcd(p, p.differentiate(v)).is_unit():
                return False
    return True


def rational_roots(p: Polynomial):
    """All rational roots of a univariate polynomial, with multiplicity.

    Returns (roots, fully_split) where fully_split is True when the
    polynomial factors completely into linear factors over Q.
    """
    (var,) = p.variables
    if p.min_tau() != 0 or any(not c.is_rational() for c in p.terms.values()):
        raise PolynomialError("rational_roots needs TAU-free coefficients")
    expr = p.shift_tau(0).to_sympy().subs(TAU_SYM, 1)
    poly = sp.Poly(expr, _sym(var), domain="QQ")
    roots = []
    degree_found = 0
    for r, mult in sp.roots(poly, filter="Q").items():
        q = Fraction(sp.Rational(r).p, sp.Rational(r).q)
        roots.append((q, mult))
        degree_found += mult
    roots.sort(key=lambda rm: rm[0])
    return roots, degree_found == poly.degree()


# ---------------------------------------------------------------------------
# RationalFunction
# ---------------------------------------------------------------------------

POLE_FREE = math.inf  # ord_along sentinel for the zero function


class RationalFunction:
    """Canonical fraction of Polynomials.

    Invariants: gcd(num, den) is a unit and the graded-lex leading
    coefficient of den is exactly 1 (rational part 1, TAU-exponent 0).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, _canonical=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @property
    def variables(self):
        return self.num.variables

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        one = Polynomial.constant(p.variables, Scalar.one())
        return RationalFunction(p, one, _canonical=True)

    @staticmethod
    def constant(variables, scalar) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.constant(variables, scalar))

    @staticmethod
    def variable(variables, name) -> "RationalFunction":
        return RationalFunction.from_poly(Polynomial.variable(variables, name))

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Scalar:
        return self.num.constant_value() / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_unit()

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return (RationalFunction.constant(self.variables, Scalar.one()) / self) ** (
                -n
            )
        return RationalFunction(self.num**n, self.den**n)

    def scale(self, scalar: Scalar) -> "RationalFunction":
        return RationalFunction(self.num.scale(scalar), self.den)

    # -- calculus / evaluation ------------------------------------------

    def differentiate(self, name: str) -> "RationalFunction":
        if name not in self.variables:
            raise PolynomialError("unknown variable %s" % name)
        dn = self.num.differentiate(name)
        dd = self.den.differentiate(name)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: dict) -> Scalar:
        dv = self.den.evaluate(point)
        if dv.is_zero():
            raise ZeroDivisionError("evaluation at a pole")
        return self.num.evaluate(point) / dv

    def substitute(self, mapping: dict, target_vars=None) -> "RationalFunction":
        n = self.num.substitute(mapping, target_vars)
        d = self.den.substitute(mapping, target_vars)
        return n / d

    def rename(self, variables) -> "RationalFunction":
        return RationalFunction(
            self.num.rename(variables), self.den.rename(variables), _canonical=True
        )

    def lift(self, variables) -> "RationalFunction":
        return RationalFunction(self.num.lift(variables), self.den.lift(variables))

    def ord_along(self, p: Polynomial) -> "int | float":
        """Valuation along the irreducible hypersurface {p = 0}.

        Negative = pole order.  Returns POLE_FREE (+inf) for the zero
        function.
        """
        if p.is_constant():
            raise PolynomialError("ord_along needs a nonconstant polynomial")
        if self.is_zero():
            return POLE_FREE
        return _poly_ord(self.num, p) - _poly_ord(self.den, p)

    # -- equality / printing -------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "RationalFunction(%s)" % str(self)

    def __str__(self):
        if self.den.is_unit():
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1 or not _atomic(self.num):
            ns = "(%s)" % ns
        ds = str(self.den)
        if len(self.den.terms) > 1 or not _atomic(self.den):
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)


def _atomic(p: Polynomial) -> bool:
    """Single term that prints without an ambiguous * or ^."""
    if len(p.terms) != 1:
        return False
    ((e, c),) = p.terms.items()
    if sum(e) == 0:
        return c.is_monomial() and len(str(c).replace("-", "").split("*")) == 1
    return sum(e) == 1 and (c.is_one() or str(c) == "-1")


def _normalize(num: Polynomial, den: Polynomial):
    """Reduce to the canonical fraction (gcd out, den leading coeff 1)."""
    if num.is_zero():
        return num, Polynomial.constant(den.variables, Scalar.one())
    g = poly_gcd(num, den)
    if not g.is_unit():
        num = poly_div_exact(num, g)
        den = poly_div_exact(den, g)
    _, lead = den.leading()
    if not lead.is_monomial():
        raise PolynomialError(
            "cannot normalize: denominator leading coefficient %s is a TAU-sum" % lead
        )
    inv = lead.inverse()
    return num.scale(inv), den.scale(inv)


def _poly_ord(q: Polynomial, p: Polynomial) -> int:
    k = 0
    while True:
        quo, rem = _sympy_div(q, p)
        if not rem.is_zero():
            return k
        q = quo
        k += 1


def normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Public entry point for canonical fraction construction."""
    return RationalFunction(num, den)
