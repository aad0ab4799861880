"""Polynomials in named variables over Puiseux-series coefficients.

KPoly is the working representation for curve equations: a finite term map
from exponent tuples to series coefficients.  Structure and calculus
(recentering, scaling, derivatives, evaluation) are implemented directly;
resultants, gcds and squarefree parts of exact t-polynomial inputs are
delegated to sympy over an auxiliary symbol s = t^(1/e).
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

import sympy

from .errors import NotSquarefree
from .gamma import INF
from .series import Point, PuiseuxSeries

_S = sympy.Symbol("_riso_s")


class KPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field, vars, terms):
        self.field = field
        self.vars = tuple(vars)
        # drop exact zeros but keep zero-looking truncated coefficients
        self.terms = {m: c for m, c in terms.items() if not c.is_exact_zero}

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def constant(field, vars, series: PuiseuxSeries) -> "KPoly":
        return KPoly(field, vars, {(0,) * len(vars): series})

    @staticmethod
    def variable(field, vars, name: str) -> "KPoly":
        mono = tuple(1 if v == name else 0 for v in vars)
        if 1 not in mono and vars:
            raise ValueError(f"{name!r} not among {vars}")
        return KPoly(field, vars, {mono: PuiseuxSeries.one(field)})

    @staticmethod
    def zero(field, vars) -> "KPoly":
        return KPoly(field, vars, {})

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in m) for m in self.terms)

    def constant_value(self) -> PuiseuxSeries:
        if not self.terms:
            return PuiseuxSeries.zero(self.field)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def degree(self, var: str) -> int:
        i = self.vars.index(var)
        return max((m[i] for m in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def coefficient_map(self, var: str) -> dict:
        """Split as a univariate polynomial in var: degree -> KPoly in the rest."""
        i = self.vars.index(var)
        rest = tuple(v for v in self.vars if v != var)
        out = {}
        for m, c in self.terms.items():
            key = m[i]
            rm = tuple(e for j, e in enumerate(m) if j != i)
            bucket = out.setdefault(key, {})
            bucket[rm] = bucket[rm].add(c) if rm in bucket else c
        return {d: KPoly(self.field, rest, terms) for d, terms in out.items()}

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other):
        if self.field != other.field or self.vars != other.vars:
            raise ValueError("polynomials over different fields or variable sets")

    def add(self, other: "KPoly") -> "KPoly":
        self._check(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc[m].add(c) if m in acc else c
        return KPoly(self.field, self.vars, acc)

    def neg(self) -> "KPoly":
        return KPoly(self.field, self.vars, {m: c.neg() for m, c in self.terms.items()})

    def sub(self, other: "KPoly") -> "KPoly":
        return self.add(other.neg())

    def mul(self, other: "KPoly") -> "KPoly":
        self._check(other)
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                p = c1.mul(c2)
                acc[m] = acc[m].add(p) if m in acc else p
        return KPoly(self.field, self.vars, acc)

    def pow(self, n: int) -> "KPoly":
        if n < 0:
            raise ValueError("negative polynomial powers are undefined")
        out = KPoly.constant(self.field, self.vars, PuiseuxSeries.one(self.field))
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return out

    def scale(self, series: PuiseuxSeries) -> "KPoly":
        return KPoly(self.field, self.vars,
                     {m: c.mul(series) for m, c in self.terms.items()})

    def derivative(self, var: str) -> "KPoly":
        i = self.vars.index(var)
        acc = {}
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            dm = tuple(e - 1 if j == i else e for j, e in enumerate(m))
            dc = c.scale(self.field.from_fraction(Fraction(m[i])))
            acc[dm] = acc[dm].add(dc) if dm in acc else dc
        return KPoly(self.field, self.vars, acc)

    def substitute(self, assignment: dict) -> "KPoly":
        """Replace variables by polynomials (over the same vars/field)."""
        out = KPoly.zero(self.field, self.vars)
        one = KPoly.constant(self.field, self.vars, PuiseuxSeries.one(self.field))
        cache = {}

        def var_power(name, n):
            if (name, n) not in cache:
                base = assignment.get(name, KPoly.variable(self.field, self.vars, name))
                cache[(name, n)] = base.pow(n)
            return cache[(name, n)]

        for m, c in self.terms.items():
            term = KPoly.constant(self.field, self.vars, c)
            for name, e in zip(self.vars, m):
                if e:
                    term = term.mul(var_power(name, e))
            out = out.add(term)
        return out

    def evaluate(self, point: Point) -> PuiseuxSeries:
        if point.dimension != len(self.vars):
            raise ValueError("dimension mismatch")
        out = PuiseuxSeries.zero(self.field)
        powers = [{0: PuiseuxSeries.one(self.field)} for _ in self.vars]

        def pw(i, n):
            if n not in powers[i]:
                powers[i][n] = point.coords[i].pow_int(n)
            return powers[i][n]

        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    term = term.mul(pw(i, e))
            out = out.add(term)
        return out

    def map_field(self, new_field, embed) -> "KPoly":
        return KPoly(new_field, self.vars,
                     {m: c.map_field(new_field, embed) for m, c in self.terms.items()})

    def as_t_monomial(self):
        """(coefficient, exponent) if the poly is a single constant t-monomial."""
        if self.is_constant():
            s = self.constant_value()
            if len(s.terms) == 1:
                e, c = s.terms[0]
                return c, e
        return None

    # -- exactness and the sympy bridge -----------------------------------------

    def is_exact(self) -> bool:
        return all(c.order is INF for c in self.terms.values())

    def _t_ram(self) -> int:
        return lcm(1, *(e.denominator for c in self.terms.values() for e, _ in c.terms))

    def clear_t_denominators(self) -> "KPoly":
        """Multiply by the t-power that makes all coefficient exponents >= 0."""
        exps = [e for c in self.terms.values() for e, _ in c.terms]
        m = min(exps, default=Fraction(0))
        if m >= 0:
            return self
        return KPoly(self.field, self.vars,
                     {mo: c.shift(-m) for mo, c in self.terms.items()})

    def to_sympy(self, symbols=None, ram=None):
        """Exact polys with nonnegative t-exponents only.

        Returns (expr, symbols, ram): t^q maps to s^(q*ram).
        """
        if not self.is_exact():
            raise ValueError("sympy bridge is restricted to exact polynomials")
        ram = ram or self._t_ram()
        if symbols is not None:
            syms = list(symbols)
        elif self.vars:
            syms = list(sympy.symbols(self.vars))
        else:
            syms = []
        expr = sympy.Integer(0)
        for m, c in self.terms.items():
            mono = sympy.Integer(1)
            for sym, e in zip(syms, m):
                mono *= sym ** e
            for te, coeff in c.terms:
                if te < 0:
                    raise ValueError("clear_t_denominators before the sympy bridge")
                expr += self.field.to_sympy(coeff) * _S ** int(te * ram) * mono
        return expr, syms, ram

    @staticmethod
    def from_sympy(expr, vars, field, ram, syms):
        expr = sympy.expand(expr)
        gens = list(syms) + [_S]
        poly = sympy.Poly(expr, *gens) if gens else None
        acc = {}
        if poly is None:
            return KPoly.constant(field, vars, PuiseuxSeries.from_fraction(
                field, Fraction(str(sympy.Rational(expr)))))
        for mono, coeff in zip(poly.monoms(), poly.coeffs()):
            *ve, spow = mono
            key = tuple(ve)
            te = Fraction(spow, ram)
            c = field.from_sympy(coeff)
            series = PuiseuxSeries.monomial(field, c, te)
            acc[key] = acc[key].add(series) if key in acc else series
        return KPoly(field, tuple(vars), acc)


def resultant(f: KPoly, g: KPoly, var: str) -> KPoly:
    """Res_var(f, g) for exact polynomials; result omits var."""
    f._check(g)
    f = f.clear_t_denominators()
    g = g.clear_t_denominators()
    ram = lcm(f._t_ram(), g._t_ram())
    ef, syms, _ = f.to_sympy(ram=ram)
    eg, _, _ = g.to_sympy(symbols=syms, ram=ram)
    i = f.vars.index(var)
    res = sympy.resultant(ef, eg, syms[i])
    rest = tuple(v for v in f.vars if v != var)
    rest_syms = [s for j, s in enumerate(syms) if j != i]
    return KPoly.from_sympy(res, rest, f.field, ram, rest_syms)


def squarefree_part(f: KPoly) -> tuple:
    """(squarefree part, was_squarefree) for an exact polynomial."""
    f = f.clear_t_denominators()
    expr, syms, ram = f.to_sympy()
    gens = list(syms) + [_S]
    poly = sympy.Poly(expr, *gens)
    sqf = sympy.Poly(sympy.sqf_part(poly.as_expr(), *gens), *gens)
    was = poly.total_degree() == sqf.total_degree()
    out = KPoly.from_sympy(sqf.as_expr(), f.vars, f.field, ram, syms)
    return out, was


def check_squarefree(f: KPoly, var: str) -> bool:
    """gcd(f, df/dvar) constant in var?"""
    _, was = squarefree_part(f)
    return was


def ensure_squarefree(f: KPoly) -> KPoly:
    out, was = squarefree_part(f)
    if not was:
        raise NotSquarefree("polynomial has repeated factors; use the squarefree part")
    return out
