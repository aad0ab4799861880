"""Input language: polynomials over declared variables plus the uniformizer t.

Grammar (LL(1), standard precedence ^ > unary - > * / > + -):

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' atom)?
    atom     := INTEGER | NAME | '(' expr ')'

Exponents must evaluate to rational constants; exponents of variables must be
nonnegative integers, while t takes arbitrary rationals.  Division is only
defined when the divisor evaluates to a rational constant or a pure power
of t.  ``t`` is reserved and cannot be declared as a curve variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, UnknownVariable
from .fields import QQ_FIELD
from .series import PuiseuxSeries

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[()+\-*/^,]|>=|>)|(\S))")


def tokenize(source: str):
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if not m:
            break
        if m.group(4):
            raise ParseError(f"unexpected character {m.group(4)!r}", position=m.start(4))
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(source)))
    return tokens


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction

    def render(self, prec=0):
        if self.value.denominator == 1 and self.value >= 0:
            return str(self.value)
        s = str(self.value)
        return f"({s})" if prec > 0 else s


@dataclass(frozen=True)
class Sym:
    name: str

    def render(self, prec=0):
        return self.name


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object

    _PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}

    def render(self, prec=0):
        p = self._PREC[self.op]
        if self.op == "^":
            left = self.left.render(p + 1)
            right = self.right.render(p + 1)
            if isinstance(self.right, Num) and (self.right.value.denominator != 1
                                                or self.right.value < 0):
                right = f"({self.right.value})"
            out = f"{left}^{right}"
        else:
            left = self.left.render(p)
            right = self.right.render(p + (1 if self.op in ("-", "/") else 0))
            out = f"{left} {self.op} {right}" if self.op in "+-" else f"{left}{self.op}{right}"
        return f"({out})" if prec > p else out


@dataclass(frozen=True)
class Neg:
    arg: object

    def render(self, prec=0):
        out = f"-{self.arg.render(3)}"
        return f"({out})" if prec > 3 else out


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.k]
        if kind and tok[0] != kind or value is not None and tok[1] != value:
            expected = [value if value else kind]
            raise ParseError(f"unexpected {tok[1]!r}", position=tok[2], expected=expected)
        self.k += 1
        return tok

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take("op")[1]
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take("op")[1]
            node = BinOp(op, node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take("op")
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[:2] == ("op", "^"):
            self.take("op")
            if self.peek()[:2] == ("op", "-"):
                self.take("op")
                exp = Neg(self.parse_atom())
            else:
                exp = self.parse_atom()
            return BinOp("^", base, exp)
        return base

    def parse_atom(self):
        kind, value, posn = self.peek()
        if kind == "int":
            self.take()
            return Num(Fraction(value))
        if kind == "name":
            self.take()
            return Sym(value)
        if (kind, value) == ("op", "("):
            self.take()
            node = self.parse_expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected {value!r}", position=posn,
                         expected=["integer", "name", "("])


def parse(source: str):
    """Parse an expression; raises ParseError with position on bad input."""
    p = _Parser(source)
    node = p.parse_expr()
    p.take("end")
    return node


def render(node) -> str:
    return node.render()


# -- evaluation ----------------------------------------------------------------


def _as_constant(node) -> Fraction:
    """Evaluate a parse tree that must be a rational constant."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        return -_as_constant(node.arg)
    if isinstance(node, BinOp):
        a = _as_constant(node.left)
        b = _as_constant(node.right)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            if b == 0:
                raise ParseError("division by zero in a constant")
            return a / b
        if node.op == "^":
            if b.denominator != 1:
                raise ParseError(f"fractional power of the constant {a} is not rational")
            return a ** b.numerator
    raise ParseError("expected a rational constant")


def to_poly(node, variables, field=QQ_FIELD):
    """Evaluate a parse tree into a polynomial over series coefficients.

    ``variables`` lists the curve variables; t is implicit and reserved.
    """
    from .poly import KPoly

    variables = tuple(variables)
    if "t" in variables:
        raise UnknownVariable("t is the uniformizer and cannot be a curve variable")

    def ev(n) -> KPoly:
        if isinstance(n, Num):
            return KPoly.constant(field, variables, PuiseuxSeries.from_fraction(field, n.value))
        if isinstance(n, Sym):
            if n.name == "t":
                return KPoly.constant(field, variables,
                                      PuiseuxSeries.monomial(field, field.one(), 1))
            if n.name not in variables:
                raise UnknownVariable(
                    f"unknown variable {n.name!r} (declared: {', '.join(variables) or 'none'})")
            return KPoly.variable(field, variables, n.name)
        if isinstance(n, Neg):
            return ev(n.arg).neg()
        if isinstance(n, BinOp):
            if n.op == "^":
                exp = _as_constant(n.right)
                base = ev(n.left)
                if exp.denominator == 1 and exp >= 0:
                    return base.pow(exp.numerator)
                # fractional or negative exponents only on constant t-monomials
                if base.is_constant():
                    s = base.constant_value()
                    if len(s.terms) == 1:
                        e0, c0 = s.terms[0]
                        if exp.denominator == 1:
                            co = field.pow(c0, exp.numerator)
                            return KPoly.constant(
                                field, variables,
                                PuiseuxSeries.monomial(field, co, e0 * exp))
                        if field.eq(c0, field.one()):
                            return KPoly.constant(
                                field, variables,
                                PuiseuxSeries.monomial(field, field.one(), e0 * exp))
                    raise ParseError(
                        "fractional powers are only supported for powers of t")
                raise ParseError("variable exponents must be nonnegative integers")
            a = ev(n.left)
            b = ev(n.right)
            if n.op == "+":
                return a.add(b)
            if n.op == "-":
                return a.sub(b)
            if n.op == "*":
                return a.mul(b)
            if n.op == "/":
                if not b.is_constant():
                    raise ParseError("division is only defined by constants or powers of t")
                s = b.constant_value()
                if len(s.terms) != 1:
                    raise ParseError("division is only defined by constants or powers of t")
                e0, c0 = s.terms[0]
                return a.scale(PuiseuxSeries.monomial(field, field.inv(c0), -e0))
        raise ParseError(f"cannot evaluate node {n!r}")

    return ev(node)


def parse_poly(source: str, variables, field=QQ_FIELD):
    return to_poly(parse(source), variables, field)


def parse_series(source: str, field=QQ_FIELD) -> PuiseuxSeries:
    """Series literal: an expression in t alone, e.g. ``1 + 2*t^(3/2)``."""
    poly = to_poly(parse(source), (), field)
    return poly.constant_value()


def parse_point(source: str, field=QQ_FIELD):
    """A tuple literal ``(expr, ..., expr)`` of series."""
    from .series import Point

    source = source.strip()
    if not (source.startswith("(") and source.endswith(")")):
        return Point([parse_series(source, field)])
    parts = _split_commas(source[1:-1])
    return Point([parse_series(p, field) for p in parts])


def parse_ball(source: str, field=QQ_FIELD):
    """Ball literal ``B((c1,...,cn), >=p/q)`` or ``B(..., >p/q)``."""
    from .balls import Ball

    s = source.strip()
    if not s.startswith("B(") or not s.endswith(")"):
        raise ParseError("ball literal must look like B((...), >=r)")
    body = s[2:-1]
    parts = _split_commas(body)
    if len(parts) < 2:
        raise ParseError("ball literal needs a center and a radius")
    rad_part = parts[-1].strip()
    if rad_part.startswith(">="):
        closed, rad_src = True, rad_part[2:]
    elif rad_part.startswith(">"):
        closed, rad_src = False, rad_part[1:]
    else:
        raise ParseError("ball radius must start with >= or >")
    radius = _as_constant(parse(rad_src))
    center_src = ",".join(parts[:-1]).strip()
    point = parse_point(center_src, field)
    return Ball(point, radius, closed=closed)


def _split_commas(src: str):
    parts = []
    depth = 0
    cur = []
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (x.strip() for x in parts) if p]
