"""Truncated Puiseux series k((t^Q)), points, and leading-term classes.

A series carries a certified truncation order ``order`` (omega): every term
with exponent below omega is stored exactly, and nothing is known beyond.
``order is INF`` means the series is exact.  The exact zero is the unique
series with empty support and infinite order; an empty support together with
a *finite* order means "indistinguishable from zero at this precision" and
makes valuation-dependent operations raise InsufficientPrecision.

All values are immutable; operations are pure functions.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .config import default_precision
from .errors import InsufficientPrecision
from .fields import QQ_FIELD, nth_root
from .gamma import INF, GammaValue, gv_min


class PuiseuxSeries:
    __slots__ = ("field", "terms", "order")

    def __init__(self, field, terms, order):
        self.field = field
        self.terms = terms      # tuple[(Fraction exponent, coeff)], ascending, nonzero
        self.order = order      # Fraction | INF

    # -- constructors --------------------------------------------------------

    @staticmethod
    def make(field, term_map, order=INF) -> "PuiseuxSeries":
        items = []
        for e, c in sorted(term_map.items() if isinstance(term_map, dict) else term_map):
            e = Fraction(e)
            if field.is_zero(c) or e >= order:
                continue
            items.append((e, c))
        return PuiseuxSeries(field, tuple(items), order)

    @staticmethod
    def zero(field) -> "PuiseuxSeries":
        return PuiseuxSeries(field, (), INF)

    @staticmethod
    def one(field) -> "PuiseuxSeries":
        return PuiseuxSeries(field, ((Fraction(0), field.one()),), INF)

    @staticmethod
    def monomial(field, coeff, exponent) -> "PuiseuxSeries":
        if field.is_zero(coeff):
            return PuiseuxSeries.zero(field)
        return PuiseuxSeries(field, ((Fraction(exponent), coeff),), INF)

    @staticmethod
    def constant(field, coeff) -> "PuiseuxSeries":
        return PuiseuxSeries.monomial(field, coeff, 0)

    @staticmethod
    def from_fraction(field, q) -> "PuiseuxSeries":
        return PuiseuxSeries.constant(field, field.from_fraction(Fraction(q)))

    # -- structure -----------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.order is INF

    @property
    def is_exact_zero(self) -> bool:
        return not self.terms and self.order is INF

    @property
    def has_support(self) -> bool:
        return bool(self.terms)

    @property
    def ramification(self) -> int:
        """Least e with all exponents in (1/e)Z."""
        return lcm(1, *(e.denominator for e, _ in self.terms))

    def valuation(self) -> GammaValue:
        """min supp; INF for the exact zero; error when undecidable."""
        if self.terms:
            return self.terms[0][0]
        if self.order is INF:
            return INF
        raise InsufficientPrecision(
            f"series is 0 up to order {self.order}; cannot decide its valuation")

    def val_floor(self) -> GammaValue:
        """A certified lower bound for the valuation (no error)."""
        return self.terms[0][0] if self.terms else self.order

    def leading(self):
        """(exponent, coefficient) of the leading term."""
        v = self.valuation()
        if v is INF:
            raise ValueError("the zero series has no leading term")
        return self.terms[0]

    def coefficient(self, exponent) -> object:
        """Exact coefficient of t^exponent; error if beyond the known order."""
        e = Fraction(exponent)
        if e >= self.order:
            raise InsufficientPrecision(f"coefficient of t^{e} is beyond order {self.order}")
        for ee, c in self.terms:
            if ee == e:
                return c
        return self.field.zero()

    def residue(self):
        """Coefficient of t^0, requiring nonnegative valuation."""
        if self.terms and self.terms[0][0] < 0:
            raise ValueError("series has negative valuation; no residue")
        return self.coefficient(0)

    # -- arithmetic -----------------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise ValueError(f"incompatible coefficient fields {self.field!r} / {other.field!r}")

    def add(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        self._check_field(other)
        order = gv_min(self.order, other.order)
        acc = dict(self.terms)
        f = self.field
        for e, c in other.terms:
            if e in acc:
                acc[e] = f.add(acc[e], c)
            else:
                acc[e] = c
        return PuiseuxSeries.make(f, acc, order)

    def neg(self) -> "PuiseuxSeries":
        f = self.field
        return PuiseuxSeries(f, tuple((e, f.neg(c)) for e, c in self.terms), self.order)

    def sub(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        return self.add(other.neg())

    def mul(self, other: "PuiseuxSeries") -> "PuiseuxSeries":
        self._check_field(other)
        f = self.field
        if self.is_exact_zero or other.is_exact_zero:
            return PuiseuxSeries.zero(f)
        # tightest certifiable order: unknown tail of one factor shifted by
        # the valuation floor of the other
        order = gv_min(
            self.order if self.order is INF else self.order + other.val_floor(),
            other.order if other.order is INF else other.order + self.val_floor(),
        )
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if order is not INF and e >= order:
                    continue
                p = f.mul(c1, c2)
                if e in acc:
                    acc[e] = f.add(acc[e], p)
                else:
                    acc[e] = p
        return PuiseuxSeries.make(f, acc, order)

    def scale(self, coeff) -> "PuiseuxSeries":
        f = self.field
        if f.is_zero(coeff):
            return PuiseuxSeries.zero(f)
        return PuiseuxSeries(f, tuple((e, f.mul(c, coeff)) for e, c in self.terms), self.order)

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by t^exponent."""
        d = Fraction(exponent)
        order = self.order if self.order is INF else self.order + d
        return PuiseuxSeries(self.field, tuple((e + d, c) for e, c in self.terms), order)

    def truncate(self, order) -> "PuiseuxSeries":
        order = gv_min(self.order, order if order is INF else Fraction(order))
        return PuiseuxSeries(self.field, tuple((e, c) for e, c in self.terms if e < order), order)

    def pow_int(self, n: int, target_order=None) -> "PuiseuxSeries":
        if n < 0:
            return self.invert(target_order).pow_int(-n, target_order)
        out = PuiseuxSeries.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return out

    def invert(self, target_order=None) -> "PuiseuxSeries":
        """Geometric-series inverse.

        Output order: omega_a - 2 v(a) for truncated input (Neumann bound);
        for exact non-monomial input the expansion is cut at target_order
        (default: global precision) past the valuation of the result.
        """
        if not self.terms:
            raise InsufficientPrecision("cannot invert a series with empty support")
        f = self.field
        v, lead = self.terms[0]
        if len(self.terms) == 1 and self.order is INF:
            return PuiseuxSeries.monomial(f, f.inv(lead), -v)
        if self.order is INF:
            out_order = -v + Fraction(target_order if target_order is not None
                                      else default_precision())
        else:
            out_order = self.order - 2 * v
            if out_order <= -v:
                raise InsufficientPrecision(
                    f"inverse would be certified only to order {out_order} <= valuation {-v}")
        # a = lead t^v (1 + u), v(u) > 0:  1/a = lead^-1 t^-v sum (-u)^m
        unit = self.shift(-v).scale(f.inv(lead))          # 1 + u
        u = unit.sub(PuiseuxSeries.one(f)).truncate(out_order + v)
        acc = PuiseuxSeries.one(f).truncate(out_order + v)
        term = acc
        if u.has_support:
            step = u.terms[0][0]
            m = 1
            while m * step < out_order + v:
                term = term.mul(u.neg()).truncate(out_order + v)
                if not term.has_support:
                    break
                acc = acc.add(term)
                m += 1
        return acc.scale(f.inv(lead)).shift(-v).truncate(out_order)

    def div(self, other: "PuiseuxSeries", target_order=None) -> "PuiseuxSeries":
        return self.mul(other.invert(target_order))

    def pow_frac(self, r: Fraction, mode="complex", ext_bound=None, target_order=None):
        """a^r for rational r; may extend the field to take the leading root.

        Returns (series, field, embed) where embed maps old-field elements in.
        """
        from .fields import DEFAULT_EXT_BOUND
        r = Fraction(r)
        if r.denominator == 1:
            return self.pow_int(r.numerator, target_order), self.field, (lambda c: c)
        if not self.terms:
            raise InsufficientPrecision("cannot take fractional power without a leading term")
        f = self.field
        v, lead = self.terms[0]
        root, f2, embed = nth_root(f, lead, r.denominator, mode=mode,
                                   ext_bound=ext_bound or DEFAULT_EXT_BOUND)
        croot = f2.pow(root, r.numerator)
        series = self.map_field(f2, embed) if f2 != f else self
        unit = series.shift(-v).scale(f2.inv(embed(lead)))      # 1 + u
        one = PuiseuxSeries.one(f2)
        u = unit.sub(one)
        if u.order is INF and not u.has_support:
            body = one
            u_order = INF
        else:
            u_order = u.order if u.order is not INF else Fraction(
                target_order if target_order is not None else default_precision())
            u = u.truncate(u_order)
            body = one.truncate(u_order)
            if u.has_support:
                step = u.terms[0][0]
                term = one.truncate(u_order)
                coeff = Fraction(1)
                m = 0
                while (m + 1) * step < u_order:
                    coeff = coeff * (r - m) / (m + 1)
                    term = term.mul(u).truncate(u_order)
                    if not term.has_support:
                        break
                    body = body.add(term.scale(f2.from_fraction(coeff)))
                    m += 1
        out_order = INF if (u_order is INF and self.order is INF) else u_order
        out = body.truncate(out_order).scale(croot).shift(r * v)
        return out, f2, embed

    def map_field(self, new_field, embed) -> "PuiseuxSeries":
        return PuiseuxSeries(new_field,
                             tuple((e, embed(c)) for e, c in self.terms), self.order)

    # -- comparison / rendering ------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PuiseuxSeries) and self.field == other.field
                and self.order == other.order and len(self.terms) == len(other.terms)
                and all(e1 == e2 and self.field.eq(c1, c2)
                        for (e1, c1), (e2, c2) in zip(self.terms, other.terms)))

    def __hash__(self):
        return hash((self.field, self.order, tuple(e for e, _ in self.terms)))

    def sort_key(self):
        return tuple((e, self.field.sort_key(c)) for e, c in self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            cs = self.field.render(c)
            if any(op in cs[1:] for op in "+-") or "/" in cs:
                if e != 0:
                    cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            ts = "t" if e == 1 else (f"t^{e}" if e.denominator == 1 else f"t^({e})")
            if cs == "1":
                parts.append(ts)
            elif cs == "-1":
                parts.append(f"-{ts}")
            else:
                parts.append(f"{cs}*{ts}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        tail = "" if self.order is INF else f" + O(t^{self.order})"
        return f"<{self.render()}{tail}>"


# -- points and leading-term classes ------------------------------------------


class Point:
    """A tuple of series sharing one coefficient field."""

    __slots__ = ("field", "coords")

    def __init__(self, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("points need at least one coordinate")
        field = coords[0].field
        for s in coords[1:]:
            if s.field != field:
                raise ValueError("point coordinates over different coefficient fields")
        self.field = field
        self.coords = coords

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def sub(self, other: "Point") -> "Point":
        return Point(tuple(a.sub(b) for a, b in zip(self.coords, other.coords)))

    def valuation(self) -> GammaValue:
        return tuple_valuation(self.coords)

    def map_field(self, new_field, embed) -> "Point":
        return Point(tuple(c.map_field(new_field, embed) for c in self.coords))

    def truncate(self, order) -> "Point":
        return Point(tuple(c.truncate(order) for c in self.coords))

    def render(self) -> str:
        return "(" + ", ".join(c.render() for c in self.coords) + ")"

    def __eq__(self, other):
        return isinstance(other, Point) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Point{self.render()}"


def tuple_valuation(coords) -> GammaValue:
    """v(a) = min_i v(a_i), certified; raises when truncation hides the min."""
    known = [s.terms[0][0] for s in coords if s.terms]
    if not known:
        if all(s.order is INF for s in coords):
            return INF
        raise InsufficientPrecision("all coordinates look like 0 at finite order")
    lam = min(known)
    for s in coords:
        # an unseen coordinate with order < lam could still achieve the minimum
        if not s.terms and s.order < lam:
            raise InsufficientPrecision(
                f"a zero-looking coordinate of order {s.order} could affect the minimum {lam}")
    return lam


class RVClass:
    """Leading-term class of a tuple: valuation plus the t^lambda coefficients."""

    __slots__ = ("val", "leading", "field")

    def __init__(self, val, leading, field):
        self.val = val
        self.leading = tuple(leading)
        self.field = field

    @property
    def is_zero(self) -> bool:
        return self.val is INF

    def __eq__(self, other):
        if not isinstance(other, RVClass):
            return NotImplemented
        if self.val != other.val or len(self.leading) != len(other.leading):
            return False
        return all(self.field.eq(a, b) for a, b in zip(self.leading, other.leading))

    def __hash__(self):
        return hash((self.val, len(self.leading)))

    def sort_key(self):
        v = self.val
        return ((1,) if v is INF else (0, v),
                tuple(self.field.sort_key(c) for c in self.leading))

    def __repr__(self):
        if self.is_zero:
            return "rv(0)"
        body = ", ".join(self.field.render(c) for c in self.leading)
        return f"rv(t^{self.val} * ({body}))"


def rv(point: Point) -> RVClass:
    """The leading-term class in RV^(n)."""
    lam = tuple_valuation(point.coords)
    f = point.field
    if lam is INF:
        return RVClass(INF, tuple(f.zero() for _ in point.coords), f)
    leading = []
    for s in point.coords:
        if s.order is not INF and s.order <= lam:
            raise InsufficientPrecision("coordinate order too small to read the leading tuple")
        leading.append(s.coefficient(lam))
    return RVClass(lam, tuple(leading), f)


def approx(a: Point, b: Point) -> bool:
    """a ~ b iff v(a-b) > v(a), or both are the zero tuple."""
    if a.dimension != b.dimension:
        raise ValueError("dimension mismatch")
    d = a.sub(b)
    if all(s.is_exact_zero for s in d.coords):
        return True             # equal points (covers a = b = 0)
    va = tuple_valuation(a.coords)
    if va is INF:
        return False            # a = 0, b != 0
    # v(d) is pinned between floor (orders of zero-looking coords) and the
    # smallest visible term
    d_known = min((s.terms[0][0] for s in d.coords if s.terms), default=None)
    d_floor = min((s.order for s in d.coords if not s.terms), default=INF)
    if d_known is not None and d_known <= d_floor:
        return d_known > va     # v(d) = d_known exactly
    if d_floor > va:
        return True             # v(d) >= d_floor > va
    if d_known is not None and d_known <= va:
        return False            # v(d) <= d_known <= va
    raise InsufficientPrecision("difference order does not decide the ~ relation")
