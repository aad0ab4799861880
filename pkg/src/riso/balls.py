"""Valuative balls in K^n and their ultrametric order structure.

A ball is B(c, >=r) (closed) or B(c, >r) (open) with rational radius.  The
canonical form truncates the center to the exponents that matter for set
identity (< r closed, <= r open), so set-equal balls compare equal.  Radii
are finite in all computations; the symbolic whole-space root appears only
in riso-tree summaries.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InsufficientPrecision, NotNested
from .gamma import INF
from .series import Point, PuiseuxSeries


def _val_bounds(coords):
    """Certified interval [lo, hi] containing v of a coordinate tuple."""
    known = min((s.terms[0][0] for s in coords if s.terms), default=None)
    floor = min((s.order for s in coords if not s.terms), default=INF)
    if known is None:
        return floor, INF
    if known <= floor:
        return known, known
    return floor, known


def _decide(lo, hi, threshold, strict: bool):
    """Decide v >= threshold (or > if strict) from the interval [lo, hi]."""
    if strict:
        if lo > threshold:
            return True
        if hi is not INF and hi <= threshold:
            return False
    else:
        if lo >= threshold:
            return True
        if hi is not INF and hi < threshold:
            return False
    raise InsufficientPrecision(
        f"valuation only known to lie in [{lo}, {hi}]; cannot compare with {threshold}")


class Ball:
    __slots__ = ("center", "radius", "closed")

    def __init__(self, center: Point, radius, closed: bool = True):
        radius = Fraction(radius)
        for s in center.coords:
            if s.order is not INF:
                deep_enough = s.order >= radius if closed else s.order > radius
                if not deep_enough:
                    raise InsufficientPrecision(
                        f"center known to order {s.order} cannot define a "
                        f"{'closed' if closed else 'open'} ball of radius {radius}")
        self.center = Point(tuple(
            PuiseuxSeries(s.field,
                          tuple((e, c) for e, c in s.terms
                                if (e < radius if closed else e <= radius)),
                          s.order)
            for s in center.coords))
        self.radius = radius
        self.closed = closed

    @property
    def dimension(self) -> int:
        return self.center.dimension

    @property
    def field(self):
        return self.center.field

    def canonical_key(self):
        return (
            tuple(tuple((e, s.field.sort_key(c)) for e, c in s.terms)
                  for s in self.center.coords),
            self.radius,
            self.closed,
        )

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (self.radius == other.radius and self.closed == other.closed
                and self.dimension == other.dimension
                and all(a.terms == b.terms or
                        (len(a.terms) == len(b.terms)
                         and all(e1 == e2 and a.field.eq(c1, c2)
                                 for (e1, c1), (e2, c2) in zip(a.terms, b.terms)))
                        for a, b in zip(self.center.coords, other.center.coords)))

    def __hash__(self):
        return hash((self.radius, self.closed,
                     tuple(tuple(e for e, _ in s.terms) for s in self.center.coords)))

    def contains(self, p: Point) -> bool:
        """Membership v(p - center) >= r (closed) / > r (open)."""
        d = p.sub(self.center)
        lo, hi = _val_bounds(d.coords)
        return _decide(lo, hi, self.radius, strict=not self.closed)

    def contains_ball(self, other: "Ball") -> bool:
        """Set containment other subseteq self, decided exactly."""
        d = other.center.sub(self.center)
        lo, hi = _val_bounds(d.coords)
        center_ok = _decide(lo, hi, self.radius, strict=not self.closed)
        if not center_ok:
            return False
        if self.closed:
            return other.radius >= self.radius
        if other.closed:
            return other.radius > self.radius
        return other.radius >= self.radius

    def render(self) -> str:
        cs = ", ".join(s.render() for s in self.center.coords)
        op = ">=" if self.closed else ">"
        return f"B(({cs}), {op}{self.radius})"

    def to_json(self) -> dict:
        return {
            "center": [s.render() for s in self.center.coords],
            "radius": str(self.radius),
            "kind": "closed" if self.closed else "open",
        }

    def __repr__(self):
        return self.render()


def relate(b1: Ball, b2: Ball) -> str:
    """One of 'equal', 'B1<B2' (B1 strictly inside B2), 'B2<B1', 'disjoint'.

    The ultrametric dichotomy leaves no fifth case: balls that meet are
    nested.
    """
    in21 = b1.contains_ball(b2)
    in12 = b2.contains_ball(b1)
    if in21 and in12:
        return "equal"
    if in21:
        return "B2<B1"
    if in12:
        return "B1<B2"
    return "disjoint"


def join(p1: Point, p2: Point) -> Ball:
    """Smallest closed ball containing both points; radius v(p1 - p2)."""
    d = p1.sub(p2)
    lo, hi = _val_bounds(d.coords)
    if lo != hi:
        raise InsufficientPrecision(
            f"v(p1 - p2) only known to lie in [{lo}, {hi}]")
    if lo is INF:
        raise ValueError("join of equal points is not a ball")
    return Ball(p1, lo, closed=True)


def resolve_chain(chain) -> Ball:
    """Minimal ball of a finite nested chain (its nonempty intersection)."""
    balls = list(chain)
    if not balls:
        raise NotNested("empty chain")
    minimal = balls[0]
    for b in balls[1:]:
        rel = relate(minimal, b)
        if rel in ("equal", "B1<B2"):
            continue
        if rel == "B2<B1":
            minimal = b
        else:
            raise NotNested(f"{minimal.render()} and {b.render()} are disjoint")
    for b in balls:
        if relate(minimal, b) not in ("equal", "B1<B2"):
            raise NotNested("chain is not pairwise nested")
    return minimal


def unit_ball(field, n: int, closed: bool = True) -> Ball:
    """O^n (closed) or M^n (open), centered at the origin."""
    origin = Point(tuple(PuiseuxSeries.zero(field) for _ in range(n)))
    return Ball(origin, 0, closed=closed)
