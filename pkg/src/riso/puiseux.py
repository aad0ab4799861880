"""Newton-Puiseux machinery over K0 = k((t^Q)).

Two layers:

* k0_roots: all roots in K0 of a univariate polynomial with series
  coefficients, by the Newton-polygon recursion in t (residue-field roots of
  edge polynomials, then substitution / Newton refinement).

* branches: solutions y = g(x) of a plane equation F(x, y) = 0 as mixed
  series in x with K0 coefficients (exponents rational, possibly negative);
  the classical polygon algorithm run over the field K0, with fractional
  exponents kept in place of ramified substitutions.

Branch series come with the tropical data needed to certify decisions about
them on valuation regimes: within a regime free of tropical crossings, every
(computed or tail) term of a branch satisfies v_t(a_e) >= I0 and the tail
contributes at least I0 + omega * sigma at scale sigma.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientPrecision, NotSquarefree, UnsupportedConfiguration
from .gamma import INF, gv_min
from .series import PuiseuxSeries


class XSeries:
    """Finite sum of c_e * x^e with c_e in K0, truncated at x-order `order`."""

    __slots__ = ("field", "terms", "order")

    def __init__(self, field, terms, order):
        self.field = field
        self.terms = tuple((e, c) for e, c in terms if not c.is_exact_zero)
        self.order = order

    @staticmethod
    def make(field, term_map, order=INF) -> "XSeries":
        items = sorted(term_map.items() if isinstance(term_map, dict) else term_map)
        merged = []
        for e, c in items:
            e = Fraction(e)
            if order is not INF and e >= order:
                continue
            if merged and merged[-1][0] == e:
                merged[-1] = (e, merged[-1][1].add(c))
            else:
                merged.append((e, c))
        return XSeries(field, merged, order)

    @staticmethod
    def zero(field) -> "XSeries":
        return XSeries(field, (), INF)

    @staticmethod
    def constant(series: PuiseuxSeries) -> "XSeries":
        return XSeries(series.field, ((Fraction(0), series),), INF)

    @staticmethod
    def variable(field) -> "XSeries":
        return XSeries(field, ((Fraction(1), PuiseuxSeries.one(field)),), INF)

    @staticmethod
    def monomial(field, coeff_series, exponent) -> "XSeries":
        return XSeries(field, ((Fraction(exponent), coeff_series),), INF)

    @property
    def is_zero_exact(self) -> bool:
        return not self.terms and self.order is INF

    def x_val(self) -> Fraction:
        if not self.terms:
            if self.order is INF:
                return INF
            raise InsufficientPrecision("x-valuation beyond computed order")
        return self.terms[0][0]

    def leading(self):
        return self.terms[0]

    def add(self, other: "XSeries") -> "XSeries":
        order = gv_min(self.order, other.order)
        acc = {}
        for e, c in self.terms + other.terms:
            acc[e] = acc[e].add(c) if e in acc else c
        return XSeries.make(self.field, acc, order)

    def neg(self) -> "XSeries":
        return XSeries(self.field, tuple((e, c.neg()) for e, c in self.terms), self.order)

    def sub(self, other: "XSeries") -> "XSeries":
        return self.add(other.neg())

    def mul(self, other: "XSeries") -> "XSeries":
        if not self.terms or not other.terms:
            order = gv_min(self.order, other.order)
            return XSeries(self.field, (), INF if order is INF else order)
        order = gv_min(
            self.order if self.order is INF else self.order + other.terms[0][0],
            other.order if other.order is INF else other.order + self.terms[0][0],
        )
        acc = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if order is not INF and e >= order:
                    continue
                p = c1.mul(c2)
                acc[e] = acc[e].add(p) if e in acc else p
        return XSeries.make(self.field, acc, order)

    def scale(self, series: PuiseuxSeries) -> "XSeries":
        return XSeries(self.field, tuple((e, c.mul(series)) for e, c in self.terms),
                       self.order)

    def scale_elem(self, q: Fraction) -> "XSeries":
        coeff = self.field.from_fraction(Fraction(q))
        return XSeries(self.field, tuple((e, c.scale(coeff)) for e, c in self.terms),
                       self.order)

    def shift(self, exponent) -> "XSeries":
        d = Fraction(exponent)
        order = self.order if self.order is INF else self.order + d
        return XSeries(self.field, tuple((e + d, c) for e, c in self.terms), order)

    def truncate(self, order) -> "XSeries":
        order = gv_min(self.order, order)
        return XSeries(self.field, tuple((e, c) for e, c in self.terms if e < order),
                       order)

    def pow_int(self, n: int) -> "XSeries":
        out = XSeries.constant(PuiseuxSeries.one(self.field))
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return out

    def map_field(self, new_field, embed) -> "XSeries":
        return XSeries(new_field,
                       tuple((e, c.map_field(new_field, embed)) for e, c in self.terms),
                       self.order)

    def derivative(self) -> "XSeries":
        f = self.field
        out = []
        for e, c in self.terms:
            if e == 0:
                continue
            out.append((e - 1, c.scale(f.from_fraction(e))))
        order = self.order if self.order is INF else self.order - 1
        return XSeries(f, tuple(out), order)

    def invert(self, order_hint=None) -> "XSeries":
        """Inverse as a series in ascending x-powers; needs a visible leading term."""
        if not self.terms:
            raise InsufficientPrecision("cannot invert an x-series with no visible term")
        e0, c0 = self.terms[0]
        if len(self.terms) == 1 and self.order is INF:
            return XSeries.monomial(self.field, c0.invert(), -e0)
        if self.order is INF:
            work = Fraction(order_hint if order_hint is not None else 16)
        else:
            work = self.order - 2 * e0
        unit = self.shift(-e0).scale(c0.invert(order_hint))
        one = XSeries.constant(PuiseuxSeries.one(self.field))
        u = unit.sub(one).truncate(work + e0)
        acc = one.truncate(work + e0)
        term = acc
        if u.terms:
            step = u.terms[0][0]
            if step <= 0:
                raise InsufficientPrecision("x-series unit part is not small")
            m = 1
            while m * step < work + e0:
                term = term.mul(u.neg()).truncate(work + e0)
                if not term.terms:
                    break
                acc = acc.add(term)
                m += 1
        return acc.scale(c0.invert(order_hint)).shift(-e0).truncate(work)

    def evaluate(self, x0: PuiseuxSeries, mode="complex") -> PuiseuxSeries:
        """Value at a concrete series x0 (fractional powers taken as needed)."""
        out = PuiseuxSeries.zero(self.field)
        field = self.field
        for e, c in self.terms:
            p, f2, emb = x0.pow_frac(e, mode=mode)
            if f2 != field:
                raise UnsupportedConfiguration(
                    "evaluation point needs a field extension; embed explicitly first")
            out = out.add(c.mul(p))
        if self.order is not INF:
            x0v = x0.valuation()
            out = out.truncate(self.order * x0v if x0v is not INF else INF)
        return out

    def t_intercept(self) -> Fraction:
        """min v_t over computed coefficients (tail bound I0 on crossing-free regimes)."""
        vals = []
        for _e, c in self.terms:
            vals.append(c.val_floor())
        out = min(vals, default=INF)
        return out

    def val_at(self, sigma: Fraction):
        """min over computed terms of v_t(c) + e*sigma (the valuation line)."""
        best = INF
        for e, c in self.terms:
            v = c.val_floor()
            if v is INF:
                continue
            cand = v + e * sigma
            if cand < best:
                best = cand
        return best

    def render(self, var="x") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            cs = c.render()
            if ("+" in cs[1:] or "-" in cs[1:] or "*" in cs) and e != 0:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            xs = var if e == 1 else (f"{var}^{e}" if e.denominator == 1 else f"{var}^({e})")
            parts.append(xs if cs == "1" else (f"-{xs}" if cs == "-1" else f"{cs}*{xs}"))
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        tail = "" if self.order is INF else f" + O(x^{self.order})"
        return f"<{self.render()}{tail}>"


# -- univariate roots over K0 ---------------------------------------------------


def _lower_hull(points):
    pts = sorted(points)
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append((p[0], p[1]))
    return hull


def _eval_poly(coeffs, value: PuiseuxSeries) -> PuiseuxSeries:
    out = PuiseuxSeries.zero(value.field)
    for c in reversed(coeffs):
        out = out.mul(value).add(c)
    return out


def k0_roots(coeffs, order, mode="complex", ext_bound=24, _depth=0):
    """Roots in K0 of sum c_i z^i, as truncated series, with multiplicities.

    Returns (list[(root, multiplicity)], field, embed).  Roots are refined to
    t-order `order`.  Real mode keeps roots with residue data in the base
    field and silently drops the rest (callers track the drop via branch
    flags at a higher level).
    """
    field = coeffs[0].field
    if _depth > 64:
        raise NotSquarefree("root refinement does not separate; input may have "
                            "repeated roots beyond the working precision")
    coeffs = list(coeffs)
    while coeffs and coeffs[-1].is_exact_zero:
        coeffs.pop()
    if len(coeffs) <= 1:
        return [], field, (lambda c: c)
    roots = []
    zero_mult = 0
    while coeffs[0].is_exact_zero:
        zero_mult += 1
        coeffs.pop(0)
    if zero_mult:
        roots.append((PuiseuxSeries.zero(field), zero_mult))
    if len(coeffs) <= 1:
        return roots, field, (lambda c: c)
    for c in coeffs:
        if not c.terms and c.order is not INF:
            raise InsufficientPrecision(
                "a coefficient is zero-looking at finite order; polygon undecidable")

    pts = [(i, c.val_floor()) for i, c in enumerate(coeffs) if c.terms]
    hull = _lower_hull(pts)
    embed_total = lambda c: c  # noqa: E731
    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        mu = Fraction(v1 - v2, i2 - i1)       # candidate root valuation
        # edge polynomial over the residue field
        edge = {}
        for i, c in enumerate(coeffs):
            if not c.terms:
                continue
            v = c.terms[0][0]
            if v == v1 + (i - i1) * (-mu) and i1 <= i <= i2:
                edge[i - i1] = c.terms[0][1]
        ecoeffs = [edge.get(k, field.zero()) for k in range(i2 - i1 + 1)]
        from .fields import roots_in_field
        res = roots_in_field(field, ecoeffs, mode=mode if mode != "real" else "real",
                             ext_bound=ext_bound)
        if res.field != field:
            coeffs = [c.map_field(res.field, res.embed) for c in coeffs]
            roots = [(r.map_field(res.field, res.embed), m) for r, m in roots]
            prev = embed_total
            embed_total = lambda c, _p=prev, _e=res.embed: _e(_p(c))
            field = res.field
        for lead, mult in res.roots:
            if field.is_zero(lead):
                continue
            approx_root = PuiseuxSeries.monomial(field, lead, mu)
            if mult == 1:
                root = _newton_refine(coeffs, approx_root, order)
                roots.append((root, 1))
            else:
                # recurse around the cluster z = t^mu (lead + z')
                shifted = _compose_shift(coeffs, approx_root, mu)
                inner, field2, emb2 = k0_roots(shifted, order - mu, mode=mode,
                                               ext_bound=ext_bound, _depth=_depth + 1)
                if field2 != field:
                    coeffs = [c.map_field(field2, emb2) for c in coeffs]
                    roots = [(r.map_field(field2, emb2), m) for r, m in roots]
                    approx_root = approx_root.map_field(field2, emb2)
                    prev = embed_total
                    embed_total = lambda c, _p=prev, _e=emb2: _e(_p(c))
                    field = field2
                found = 0
                for r, m in inner:
                    # keep only the cluster (residual valuation > 0); other
                    # scales belong to different hull edges
                    if r.terms and r.terms[0][0] <= 0:
                        continue
                    roots.append((approx_root.add(r), m))
                    found += m
                if found < mult:
                    # cluster did not fully separate: repeated root of the input
                    roots.append((approx_root, mult - found))
    return roots, field, embed_total


def _compose_shift(coeffs, center: PuiseuxSeries, mu: Fraction):
    """p(t^mu * (lead + z')) expressed in z' with the t^mu scaling folded in.

    Substituting z = center + t^mu z' keeps roots' residual parts: new
    coefficients are sum_j C(j, k) c_j center^(j-k) t^(mu k).
    """
    field = center.field
    n = len(coeffs)
    out = [PuiseuxSeries.zero(field) for _ in range(n)]
    # binomial expansion of (center + w)^j with w = t^mu z'
    powers = [PuiseuxSeries.one(field)]
    for _ in range(n):
        powers.append(powers[-1].mul(center))
    from math import comb
    for j, c in enumerate(coeffs):
        if c.is_exact_zero:
            continue
        for k in range(j + 1):
            term = c.scale(field.from_fraction(Fraction(comb(j, k))))
            term = term.mul(powers[j - k]).shift(mu * k)
            out[k] = out[k].add(term)
    return out


def _newton_refine(coeffs, x0: PuiseuxSeries, order) -> PuiseuxSeries:
    """Quadratic refinement of a simple root from its leading term."""
    field = x0.field
    dcoeffs = [c.scale(field.from_fraction(Fraction(i)))
               for i, c in enumerate(coeffs)][1:]
    cur = x0
    for _ in range(64):
        fval = _eval_poly(coeffs, cur.truncate(order))
        if not fval.terms:
            break
        dval = _eval_poly(dcoeffs, cur.truncate(order))
        step = fval.mul(dval.invert(2 * order))
        if step.terms and step.terms[0][0] >= order:
            break
        cur = cur.sub(step)
        cur = cur.truncate(order)
        if not step.terms:
            break
    return cur.truncate(order)


# -- plane branches --------------------------------------------------------------


@dataclass
class Branch:
    """A solution y = g(x) with multiplicity, over a possibly extended field."""

    series: XSeries
    multiplicity: int

    def leading_exponent(self):
        return self.series.x_val()

    def render(self, var="x") -> str:
        m = "" if self.multiplicity == 1 else f"  (multiplicity {self.multiplicity})"
        return self.series.render(var) + m


class BranchSet:
    """Branches of F(x, y) = 0 over x, plus axis/vertical component data.

    vertical_mult > 0 records an x = 0 component (never a graph over x);
    dropped_real counts branch slots discarded in real mode.
    """

    def __init__(self, field, branches, vertical_mult, dropped_real, embed):
        self.field = field
        self.branches = branches
        self.vertical_mult = vertical_mult
        self.dropped_real = dropped_real
        self.embed = embed


def poly_to_ymap(f, xvar: str, yvar: str) -> dict:
    """KPoly in (xvar, yvar) -> {y-degree: XSeries in xvar}."""
    out = {}
    xi = f.vars.index(xvar)
    yi = f.vars.index(yvar)
    for m, c in f.terms.items():
        j = m[yi]
        e = Fraction(m[xi])
        xs = out.setdefault(j, {})
        xs[e] = xs[e].add(c) if e in xs else c
    return {j: XSeries.make(f.field, xs) for j, xs in out.items()
            if any(not cc.is_exact_zero for cc in xs.values())}


def ymap_eval(ymap: dict, g: XSeries, order=INF) -> XSeries:
    """F(x, g(x)) by Horner, truncated at the given x-order."""
    field = g.field
    top = max(ymap, default=0)
    out = XSeries.zero(field)
    for j in range(top, -1, -1):
        out = out.mul(g)
        if order is not INF:
            out = out.truncate(order)
        if j in ymap:
            out = out.add(ymap[j])
    return out.truncate(order) if order is not INF else out


def ymap_derivative(ymap: dict) -> dict:
    out = {}
    for j, c in ymap.items():
        if j > 0:
            term = c.scale_elem(Fraction(j))
            out[j - 1] = out[j - 1].add(term) if j - 1 in out else term
    return out


def _ymap_map_field(ymap, new_field, embed):
    return {j: c.map_field(new_field, embed) for j, c in ymap.items()}


def _ymap_substitute(ymap: dict, e, a: "PuiseuxSeries", field) -> dict:
    """F(x, x^e * (a + y')) as a map in y'."""
    from math import comb

    top = max(ymap)
    apow = [PuiseuxSeries.one(field)]
    for _ in range(top):
        apow.append(apow[-1].mul(a))
    out = {}
    for j, c in ymap.items():
        base = c.shift(Fraction(e) * j)
        for k in range(j + 1):
            factor = apow[j - k].scale(field.from_fraction(Fraction(comb(j, k))))
            term = base.scale(factor)
            out[k] = out[k].add(term) if k in out else term
    return out


def _ymap_x_order(c: XSeries):
    return c.terms[0][0] if c.terms else None


def x_branches(ymap: dict, x_order, t_order, mode="complex", ext_bound=24,
               include_negative=True, _depth=0) -> BranchSet:
    """All branch solutions y = g(x) of F = 0, as truncated mixed series.

    ymap maps y-degrees to XSeries coefficients over a common field.  Slopes
    of every polygon edge are explored (negative leading exponents included
    unless include_negative is False).  The coefficient field is extended as
    edge polynomials demand (complex mode); real mode keeps k-rational edge
    roots and counts the dropped ones.
    """
    field = next(iter(ymap.values())).field
    if _depth > 48:
        raise NotSquarefree("branch recursion does not separate; take the "
                            "squarefree part or raise precision")
    ymap = {j: c for j, c in ymap.items() if c.terms or c.order is not INF}
    ymap = {j: c for j, c in ymap.items() if not c.is_zero_exact}
    if not ymap:
        raise ValueError("zero polynomial has no branch structure")
    for c in ymap.values():
        if not c.terms and c.order is not INF:
            raise InsufficientPrecision("zero-looking coefficient blocks the polygon")

    j0 = min(ymap)
    branches = []
    dropped = 0
    embed_total = lambda c: c  # noqa: E731
    if j0 > 0:
        branches.append(Branch(XSeries.zero(field), j0))     # y = 0 component
        ymap = {j - j0: c for j, c in ymap.items()}
    # common positive x-power: an x = 0 component at top level, plain content
    # inside the recursion (x = 0 is outside the recursed domain)
    vert = min(c.terms[0][0] for c in ymap.values())
    vertical_mult = 0
    if vert > 0:
        vertical_mult = vert if _depth == 0 else 0
        ymap = {j: c.shift(-vert) for j, c in ymap.items()}
    if len(ymap) == 1:
        # pure power of y (after content removal): only the y = 0 branch
        return BranchSet(field, branches, vertical_mult, dropped, embed_total)

    pts = [(j, c.terms[0][0]) for j, c in ymap.items()]
    hull = _lower_hull(pts)
    for (jl, vl), (jr, vr) in zip(hull, hull[1:]):
        e = Fraction(vl - vr, jr - jl)        # leading exponent of this edge
        if not include_negative and e <= 0:
            continue
        edge = {}
        for j, c in ymap.items():
            if jl <= j <= jr and c.terms[0][0] == vl - (j - jl) * e:
                edge[j - jl] = c.terms[0][1]
        ecoeffs = [edge.get(k, PuiseuxSeries.zero(field)) for k in range(jr - jl + 1)]
        roots, field2, emb2 = k0_roots(ecoeffs, t_order, mode=mode, ext_bound=ext_bound)
        if field2 != field:
            ymap = _ymap_map_field(ymap, field2, emb2)
            branches = [Branch(b.series.map_field(field2, emb2), b.multiplicity)
                        for b in branches]
            prev = embed_total
            embed_total = lambda c, _p=prev, _e=emb2: _e(_p(c))
            field = field2
        deg_edge = jr - jl
        found_here = 0
        for a, mult in roots:
            if a.is_exact_zero or (a.terms and a.terms[0][0] != 0):
                continue                       # only unit-scale leading coeffs
            sub = _ymap_substitute(ymap, e, a, field)
            lead_term = XSeries.monomial(field, a, e)
            if mult == 1:
                g = _branch_newton(ymap, lead_term, x_order)
                branches.append(Branch(g, 1))
                found_here += 1
            else:
                inner = x_branches(sub, x_order - e if x_order is not INF else INF,
                                   t_order, mode=mode, ext_bound=ext_bound,
                                   include_negative=False, _depth=_depth + 1)
                if inner.field != field:
                    ymap = _ymap_map_field(ymap, inner.field, inner.embed)
                    branches = [Branch(b.series.map_field(inner.field, inner.embed),
                                       b.multiplicity) for b in branches]
                    lead_term = lead_term.map_field(inner.field, inner.embed)
                    prev = embed_total
                    embed_total = lambda c, _p=prev, _e=inner.embed: _e(_p(c))
                    field = inner.field
                got = 0
                for ib in inner.branches:
                    res = ib.series.shift(e)      # y = x^e(a + y') = lead + x^e y'
                    tail = res
                    full = lead_term.add(tail)
                    branches.append(Branch(full.truncate(x_order), ib.multiplicity))
                    got += ib.multiplicity
                dropped += inner.dropped_real
                if got < mult:
                    branches.append(Branch(lead_term.truncate(x_order), mult - got))
                found_here += mult
        if mode == "real" and found_here < deg_edge:
            dropped += deg_edge - found_here
    return BranchSet(field, branches, vertical_mult, dropped, embed_total)


def _branch_newton(ymap: dict, g0: XSeries, x_order) -> XSeries:
    """Quadratic refinement of a simple branch from its leading term."""
    work = x_order if x_order is not INF else Fraction(16)
    dmap = ymap_derivative(ymap)
    g = g0
    for _ in range(64):
        fval = ymap_eval(ymap, g, work + g0.x_val() * 2 + 4)
        if not fval.terms:
            break
        dval = ymap_eval(dmap, g, work + g0.x_val() * 2 + 4)
        step = fval.mul(dval.invert())
        if step.terms and step.terms[0][0] >= work:
            break
        g = g.sub(step).truncate(work)
        if not step.terms:
            break
    return g.truncate(work)


def branch_residual_valuation(ymap: dict, branch: Branch, at_sigma) -> object:
    """v_t floor of F(x, g(x)) evaluated on the truncated branch at scale sigma."""
    res = ymap_eval(ymap, branch.series, branch.series.order)
    if not res.terms:
        return INF
    return res.val_at(at_sigma)


def critical_sigmas(ymap: dict):
    """Candidate scales where branch valuation lines can break.

    Collects pairwise coefficient crossings within each y-degree and
    three-line balances across degrees; breakpoints of every branch's
    valuation function lie in this set.
    """
    lines = []        # (j, e, v_t) per monomial
    for j, c in ymap.items():
        for e, coeff in c.terms:
            v = coeff.val_floor()
            if v is INF:
                continue
            lines.append((j, e, v))
    out = set()
    for i in range(len(lines)):
        j1, e1, v1 = lines[i]
        for k in range(i + 1, len(lines)):
            j2, e2, v2 = lines[k]
            if j1 == j2:
                if e1 != e2:
                    out.add(Fraction(v2 - v1, e1 - e2))
            else:
                for m in range(len(lines)):
                    j3, e3, v3 = lines[m]
                    if j3 in (j1, j2):
                        continue
                    # sigma, tau with all three terms balanced
                    a1, b1, c1 = e1, j1, v1
                    a2, b2, c2 = e2, j2, v2
                    a3, b3, c3 = e3, j3, v3
                    det = (a1 - a2) * (b1 - b3) - (a1 - a3) * (b1 - b2)
                    if det == 0:
                        continue
                    rhs1 = c2 - c1
                    rhs2 = c3 - c1
                    sigma = Fraction(rhs1 * (b1 - b3) - rhs2 * (b1 - b2), det)
                    out.add(sigma)
    return sorted(s for s in out)
