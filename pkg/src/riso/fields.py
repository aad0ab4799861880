"""Exact coefficient fields for series arithmetic.

Three concrete fields back every computation: the rationals, a simple
extension Q[z]/(m) with m monic irreducible, and a prime field F_p.
Elements are plain hashable Python data (Fraction, coefficient tuples,
ints), so series stay cheap to copy and compare.  sympy is used only
behind :func:`roots_in_field` / :func:`extend_by_irreducible` for
univariate factorisation and primitive-element computations.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import sympy

from .errors import ExtensionRequired

_Z = sympy.Symbol("_riso_z")

#: hard cap on the degree of the flattened coefficient extension
DEFAULT_EXT_BOUND = 24


class Rationals:
    """The field Q; elements are fractions.Fraction."""

    char = 0
    degree = 1

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("riso-QQ")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_fraction(self, q: Fraction):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        return a / b

    def pow(self, a, n: int):
        return a ** n

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def sort_key(self, a):
        return (0, a)

    def render(self, a) -> str:
        return str(a)

    def to_sympy(self, a):
        return sympy.Rational(a.numerator, a.denominator)

    def from_sympy(self, e):
        e = sympy.nsimplify(e, rational=True)
        r = sympy.Rational(e)
        return Fraction(int(r.p), int(r.q))


class PrimeField:
    """The prime field F_p; elements are ints in [0, p)."""

    degree = 1

    def __init__(self, p: int):
        if p < 2 or not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("riso-GF", self.p))

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_fraction(self, q: Fraction):
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator {q.denominator} not invertible mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def sort_key(self, a):
        return (0, a % self.p)

    def render(self, a) -> str:
        return str(a % self.p)

    def to_sympy(self, a):
        return sympy.Integer(a)

    def from_sympy(self, e):
        return int(e) % self.p


class NumberField:
    """A simple extension Q[z]/(m), m monic irreducible.

    Elements are tuples of Fractions (coefficients of 1, g, g^2, ...), always
    of length ``degree``.  ``root_index`` pins a concrete complex root of m so
    nested extensions compose deterministically.
    """

    char = 0

    def __init__(self, minpoly: tuple, gen_name: str = "a", root_index: int = 0):
        mp = tuple(Fraction(c) for c in minpoly)
        if len(mp) < 3 or mp[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 2")
        self.minpoly = mp
        self.degree = len(mp) - 1
        self.root_index = root_index
        if gen_name == "a" and mp == (Fraction(1), Fraction(0), Fraction(1)):
            gen_name = "i"
        self.gen_name = gen_name

    def __repr__(self):
        return f"QQ[{self.gen_name}]/({self._minpoly_str()})"

    def _minpoly_str(self):
        return render_univariate(Rationals(), self.minpoly, self.gen_name)

    def __eq__(self, other):
        return (isinstance(other, NumberField) and other.minpoly == self.minpoly
                and other.root_index == self.root_index)

    def __hash__(self):
        return hash(("riso-NF", self.minpoly, self.root_index))

    @property
    def root_expr(self):
        expr = sum(sympy.Rational(c.numerator, c.denominator) * _Z ** k
                   for k, c in enumerate(self.minpoly))
        return sympy.CRootOf(sympy.Poly(expr, _Z), self.root_index)

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return (Fraction(1),) + (Fraction(0),) * (self.degree - 1)

    def gen(self):
        v = [Fraction(0)] * self.degree
        v[1] = Fraction(1)
        return tuple(v)

    def from_fraction(self, q: Fraction):
        return (Fraction(q),) + (Fraction(0),) * (self.degree - 1)

    def from_vector(self, coeffs: Iterable) -> tuple:
        v = [Fraction(c) for c in coeffs]
        if len(v) > self.degree:
            v = self._reduce(v)
        v += [Fraction(0)] * (self.degree - len(v))
        return tuple(v[:self.degree]) if len(v) == self.degree else tuple(self._reduce(v))

    def _reduce(self, v):
        # division with remainder by the monic minpoly
        v = list(v)
        d = self.degree
        while len(v) > d:
            lead = v.pop()
            if lead:
                for k in range(d):
                    v[len(v) - d + k] -= lead * self.minpoly[k]
        v += [Fraction(0)] * (d - len(v))
        return v

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
        return tuple(self._reduce(prod))

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid in Q[z] against the minpoly
        r0, r1 = list(self.minpoly), list(a)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while True:
            r1 = _trimmed(r1)
            if len(r1) == 1:
                c = r1[0]
                return self.from_vector([x / c for x in s1])
            q, r = _polydivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _polysub(s0, _polymul(q, s1))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            n >>= 1
        return out

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def eq(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def sort_key(self, a):
        return (1, tuple(a))

    def is_rational(self, a):
        return all(x == 0 for x in a[1:])

    def as_fraction(self, a):
        if not self.is_rational(a):
            raise ValueError(f"{self.render(a)} is not rational")
        return a[0]

    def render(self, a) -> str:
        return render_univariate(Rationals(), a, self.gen_name)

    def to_sympy(self, a):
        theta = self.root_expr
        return sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * theta ** k
                           for k, c in enumerate(a)])

    def from_sympy(self, e):
        theta = self.root_expr
        expr = sympy.expand(e.subs(theta, _Z))
        if expr.has(sympy.CRootOf):
            raise ValueError(f"cannot express {e} in {self!r}")
        poly = sympy.Poly(expr, _Z, domain="QQ")
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return self.from_vector(coeffs)


QQ_FIELD = Rationals()


# -- small dense polynomial helpers over Q (ascending coefficient lists) -----

def _trimmed(v):
    v = list(v)
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return v


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _polydivmod(a, b):
    a = _trimmed(a)
    b = _trimmed(b)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    r = list(a)
    while len(_trimmed(r)) >= len(b) and _trimmed(r) != [Fraction(0)]:
        r = _trimmed(r)
        if len(r) < len(b):
            break
        c = r[-1] / b[-1]
        k = len(r) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            r[k + j] -= c * y
        r = r[:-1]
    return _trimmed(q), _trimmed(r)


def render_univariate(field, coeffs, var: str) -> str:
    """Render an ascending coefficient sequence as a readable polynomial."""
    parts = []
    for k, c in enumerate(coeffs):
        if field.is_zero(c):
            continue
        cs = field.render(c)
        if k == 0:
            parts.append(cs)
        else:
            xs = var if k == 1 else f"{var}^{k}"
            if cs == "1":
                parts.append(xs)
            elif cs == "-1":
                parts.append(f"-{xs}")
            else:
                parts.append(f"{cs}*{xs}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


# -- factorisation / roots (sympy bridge) ------------------------------------

def _to_sympy_poly(field, coeffs):
    expr = sympy.Add(*[field.to_sympy(c) * _Z ** k for k, c in enumerate(coeffs)])
    if isinstance(field, PrimeField):
        return sympy.Poly(expr, _Z, modulus=field.p)
    if isinstance(field, NumberField):
        return sympy.Poly(expr, _Z, extension=field.root_expr)
    return sympy.Poly(expr, _Z, domain="QQ")


def _factor_list(field, coeffs):
    """Irreducible factorisation over the field; ascending-coefficient output."""
    poly = _to_sympy_poly(field, coeffs)
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        fc = [field.from_sympy(c) for c in reversed(fac.all_coeffs())]
        out.append((fc, int(mult)))
    out.sort(key=lambda fm: (len(fm[0]), [field.sort_key(c) for c in fm[0]]))
    return out


def is_irreducible(field, coeffs) -> bool:
    fl = _factor_list(field, _trim_field(field, coeffs))
    return len(fl) == 1 and fl[0][1] == 1 and len(fl[0][0]) == len(_trim_field(field, coeffs))


def _trim_field(field, coeffs):
    v = list(coeffs)
    while len(v) > 1 and field.is_zero(v[-1]):
        v.pop()
    return v


class RootsResult:
    """Roots of a univariate polynomial, possibly over an extended field.

    ``embed`` maps old-field elements into ``field``; ``dropped`` counts roots
    discarded in real mode because their coefficients are not rational.
    """

    def __init__(self, roots, field, embed, dropped=0):
        self.roots = roots
        self.field = field
        self.embed = embed
        self.dropped = dropped


def _linear_roots(field, factors):
    roots = []
    remaining = []
    for fc, mult in factors:
        if len(fc) == 2:
            roots.append((field.div(field.neg(fc[0]), fc[1]), mult))
        else:
            remaining.append((fc, mult))
    return roots, remaining


def _build_composite(field, theta, beta, ext_bound):
    """Flatten Q(theta, beta) into one NumberField; returns (field, embed, beta_vec)."""
    mp, _coeffs, reps = sympy.polys.numberfields.primitive_element(
        [theta, beta], _Z, ex=True, polys=False)
    mp_poly = sympy.Poly(mp, _Z, domain="QQ")
    if mp_poly.degree() > ext_bound:
        raise ExtensionRequired(
            f"flattened extension degree {mp_poly.degree()} exceeds bound {ext_bound}")
    new_field = NumberField(tuple(Fraction(int(c.p), int(c.q))
                                  for c in reversed(mp_poly.all_coeffs())))
    theta_vec = new_field.from_vector([Fraction(x) for x in reversed(list(reps[0]))])
    beta_vec = new_field.from_vector([Fraction(x) for x in reversed(list(reps[1]))])

    def embed(elem, _nf=new_field, _tv=theta_vec):
        out = _nf.zero()
        power = _nf.one()
        for c in elem:
            out = _nf.add(out, _nf.mul(_nf.from_fraction(c), power))
            power = _nf.mul(power, _tv)
        return out

    return new_field, embed, beta_vec


def extend_by_irreducible(field, minpoly_coeffs, ext_bound=DEFAULT_EXT_BOUND):
    """Extend to a simple extension containing a root of the given irreducible.

    Returns (new_field, embed, new_root).  The composite of a NumberField and
    a further algebraic root is flattened through a primitive element; the
    chosen root is verified exactly in the new field.
    """
    deg_new = len(minpoly_coeffs) - 1
    if isinstance(field, PrimeField):
        raise ExtensionRequired("finite-field extensions are not modelled")
    if isinstance(field, Rationals):
        if deg_new > ext_bound:
            raise ExtensionRequired(
                f"extension degree {deg_new} exceeds bound {ext_bound}")
        lead = Fraction(minpoly_coeffs[-1])
        nf = NumberField(tuple(Fraction(c) / lead for c in minpoly_coeffs))
        return nf, (lambda c, _nf=nf: _nf.from_fraction(c)), nf.gen()

    if field.degree * deg_new > ext_bound:
        raise ExtensionRequired(
            f"flattened extension degree may reach {field.degree * deg_new} "
            f"> bound {ext_bound}")
    theta = field.root_expr
    w = sympy.Symbol("_riso_w")
    # absolute polynomial of the new root: eliminate theta by a resultant
    fac_zw = sympy.expand(sympy.Add(
        *[field.to_sympy(c).subs(theta, _Z) * w ** k
          for k, c in enumerate(minpoly_coeffs)]))
    m0 = sympy.Add(*[sympy.Rational(c.numerator, c.denominator) * _Z ** k
                     for k, c in enumerate(field.minpoly)])
    absolute = sympy.Poly(sympy.resultant(m0, fac_zw, _Z), w, domain="QQ")
    candidates = []
    for fac, _m in absolute.factor_list()[1]:
        if fac.degree() == 0:
            continue
        for idx in range(fac.degree()):
            candidates.append(sympy.CRootOf(fac, idx))
    for beta in candidates:
        try:
            new_field, embed, beta_vec = _build_composite(field, theta, beta, ext_bound)
        except ExtensionRequired:
            raise
        except Exception:  # wrong conjugate pairing; try the next root
            continue
        acc = new_field.zero()
        power = new_field.one()
        for c in minpoly_coeffs:
            acc = new_field.add(acc, new_field.mul(embed(c), power))
            power = new_field.mul(power, beta_vec)
        if new_field.is_zero(acc):
            return new_field, embed, beta_vec
    raise ExtensionRequired(
        "could not realise the composite extension with a verified root")


def roots_in_field(field, coeffs, mode: str = "base",
                   ext_bound: int = DEFAULT_EXT_BOUND) -> RootsResult:
    """All roots of sum(coeffs[k] z^k), with field extension policy.

    mode 'base': roots in the given field only; 'complex': extend until the
    polynomial splits (degree bound enforced); 'real': rational roots only,
    counting the dropped ones.  Roots are sorted deterministically.
    """
    coeffs = _trim_field(field, coeffs)
    if len(coeffs) <= 1:
        raise ValueError("constant polynomial has no well-defined root set")
    factors = _factor_list(field, coeffs)
    roots, remaining = _linear_roots(field, factors)
    embed = lambda c: c  # noqa: E731
    dropped = 0
    if mode == "real":
        dropped = sum((len(fc) - 1) * m for fc, m in remaining)
        remaining = []
    elif mode == "complex":
        while remaining:
            fc0, _m0 = remaining[0]
            field2, emb, _root = extend_by_irreducible(field, fc0, ext_bound)
            coeffs = [emb(c) for c in coeffs]
            factors = _factor_list(field2, coeffs)
            roots, remaining = _linear_roots(field2, factors)
            old_embed = embed
            embed = lambda c, _e1=old_embed, _e2=emb: _e2(_e1(c))
            field = field2
    roots.sort(key=lambda rm: field.sort_key(rm[0]))
    return RootsResult(roots, field, embed, dropped)


def nth_root(field, elem, n: int, mode: str = "complex",
             ext_bound: int = DEFAULT_EXT_BOUND):
    """A deterministic n-th root of elem, extending the field if needed.

    Returns (root, field, embed).  In real/base mode the root must exist in
    the current field, else ExtensionRequired is raised.
    """
    if n == 1:
        return elem, field, (lambda c: c)
    coeffs = [field.neg(elem)] + [field.zero()] * (n - 1) + [field.one()]

    def preference(f, r):
        # principal-ish choice: positive rationals first, then sort order
        if isinstance(f, Rationals):
            return (0 if r > 0 else 1, f.sort_key(r))
        if isinstance(f, NumberField) and f.is_rational(r):
            q = f.as_fraction(r)
            return (0 if q > 0 else 1, f.sort_key(r))
        return (2, f.sort_key(r))

    res = roots_in_field(field, coeffs, mode="base", ext_bound=ext_bound)
    if res.roots:
        best = min(res.roots, key=lambda rm: preference(field, rm[0]))
        return best[0], field, (lambda c: c)
    if mode != "complex":
        raise ExtensionRequired(
            f"no {n}-th root of {field.render(elem)} in {field!r} (mode {mode})")
    res = roots_in_field(field, coeffs, mode="complex", ext_bound=ext_bound)
    best = min(res.roots, key=lambda rm: preference(res.field, rm[0]))
    return best[0], res.field, res.embed
