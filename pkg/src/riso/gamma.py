"""The value group: rationals extended by +infinity (and a -infinity symbol).

Finite values are plain ``fractions.Fraction`` (already canonical reduced
form).  ``INF`` is absorbing under addition and maximal in the order; it is
the valuation of the exact zero series.  ``NEG_INF`` exists only as a display
symbol for the root of whole-space riso-tree summaries and supports
comparisons but no arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Union


@total_ordering
class _Infinite:
    __slots__ = ("_sign",)

    def __init__(self, sign):
        self._sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinite) and other._sign == self._sign

    def __lt__(self, other):
        if isinstance(other, _Infinite):
            return self._sign < other._sign
        if isinstance(other, (Fraction, int)):
            return self._sign < 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, _Infinite):
            return self._sign > other._sign
        if isinstance(other, (Fraction, int)):
            return self._sign > 0
        return NotImplemented

    def __hash__(self):
        return hash(("riso-gamma-inf", self._sign))

    def __add__(self, other):
        if isinstance(other, _Infinite) and other._sign != self._sign:
            raise ArithmeticError("inf + -inf is undefined")
        if self._sign < 0:
            raise ArithmeticError("-inf does not support arithmetic")
        return self

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("negation of an infinite value is not used")

    def __repr__(self):
        return "inf" if self._sign > 0 else "-inf"


INF = _Infinite(+1)
NEG_INF = _Infinite(-1)

GammaValue = Union[Fraction, _Infinite]


def gv(x) -> GammaValue:
    """Coerce ints / strings like ``"3/2"`` to a canonical value-group element."""
    if isinstance(x, _Infinite) or isinstance(x, Fraction):
        return x
    return Fraction(x)


def gv_min(*values: GammaValue) -> GammaValue:
    out = values[0]
    for v in values[1:]:
        if v < out:
            out = v
    return out


def gv_add(a: GammaValue, b: GammaValue) -> GammaValue:
    if a is INF or b is INF:
        return INF
    return a + b


def gv_render(v: GammaValue) -> str:
    if v is INF:
        return "inf"
    if v is NEG_INF:
        return "-inf"
    return str(v)
