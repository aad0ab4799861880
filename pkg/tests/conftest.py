"""Shared builders for exact series, points, and balls."""

from fractions import Fraction

import pytest

from riso.balls import Ball
from riso.fields import QQ_FIELD
from riso.series import Point, PuiseuxSeries


def ps(*terms, order=None):
    """Exact series from (exponent, coefficient) pairs over Q."""
    from riso.gamma import INF
    term_map = {Fraction(e): Fraction(c) for e, c in terms}
    return PuiseuxSeries.make(QQ_FIELD, term_map, INF if order is None else Fraction(order))


def pt(*coord_term_lists):
    return Point([ps(*terms) for terms in coord_term_lists])


def origin(n=1):
    return Point([PuiseuxSeries.zero(QQ_FIELD) for _ in range(n)])


@pytest.fixture
def unit_interval_points():
    return [pt([]), pt([(2, 1)]), pt([(2, 1), (4, 1)]), pt([(0, 1)]), pt([(0, 1), (3, 1)])]


def closed_ball(center, radius):
    return Ball(center, Fraction(radius), closed=True)


def open_ball(center, radius):
    return Ball(center, Fraction(radius), closed=False)
