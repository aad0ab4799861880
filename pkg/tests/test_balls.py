"""Ball membership, the ultrametric dichotomy, joins and chains."""

import itertools
from fractions import Fraction

import pytest

from riso.balls import Ball, join, relate, resolve_chain, unit_ball
from riso.errors import NotNested
from riso.fields import QQ_FIELD
from riso.series import PuiseuxSeries

from conftest import origin, ps, pt


class TestContains:
    def test_closed_boundary(self):
        assert Ball(origin(), 2).contains(pt([(2, 1)]))

    def test_open_boundary_excluded(self):
        assert not Ball(origin(), 2, closed=False).contains(pt([(2, 1)]))

    def test_maximal_ideal_square(self):
        m2 = unit_ball(QQ_FIELD, 2, closed=False)
        assert m2.contains(pt([(Fraction(1, 2), 1)], [(1, 1)]))


class TestRelate:
    def test_nested(self):
        assert relate(Ball(origin(), 2), Ball(pt([(2, 1)]), 3)) == "B2<B1"

    def test_disjoint(self):
        assert relate(Ball(origin(), 1), Ball(pt([(0, 1)]), 1)) == "disjoint"

    def test_open_inside_closed_same_radius(self):
        b1 = Ball(origin(), 0)
        b2 = Ball(pt([(1, 1)]), 0, closed=False)
        assert relate(b1, b2) == "B2<B1"
        # cross-check by membership sampling
        samples = [pt([(1, 1)]), pt([(2, 1)]), pt([(0, 1)]), pt([])]
        for s in samples:
            if b2.contains(s):
                assert b1.contains(s)

    def test_no_fifth_case_exhaustive(self):
        centers = [origin(), pt([(1, 1)]), pt([(2, 1)]), pt([(0, 1)])]
        radii = [0, 1, 2]
        balls = [Ball(c, r, closed=k)
                 for c in centers for r in radii for k in (True, False)]
        for b1, b2 in itertools.product(balls, balls):
            assert relate(b1, b2) in ("equal", "B1<B2", "B2<B1", "disjoint")

    def test_set_equality_matches_structural(self):
        # same ball through different center representatives
        b1 = Ball(origin(), 2)
        b2 = Ball(pt([(2, 1), (3, 1)]), 2)   # center differs at exponents >= 2
        assert b1 == b2
        assert relate(b1, b2) == "equal"


class TestCanonical:
    def test_idempotent(self):
        b = Ball(pt([(0, 1), (1, 1), (5, 7)]), 3)
        b2 = Ball(b.center, b.radius, closed=b.closed)
        assert b == b2 and b.canonical_key() == b2.canonical_key()

    def test_open_keeps_radius_term(self):
        # open balls distinguish centers differing at the radius exponent
        b1 = Ball(origin(), 1, closed=False)
        b2 = Ball(pt([(1, 1)]), 1, closed=False)
        assert b1 != b2
        assert relate(b1, b2) == "disjoint"

    def test_closed_drops_radius_term(self):
        assert Ball(origin(), 1) == Ball(pt([(1, 1)]), 1)


class TestJoin:
    def test_simple(self):
        b = join(origin(), pt([(2, 1)]))
        assert b == Ball(origin(), 2) and b.closed

    def test_difference_valuations(self):
        b = join(pt([(0, 1)]), pt([(0, 1), (3, 1)]))
        assert b.radius == 3 and b.contains(pt([(0, 1)]))

    def test_tuple_valuation_radius(self):
        b = join(origin(2), pt([(4, 1)], [(6, 1)]))
        assert b.radius == 4

    def test_minimality(self):
        p1, p2 = origin(), pt([(2, 1)])
        b = join(p1, p2)
        for radius in (Fraction(1), Fraction(3, 2)):
            bigger = Ball(p1, radius)
            assert relate(bigger, b) == "B2<B1"
        assert not Ball(p1, 3).contains(p2)


class TestResolveChain:
    def test_paper_chain(self):
        chain = [Ball(origin(), 0), Ball(pt([(Fraction(1, 2), 1)]), Fraction(3, 4))]
        assert resolve_chain(chain) == chain[1]

    def test_single(self):
        b = Ball(origin(), 5)
        assert resolve_chain([b]) == b

    def test_result_contained_in_all(self):
        chain = [Ball(origin(), -1), Ball(pt([(0, 1)]), 0), Ball(pt([(0, 1), (2, 1)]), 2)]
        m = resolve_chain(chain)
        for b in chain:
            assert relate(b, m) in ("equal", "B2<B1")

    def test_not_nested(self):
        with pytest.raises(NotNested):
            resolve_chain([Ball(origin(), 1), Ball(pt([(0, 1)]), 1)])


def test_membership_sampling_consistency():
    # containment verdicts agree with brute-force membership on sample points
    b1 = Ball(origin(), 0)
    b2 = Ball(pt([(1, 1)]), 0, closed=False)
    samples = [origin(), pt([(1, 1)]), pt([(1, 1), (2, 1)]), pt([(0, 1)]),
               pt([(Fraction(1, 2), 1)]), pt([(3, 5)])]
    assert relate(b1, b2) == "B2<B1"
    for s in samples:
        if b2.contains(s):
            assert b1.contains(s)
    assert any(b1.contains(s) and not b2.contains(s) for s in samples)
