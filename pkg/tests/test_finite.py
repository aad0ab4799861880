"""Finite-configuration risometry and finite riso-trees."""

import random
from fractions import Fraction

import pytest

from riso.balls import Ball
from riso.errors import InsufficientPrecision
from riso.fields import QQ_FIELD
from riso.finite import FiniteConfig, riso_equivalent, riso_tree_finite
from riso.gamma import INF
from riso.series import Point, PuiseuxSeries

from conftest import origin, ps, pt


def config(points, radius=0, closed=True):
    return FiniteConfig(Ball(origin(points[0].dimension), radius, closed=closed), points)


class TestRisoEquivalent:
    def test_translation_invariant(self):
        z1 = config([pt([]), pt([(1, 1)])])
        z2 = config([pt([(2, 1)]), pt([(2, 1), (1, 1)])])
        assert riso_equivalent(z1, z2)

    def test_leading_coefficient_blocks(self):
        z1 = config([pt([]), pt([(1, 1)])])
        z2 = config([pt([]), pt([(1, 2)])])
        assert not riso_equivalent(z1, z2)

    def test_singletons(self):
        assert riso_equivalent(config([pt([])]), config([pt([(5, 3)])]))

    def test_radius_mismatch(self):
        z1 = config([pt([])], radius=0)
        z2 = FiniteConfig(Ball(origin(), 1), [pt([(1, 1)])])
        assert not riso_equivalent(z1, z2)

    def test_mixed_kind_warns_false(self):
        z1 = config([pt([(1, 1)])], radius=0, closed=True)
        z2 = config([pt([(1, 1)])], radius=0, closed=False)
        with pytest.warns(UserWarning):
            assert not riso_equivalent(z1, z2)

    def test_equivalence_relation_on_random_configs(self):
        rng = random.Random(5)
        pool = []
        for _ in range(12):
            size = rng.randint(1, 4)
            seen = set()
            pts = []
            while len(pts) < size:
                terms = tuple(sorted((Fraction(e), Fraction(rng.randint(1, 3)))
                                     for e in rng.sample(range(1, 7), rng.randint(1, 2))))
                if terms in seen:
                    continue
                seen.add(terms)
                pts.append(Point([PuiseuxSeries.make(QQ_FIELD, dict(terms))]))
            pool.append(config(pts))
        for _ in range(120):
            a, b, c = rng.choice(pool), rng.choice(pool), rng.choice(pool)
            assert riso_equivalent(a, a)
            assert riso_equivalent(a, b) == riso_equivalent(b, a)
            if riso_equivalent(a, b) and riso_equivalent(b, c):
                assert riso_equivalent(a, c)

    def test_unit_scaling_and_translation_invariance(self):
        rng = random.Random(9)
        unit = ps((0, 1), (1, 4), (2, 2))      # rv(u) = rv(1)
        shift = ps((1, 3))
        for _ in range(20):
            pts = []
            seen = set()
            while len(pts) < 3:
                e = rng.randint(1, 5)
                c = rng.randint(1, 4)
                if (e, c) in seen:
                    continue
                seen.add((e, c))
                pts.append(pt([(e, c)]))
            z = config(pts)
            moved = config([Point([p.coords[0].mul(unit).add(shift)]) for p in pts])
            assert riso_equivalent(z, moved)


class TestFiniteTree:
    def test_paper_depths(self, unit_interval_points):
        tree = riso_tree_finite(config(unit_interval_points))
        assert tree.branching_depths() == {Fraction(0), Fraction(2), Fraction(3), Fraction(4)}

    def test_paper_structure(self, unit_interval_points):
        tree = riso_tree_finite(config(unit_interval_points))
        root = tree.root
        assert root.depth == 0 and len(root.children) == 2
        sizes = sorted(len(c.members) for c in root.children)
        assert sizes == [2, 3]
        cluster3 = next(c for c in root.children if len(c.members) == 3)
        assert cluster3.depth == 2
        depths = sorted(ch.depth for ch in cluster3.children if ch.children)
        assert depths == [4]

    def test_singleton(self):
        tree = riso_tree_finite(config([pt([])]))
        assert tree.root.is_leaf and tree.root.depth is INF
        assert tree.branching_depths() == set()

    def test_two_points(self):
        tree = riso_tree_finite(config([pt([]), pt([(0, 1)])]))
        assert tree.branching_depths() == {Fraction(0)}

    def test_pairwise_separation_depths(self):
        rng = random.Random(2)
        pts = [pt([]), pt([(1, 1)]), pt([(1, 1), (3, 2)]), pt([(0, 2)])]
        cfg = config(pts)
        tree = riso_tree_finite(cfg)
        # each pair separates exactly at v(a_i - a_j)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                d = pts[i].sub(pts[j]).coords[0].valuation()
                node = _deepest_common(tree, i, j)
                assert node.depth == d

    def test_every_tr0_node_contains_a_point(self, unit_interval_points):
        cfg = config(unit_interval_points)
        tree = riso_tree_finite(cfg)
        for node in tree.nodes():
            if node.depth is INF:
                continue
            ball = tree.node_ball(node)
            assert any(ball.contains(p) for p in cfg.points)


def _deepest_common(tree, i, j):
    node = tree.root
    while True:
        nxt = [c for c in node.children if i in c.members and j in c.members]
        if not nxt:
            return node
        node = nxt[0]
