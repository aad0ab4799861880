"""Risometry classification of finite point sets and their riso-trees in K^1.

Two finite configurations are risometric iff some bijection matches all
pairwise leading-term classes rv(a_i - a_j); such a risometry extends to
ambient balls of equal radius and kind.  The riso-tree of a finite set is the
finite ultrametric merge tree of the points: branching depths are exactly the
valuations of pairwise differences.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

from .balls import Ball
from .config import MAX_FINITE_POINTS
from .errors import InsufficientPrecision
from .gamma import INF, gv_render
from .series import Point, rv


class FiniteConfig:
    """A finite list of distinct points inside an ambient ball."""

    def __init__(self, ambient: Ball, points):
        points = list(points)
        if len(points) > MAX_FINITE_POINTS:
            raise ValueError(f"configuration capped at {MAX_FINITE_POINTS} points")
        for p in points:
            if not ambient.contains(p):
                raise ValueError(f"{p.render()} is not inside {ambient.render()}")
        for i in range(len(points)):
            for j in range(i + 1, len(points)):
                d = points[i].sub(points[j])
                if all(s.is_exact_zero for s in d.coords):
                    raise ValueError("points must be pairwise distinct")
                if not any(s.terms for s in d.coords):
                    raise InsufficientPrecision(
                        "cannot certify distinctness at the available precision")
        self.ambient = ambient
        self.points = points

    def __len__(self):
        return len(self.points)

    def profile(self) -> dict:
        """Upper-triangular matrix of rv(a_i - a_j), keyed by (i, j), i < j."""
        out = {}
        for i in range(len(self.points)):
            for j in range(i + 1, len(self.points)):
                out[(i, j)] = rv(self.points[i].sub(self.points[j]))
        return out

    def sorted_order(self):
        """Deterministic point order: by rv sort key, i.e. (valuation, leading)."""
        keyed = sorted(range(len(self.points)),
                       key=lambda i: rv(self.points[i]).sort_key()
                       if not all(s.is_exact_zero for s in self.points[i].coords)
                       else ((2,), ()))
        return keyed


def _edge(profile, order, i, j):
    a, b = order[i], order[j]
    return profile[(a, b)] if a < b else profile[(b, a)]


def riso_equivalent(z1: FiniteConfig, z2: FiniteConfig) -> bool:
    """Existence of a risometry matching the two configurations.

    Requires equal ambient radii and kinds; a mixed open/closed ambient pair
    is refused with a warning (the extension step is only known for equal
    kinds).
    """
    if z1.ambient.radius != z2.ambient.radius:
        return False
    if z1.ambient.closed != z2.ambient.closed:
        warnings.warn("ambient balls of mixed open/closed kind: returning False "
                      "(extension behaviour not covered)", stacklevel=2)
        return False
    if len(z1) != len(z2):
        return False
    if len(z1) <= 1:
        return True
    p1, p2 = z1.profile(), z2.profile()
    o1 = z1.sorted_order()
    n = len(z1)
    used = [False] * n
    assignment = []

    def backtrack() -> bool:
        if len(assignment) == n:
            return True
        i = len(assignment)
        for cand in range(n):
            if used[cand]:
                continue
            ok = True
            for k in range(i):
                if _edge(p1, o1, k, i) != _edge(p2, list(range(n)),
                                                assignment[k], cand):
                    ok = False
                    break
            if ok:
                used[cand] = True
                assignment.append(cand)
                if backtrack():
                    return True
                assignment.pop()
                used[cand] = False
        return False

    return backtrack()


@dataclass
class FiniteTreeNode:
    """Node of the finite riso-tree: a branching ball or an infinite leaf branch."""

    depth: object                 # Fraction, or INF for a leaf branch
    members: tuple                # indices into the configuration
    children: list = dc_field(default_factory=list)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def to_json(self, config: FiniteConfig) -> dict:
        rep = config.points[self.members[0]]
        out = {
            "depth": gv_render(self.depth),
            "center": [c.render() for c in rep.coords],
            "points": [config.points[i].render() for i in self.members],
        }
        if self.children:
            out["children"] = [c.to_json(config) for c in self.children]
        else:
            out["branch"] = "extends to +inf"
        return out


@dataclass
class FiniteRisoTree:
    """Tr_0 of a finite subset of K^1, plus the complement description (Tr_1)."""

    config: FiniteConfig
    root: FiniteTreeNode

    def branching_depths(self) -> set:
        out = set()

        def walk(node):
            if node.children:
                out.add(node.depth)
                for c in node.children:
                    walk(c)

        walk(self.root)
        return out

    def nodes(self):
        acc = []

        def walk(node):
            acc.append(node)
            for c in node.children:
                walk(c)

        walk(self.root)
        return acc

    def node_ball(self, node: FiniteTreeNode) -> Ball:
        """The deepest common ball of a branching node (closed, radius = depth)."""
        if node.depth is INF:
            raise ValueError("leaf branches do not carry a single ball")
        return Ball(self.config.points[node.members[0]], node.depth, closed=True)

    def to_json(self) -> dict:
        return {
            "schema": "riso/1",
            "dimension": 1,
            "tr0": {
                "kind": "finite-set",
                "stem": "extends to -inf",
                "root": self.root.to_json(self.config),
            },
            "components": [{
                "d": 1,
                "attachment": "every ball off the marked tree",
                "fiber_tree": "single infinite branch",
            }],
        }


def riso_tree_finite(config: FiniteConfig) -> FiniteRisoTree:
    """The riso-tree of a finite subset of K^1.

    Tr_0 consists of the balls containing at least one point; its branching
    structure is the ultrametric merge tree of the points, with one infinite
    leaf branch per point.  Everything else is Tr_1.
    """
    pts = config.points
    depth_of = {}
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            d = pts[i].sub(pts[j])
            known = min((s.terms[0][0] for s in d.coords if s.terms), default=None)
            floor = min((s.order for s in d.coords if not s.terms), default=INF)
            if known is None or known > floor:
                raise InsufficientPrecision(
                    f"separation of points {i}, {j} not certified")
            depth_of[(i, j)] = known

    def split(indices) -> FiniteTreeNode:
        if len(indices) == 1:
            return FiniteTreeNode(INF, tuple(indices))
        d0 = min(depth_of[(min(a, b), max(a, b))]
                 for a in indices for b in indices if a < b)
        # classes of "separated strictly deeper than d0"
        classes = []
        for idx in indices:
            for cl in classes:
                rep = cl[0]
                if depth_of[(min(rep, idx), max(rep, idx))] > d0:
                    cl.append(idx)
                    break
            else:
                classes.append([idx])
        node = FiniteTreeNode(d0, tuple(indices))
        node.children = [split(cl) for cl in classes]
        return node

    return FiniteRisoTree(config, split(list(range(len(pts)))))
