"""Explicit discontinuous monotone maps of convex planar sets."""
from __future__ import annotations

from fractions import Fraction

from .errors import InvalidV, OutsideDomain
from .geometry import Point2, between, in_closed_triangle, strictly_between, to_rational

FIVE_POINT_IMAGE = frozenset({
    Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(1, 1), Point2(Fraction(1, 2), Fraction(1, 2)),
})


def collapse_to_edge(a: Point2, b: Point2, c: Point2, x: Point2) -> Point2:
    """Identity on the edge ``[a, b]``; everything else goes to ``c``."""
    if not in_closed_triangle(x, a, b, c):
        raise OutsideDomain(f"{x} is not in the triangle")
    return x if between(a, x, b) else c


def fan_collapse(a: Point2, b: Point2, c: Point2, v: Point2, x: Point2) -> Point2:
    """Three-valued map: ``a`` at ``a``, ``b`` on the rest of ``[a, b, v]``,
    ``c`` elsewhere. ``v`` must lie strictly inside the edge ``[b, c]``."""
    if not strictly_between(b, v, c):
        raise InvalidV(f"{v} is not strictly between {b} and {c}")
    if not in_closed_triangle(x, a, b, c):
        raise OutsideDomain(f"{x} is not in the triangle")
    if x == a:
        return a
    if in_closed_triangle(x, a, b, v):
        return b
    return c


def five_point_map(x0, x1) -> Point2:
    """Monotone map of the unit square onto five points.

    Above the diagonal goes to (0, 1), below to (1, 0); the open diagonal
    collapses to its midpoint and the two diagonal corners stay put.
    """
    x0, x1 = to_rational(x0), to_rational(x1)
    if not (0 <= x0 <= 1 and 0 <= x1 <= 1):
        raise OutsideDomain(f"({x0}, {x1}) is outside the unit square")
    if x0 < x1:
        return Point2(0, 1)
    if x0 > x1:
        return Point2(1, 0)
    if x0 == 0:
        return Point2(0, 0)
    if x0 == 1:
        return Point2(1, 1)
    return Point2(Fraction(1, 2), Fraction(1, 2))


def five_point_at(p: Point2) -> Point2:
    return five_point_map(p.x, p.y)
