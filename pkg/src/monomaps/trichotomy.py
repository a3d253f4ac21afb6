"""Classification of the image of a monotone map of a planar convex set.

The image falls in exactly one of three cases: it lies on a line plus at
most one extra point; it has interior; or it is exactly five points, four in
convex position plus the crossing of their diagonals. A finite image cannot
have interior, so the middle case is certified by four image points with one
strictly inside the triangle of the other three, which already forces the
map to be a homography restriction.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .geometry import (Line, Point2, Segment, convex_hull, convex_independent, crossing_diagonal,
                       in_triangle_interior, line_through, orient, segment_intersect)
from .maps import FiniteMap


@dataclass(frozen=True)
class LineUnionPoint:
    line: Line
    q: Point2 | None = None
    name = "line_union_point"

    def verify(self, points: Sequence[Point2]) -> bool:
        off = [p for p in points if not self.line.contains(p)]
        return not off or (self.q is not None and set(off) == {self.q})


@dataclass(frozen=True)
class InteriorCertificate:
    a: Point2
    b: Point2
    c: Point2
    d: Point2
    name = "interior"

    def verify(self, points: Sequence[Point2]) -> bool:
        pts = set(points)
        return ({self.a, self.b, self.c, self.d} <= pts and orient(self.a, self.b, self.c) != 0
                and in_triangle_interior(self.d, self.a, self.b, self.c))


@dataclass(frozen=True)
class FivePointConfig:
    a: Point2
    b: Point2
    c: Point2
    d: Point2
    e: Point2
    name = "five_point"

    def verify(self, points: Sequence[Point2]) -> bool:
        if set(points) != {self.a, self.b, self.c, self.d, self.e} or len(set(points)) != 5:
            return False
        quad = [self.a, self.b, self.c, self.d]
        if not convex_independent(quad):
            return False
        return segment_intersect(Segment(self.a, self.c), Segment(self.b, self.d)) == self.e


@dataclass(frozen=True)
class Violation:
    detail: str
    name = "violation"

    def verify(self, points) -> bool:
        return False


TrichotomyClass = LineUnionPoint | InteriorCertificate | FivePointConfig | Violation


def find_line_union_point(points: Sequence[Point2]) -> LineUnionPoint | None:
    pts = list(points)
    if not pts:
        return LineUnionPoint(Line(0, 1, 0))
    if len(pts) == 1:
        return LineUnionPoint(Line.from_coefficients(0, 1, pts[0].y))
    if len(pts) == 2:
        return LineUnionPoint(line_through(pts[0], pts[1]))
    # a line missing at most one point passes through two of the first three
    for i, j in ((0, 1), (0, 2), (1, 2)):
        line = line_through(pts[i], pts[j])
        off = [p for p in pts if not line.contains(p)]
        if len(off) <= 1:
            return LineUnionPoint(line, off[0] if off else None)
    return None


def _cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v):
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _surrounding_triangle(p: Point2, others: Sequence[Point2]):
    """Three of ``others`` whose triangle strictly contains ``p``, or None.

    ``p`` is strictly inside ``[q, r, s]`` iff the rays towards q, r, s leave
    no gap of angle pi or more. Rays are sorted by exact angle; for each ray
    the best partner is the last one less than pi counterclockwise.
    """
    reps: dict = {}
    for q in others:
        u0, u1 = q.x - p.x, q.y - p.y
        m = max(abs(u0), abs(u1))
        reps.setdefault((u0 / m, u1 / m), q)  # one representative per ray
    uniq = sorted(reps, key=cmp_to_key(_angle_cmp))
    k = len(uniq)
    if k < 3:
        return None
    j = 0
    for i in range(k):
        ui = uniq[i]
        j = max(j, i)
        while j + 1 < i + k and _cross(ui, uniq[(j + 1) % k]) > 0:
            j += 1
        if j == i:
            continue
        uj = uniq[j % k]
        for l in (j + 1, j + 2):
            if l >= i + k:
                break
            ul = uniq[l % k]
            if _cross(uj, ul) > 0 and _cross(ul, ui) > 0:
                return reps[ui], reps[uj], reps[ul]
    return None


def find_interior_certificate(points: Sequence[Point2]) -> InteriorCertificate | None:
    pts = sorted(set(points))
    hull = convex_hull(pts)
    h = len(hull)
    if h < 3:
        return None
    hull_set = set(hull)
    inner = [p for p in pts if p not in hull_set]
    # fast path: fan triangulations from each hull vertex
    for t in range(h):
        for i in range(1, h - 1):
            a, b, c = hull[t], hull[(t + i) % h], hull[(t + i + 1) % h]
            for p in inner:
                if in_triangle_interior(p, a, b, c):
                    return InteriorCertificate(a, b, c, p)
    for p in inner:
        tri = _surrounding_triangle(p, [q for q in pts if q != p])
        if tri is not None:
            return InteriorCertificate(*tri, p)
    return None


def find_five_point(points: Sequence[Point2]) -> FivePointConfig | None:
    pts = sorted(set(points))
    if len(pts) != 5:
        return None
    for e in pts:
        quad = [p for p in pts if p != e]
        if not convex_independent(quad):
            continue
        (a, b, c, d), hit = crossing_diagonal(*quad)
        if hit == e:
            return FivePointConfig(a, b, c, d, e)
    return None


def classify_points(points: Sequence[Point2]) -> TrichotomyClass:
    pts = sorted(set(points))
    found = find_line_union_point(pts)
    if found is not None:
        assert find_five_point(pts) is None
        return found
    found = find_interior_certificate(pts)
    if found is not None:
        assert find_five_point(pts) is None
        return found
    found = find_five_point(pts)
    if found is not None:
        return found
    return Violation(f"image of {len(pts)} points fits none of the three cases")


def classify_image(m: FiniteMap) -> TrichotomyClass:
    """Classify the image of a (verified monotone) map with planar targets.

    The domain is assumed to be sampled from a convex set; that is the
    caller's responsibility.
    """
    if m.values and not m.planar:
        raise TypeError("classify_image needs planar targets")
    return classify_points(m.values)
