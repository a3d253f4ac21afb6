"""Exact rational planar primitives and predicates.

Every coordinate is a :class:`fractions.Fraction`; no predicate ever touches
floating point. Orientation is counterclockwise-positive.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

from .errors import DegenerateInput, DegenerateTriangle, DuplicatePoints, NotConvexIndependent

Rational = Fraction
RationalLike = Union[int, Fraction, str]


def to_rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to an exact Fraction.

    Floats are rejected: every float is a dyadic rational, but accepting them
    silently invites inputs like ``0.1`` that the caller did not mean exactly.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` for integers."""
    q = to_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, order=True)
class Point2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", to_rational(self.x))
        object.__setattr__(self, "y", to_rational(self.y))

    def __add__(self, other: Point2) -> Point2:
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Point2) -> Point2:
        return Point2(self.x - other.x, self.y - other.y)

    def scale(self, k) -> Point2:
        k = to_rational(k)
        return Point2(self.x * k, self.y * k)

    def __repr__(self):
        return f"Point2({format_rational(self.x)}, {format_rational(self.y)})"


def pt(x: RationalLike, y: RationalLike) -> Point2:
    return Point2(to_rational(x), to_rational(y))


def midpoint(a: Point2, b: Point2) -> Point2:
    return Point2((a.x + b.x) / 2, (a.y + b.y) / 2)


def lerp(a: Point2, b: Point2, lam) -> Point2:
    """The point ``(1 - lam) a + lam b``."""
    lam = to_rational(lam)
    return Point2(a.x + lam * (b.x - a.x), a.y + lam * (b.y - a.y))


def squared_distance(a: Point2, b: Point2) -> Fraction:
    dx = a.x - b.x
    dy = a.y - b.y
    return dx * dx + dy * dy


@dataclass(frozen=True)
class Segment:
    p: Point2
    q: Point2

    @property
    def degenerate(self) -> bool:
        return self.p == self.q


@dataclass(frozen=True, order=True)
class Line:
    """The line ``a*x + b*y = c`` in canonical form.

    Coefficients are coprime integers and the first nonzero of ``(a, b)`` is
    positive, so equal lines compare and hash equal.
    """

    a: int
    b: int
    c: int

    @classmethod
    def from_coefficients(cls, a, b, c) -> Line:
        a, b, c = to_rational(a), to_rational(b), to_rational(c)
        if a == 0 and b == 0:
            raise DegenerateInput("line needs (a, b) != (0, 0)")
        m = lcm(a.denominator, b.denominator, c.denominator)
        ia, ib, ic = int(a * m), int(b * m), int(c * m)
        g = gcd(gcd(ia, ib), ic)
        ia, ib, ic = ia // g, ib // g, ic // g
        if ia < 0 or (ia == 0 and ib < 0):
            ia, ib, ic = -ia, -ib, -ic
        return cls(ia, ib, ic)

    def value(self, p: Point2) -> Fraction:
        return self.a * p.x + self.b * p.y - self.c

    def side(self, p: Point2) -> int:
        v = self.value(p)
        return (v > 0) - (v < 0)

    def contains(self, p: Point2) -> bool:
        return self.value(p) == 0

    @property
    def vertical(self) -> bool:
        return self.b == 0

    def is_parallel(self, other: Line) -> bool:
        return self.a * other.b - self.b * other.a == 0

    def intersect(self, other: Line) -> Point2 | None:
        """Single intersection point, or None for parallel (or equal) lines."""
        det = self.a * other.b - self.b * other.a
        if det == 0:
            return None
        x = Fraction(self.c * other.b - self.b * other.c, det)
        y = Fraction(self.a * other.c - self.c * other.a, det)
        return Point2(x, y)

    def y_at(self, x) -> Fraction:
        if self.b == 0:
            raise DegenerateInput("vertical line has no unique y")
        return (self.c - self.a * to_rational(x)) / self.b

    def __str__(self):
        return f"{self.a}*x + {self.b}*y = {self.c}"


def orient(a: Point2, b: Point2, c: Point2) -> int:
    """Sign of ``det(b - a, c - a)``: +1 counterclockwise, 0 collinear."""
    d = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    return (d > 0) - (d < 0)


def between(a: Point2, x: Point2, b: Point2) -> bool:
    """True iff ``x`` lies on the closed segment ``[a, b]``."""
    if (b.x - a.x) * (x.y - a.y) != (b.y - a.y) * (x.x - a.x):
        return False
    return (min(a.x, b.x) <= x.x <= max(a.x, b.x)
            and min(a.y, b.y) <= x.y <= max(a.y, b.y))


def strictly_between(a: Point2, x: Point2, b: Point2) -> bool:
    return x != a and x != b and between(a, x, b)


def barycentric_parameter(a: Point2, x: Point2, b: Point2) -> Fraction | None:
    """The ``lam`` with ``x = (1 - lam) a + lam b``, or None if there is none.

    ``a == b`` has a parameter only when ``x == a``; 0 is returned then.
    """
    dx, dy = b.x - a.x, b.y - a.y
    if dx == 0 and dy == 0:
        return Fraction(0) if x == a else None
    if dx != 0:
        lam = (x.x - a.x) / dx
    else:
        lam = (x.y - a.y) / dy
    if a.x + lam * dx == x.x and a.y + lam * dy == x.y:
        return lam
    return None


def _along_key(p: Point2):
    # Lexicographic (x, y) order is monotone along any line.
    return (p.x, p.y)


def segment_intersect(s: Segment, t: Segment) -> None | Point2 | Segment:
    """Exact intersection of two closed, non-degenerate segments.

    Returns None when disjoint, a :class:`Point2` for a single common point,
    or a :class:`Segment` for a collinear overlap of positive length.
    """
    if s.degenerate or t.degenerate:
        raise DegenerateInput("segment_intersect needs non-degenerate segments")
    rx, ry = s.q.x - s.p.x, s.q.y - s.p.y
    ux, uy = t.q.x - t.p.x, t.q.y - t.p.y
    det = rx * uy - ry * ux
    wx, wy = t.p.x - s.p.x, t.p.y - s.p.y
    if det != 0:
        lam = (wx * uy - wy * ux) / det
        mu = (wx * ry - wy * rx) / det
        if 0 <= lam <= 1 and 0 <= mu <= 1:
            return Point2(s.p.x + lam * rx, s.p.y + lam * ry)
        return None
    if orient(s.p, s.q, t.p) != 0:
        return None
    lo = max(min(s.p, s.q, key=_along_key), min(t.p, t.q, key=_along_key), key=_along_key)
    hi = min(max(s.p, s.q, key=_along_key), max(t.p, t.q, key=_along_key), key=_along_key)
    if _along_key(lo) > _along_key(hi):
        return None
    if lo == hi:
        return lo
    return Segment(lo, hi)


def line_through(a: Point2, b: Point2) -> Line:
    if a == b:
        raise DegenerateInput("line_through needs two distinct points")
    la = b.y - a.y
    lb = a.x - b.x
    return Line.from_coefficients(la, lb, la * a.x + lb * a.y)


def in_triangle_interior(p: Point2, a: Point2, b: Point2, c: Point2) -> bool:
    o = orient(a, b, c)
    if o == 0:
        raise DegenerateTriangle("triangle vertices are collinear")
    return orient(a, b, p) == o and orient(b, c, p) == o and orient(c, a, p) == o


def in_closed_triangle(p: Point2, a: Point2, b: Point2, c: Point2) -> bool:
    """Closed-triangle membership; degenerate triangles are handled as hulls."""
    o = orient(a, b, c)
    if o == 0:
        return between(a, p, b) or between(b, p, c) or between(a, p, c)
    return orient(a, b, p) != -o and orient(b, c, p) != -o and orient(c, a, p) != -o


def in_hull_of(p: Point2, others: Sequence[Point2]) -> bool:
    """Exact membership of ``p`` in the convex hull of ``others``.

    Carathéodory in the plane: p is in the hull iff it is in some closed
    (possibly degenerate) triangle on three of the points.
    """
    if not others:
        return False
    if len(others) == 1:
        return p == others[0]
    if len(others) == 2:
        return between(others[0], p, others[1])
    return any(in_closed_triangle(p, a, b, c) for a, b, c in combinations(others, 3))


def _require_distinct(points: Sequence[Point2]):
    if len(set(points)) != len(points):
        raise DuplicatePoints("points must be pairwise distinct")


def convex_independent(points: Sequence[Point2]) -> bool:
    """True iff no point lies in the convex hull of the others."""
    points = list(points)
    _require_distinct(points)
    for i, p in enumerate(points):
        if in_hull_of(p, points[:i] + points[i + 1:]):
            return False
    return True


def crossing_diagonal(a: Point2, b: Point2, c: Point2, d: Point2):
    """Relabel four convex independent points so ``[a', c']`` crosses ``[b', d']``.

    Returns ``((a', b', c', d'), e)`` with ``{e} = [a', c'] & [b', d']``.
    Pairings are tried in the order (ac|bd), (ab|cd), (ad|bc).
    """
    try:
        ok = convex_independent([a, b, c, d])
    except DuplicatePoints as exc:
        raise NotConvexIndependent(str(exc)) from exc
    if not ok:
        raise NotConvexIndependent("the four points are not convex independent")
    for p1, p2, q1, q2 in ((a, c, b, d), (a, b, c, d), (a, d, b, c)):
        hit = segment_intersect(Segment(p1, p2), Segment(q1, q2))
        if isinstance(hit, Point2):
            return (p1, q1, p2, q2), hit
    raise AssertionError("convex independent quadruple without crossing diagonals")


def convex_hull(points: Iterable[Point2]) -> list[Point2]:
    """Strict convex hull (no collinear boundary points), counterclockwise."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point2] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def in_convex_polygon(p: Point2, hull: Sequence[Point2]) -> bool:
    """Closed membership in a counterclockwise strictly convex polygon."""
    n = len(hull)
    if n == 0:
        return False
    if n == 1:
        return p == hull[0]
    if n == 2:
        return between(hull[0], p, hull[1])
    return all(orient(hull[i], hull[(i + 1) % n], p) >= 0 for i in range(n))


def direction_key(dx: Fraction, dy: Fraction):
    """Hashable key identifying the direction of ``(dx, dy)`` up to sign."""
    if dx == 0:
        return None
    return dy / dx
