"""Partial projective transformations of the plane.

A transform is a 3x3 rational matrix ``M`` acting on ``(x, y, 1)``::

    f(x, y) = (r1 . p, r2 . p) / (r3 . p),    p = (x, y, 1)

Rows 1-2 are the affine numerator ``T`` and row 3 is ``(v1, v2, alpha)``,
i.e. the denominator ``alpha + (v | x)``. The matrix is only defined up to a
nonzero scalar, so it is stored in a canonical gauge: the first nonzero
entry in row-major order equals 1. The positive halfplane ``H+`` is where
``r3 . p > 0`` in that gauge.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import (DegenerateCorrespondence, PolygonCrossesBoundary, SingularMatrix,
                     VanishingDenominator)
from .geometry import Line, Point2, convex_hull, in_convex_polygon, midpoint, orient, to_rational
from .linalg import adjugate3, det3, matmul, nullspace
from .maps import FiniteMap, check_isomorphism, check_monotone


def _canonical(rows) -> tuple[tuple[Fraction, ...], ...]:
    m = [[to_rational(v) for v in row] for row in rows]
    if len(m) != 3 or any(len(row) != 3 for row in m):
        raise ValueError("projective transform needs a 3x3 matrix")
    pivot = next((v for row in m for v in row if v != 0), None)
    if pivot is None:
        raise SingularMatrix("the zero matrix is not a projective transform")
    return tuple(tuple(v / pivot for v in row) for row in m)


@dataclass(frozen=True)
class ProjectiveTransform:
    m: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "m", _canonical(self.m))

    @classmethod
    def identity(cls) -> ProjectiveTransform:
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    @classmethod
    def from_parts(cls, t, v, alpha) -> ProjectiveTransform:
        """Build from the affine numerator ``t`` (2x3), ``v`` and ``alpha``."""
        return cls((tuple(t[0]), tuple(t[1]), (v[0], v[1], alpha)))

    @classmethod
    def affine(cls, a, b, c, d, e, f) -> ProjectiveTransform:
        """``(x, y) -> (a x + b y + e, c x + d y + f)``."""
        return cls(((a, b, e), (c, d, f), (0, 0, 1)))

    def parts(self):
        """``(T, v, alpha)``: numerator rows, denominator normal and offset."""
        r1, r2, r3 = self.m
        return (r1, r2), (r3[0], r3[1]), r3[2]

    def denominator(self, p: Point2) -> Fraction:
        r = self.m[2]
        return r[0] * p.x + r[1] * p.y + r[2]

    def __call__(self, p: Point2) -> Point2:
        return evaluate(self, p)


def evaluate(P: ProjectiveTransform, p: Point2) -> Point2:
    (r1, r2, r3) = P.m
    den = r3[0] * p.x + r3[1] * p.y + r3[2]
    if den == 0:
        raise VanishingDenominator(f"{p} lies on the vanishing line")
    return Point2((r1[0] * p.x + r1[1] * p.y + r1[2]) / den,
                  (r2[0] * p.x + r2[1] * p.y + r2[2]) / den)


def denominator_sign(P: ProjectiveTransform, p: Point2) -> int:
    d = P.denominator(p)
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class HalfplanePair:
    """The two open sides of a transform's vanishing line."""

    boundary: Line
    normal: tuple[Fraction, Fraction, Fraction]

    def side(self, p: Point2) -> int:
        """+1 in H+, -1 in H-, 0 on the boundary."""
        v1, v2, alpha = self.normal
        d = v1 * p.x + v2 * p.y + alpha
        return (d > 0) - (d < 0)

    def in_positive(self, p: Point2) -> bool:
        return self.side(p) > 0

    def in_negative(self, p: Point2) -> bool:
        return self.side(p) < 0


def domain_halfplanes(P: ProjectiveTransform) -> HalfplanePair | None:
    """The halfplanes where ``P`` is defined; None if ``P`` is affine."""
    v1, v2, alpha = P.m[2]
    if v1 == 0 and v2 == 0:
        return None
    return HalfplanePair(Line.from_coefficients(v1, v2, -alpha), (v1, v2, alpha))


def is_affine(P: ProjectiveTransform) -> bool:
    r3 = P.m[2]
    return r3[0] == 0 and r3[1] == 0 and r3[2] != 0


def determinant(P: ProjectiveTransform) -> Fraction:
    return det3(P.m)


def compose(P: ProjectiveTransform, Q: ProjectiveTransform) -> ProjectiveTransform:
    """``x -> P(Q(x))``."""
    return ProjectiveTransform(matmul(P.m, Q.m))


def inverse(P: ProjectiveTransform) -> ProjectiveTransform:
    if det3(P.m) == 0:
        raise SingularMatrix("transform is not invertible")
    return ProjectiveTransform(adjugate3(P.m))


def _has_collinear_triple(points: Sequence[Point2]) -> bool:
    return any(orient(a, b, c) == 0 for a, b, c in combinations(points, 3))


def fit_homography(src: Sequence[Point2], dst: Sequence[Point2]) -> ProjectiveTransform:
    """The unique homography sending ``src[i]`` to ``dst[i]`` for four points.

    Solves the 8x9 homogeneous system exactly and returns the kernel vector
    in canonical gauge.
    """
    src, dst = list(src), list(dst)
    if len(src) != 4 or len(dst) != 4:
        raise DegenerateCorrespondence("need exactly four correspondences")
    if _has_collinear_triple(src) or _has_collinear_triple(dst):
        raise DegenerateCorrespondence("three of the points are collinear")
    rows = []
    for p, q in zip(src, dst):
        x, y, u, v = p.x, p.y, q.x, q.y
        rows.append([x, y, 1, 0, 0, 0, -u * x, -u * y, -u])
        rows.append([0, 0, 0, x, y, 1, -v * x, -v * y, -v])
    kernel = nullspace(rows)
    if len(kernel) != 1:
        raise DegenerateCorrespondence(f"kernel has dimension {len(kernel)}")
    h = kernel[0]
    P = ProjectiveTransform((h[0:3], h[3:6], h[6:9]))
    for p, q in zip(src, dst):
        if P.denominator(p) == 0 or evaluate(P, p) != q:
            raise DegenerateCorrespondence("fitted transform does not reproduce the data")
    return P


def polygon_grid(polygon: Sequence[Point2], grid_n: int) -> list[Point2]:
    """Exact sample of a convex polygon.

    A ``grid_n x grid_n`` lattice over the bounding box, clipped to the
    polygon, plus its vertices and all pairwise vertex midpoints. Sorted.
    """
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    hull = convex_hull(polygon)
    xs = [p.x for p in hull]
    ys = [p.y for p in hull]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pts = set(hull)
    pts.update(midpoint(a, b) for a, b in combinations(hull, 2))
    for i in range(grid_n):
        for j in range(grid_n):
            p = Point2(x0 + (x1 - x0) * Fraction(i, grid_n - 1), y0 + (y1 - y0) * Fraction(j, grid_n - 1))
            if in_convex_polygon(p, hull):
                pts.add(p)
    return sorted(pts)


def restrict_and_verify(P: ProjectiveTransform, polygon: Sequence[Point2], grid_n: int):
    """Sample ``polygon``, map it through ``P`` and run the exhaustive
    monotonicity and isomorphism checks. Returns the first witness or None."""
    signs = {denominator_sign(P, p) for p in polygon}
    if len(signs) != 1 or 0 in signs:
        raise PolygonCrossesBoundary("polygon meets the vanishing line of the transform")
    sample = polygon_grid(polygon, grid_n)
    m = FiniteMap.from_function(sample, P)
    return check_monotone(m) or check_isomorphism(m)
