"""Segment-intersection closure of a triangle with an interior point.

Starting from ``{a, b, c, d}`` (``d`` strictly inside ``[a, b, c]``) the
closure is grown generation by generation with two rules over the points
already present:

R1
    if ``[x0, x1]`` and ``[y0, y1]`` meet in a single point, add it;
R2
    if exactly one ``z`` on ``[x0, x1]`` has ``y1`` on ``[y0, z]``, add ``z``
    (the ray from ``y0`` through ``y1`` hitting ``[x0, x1]``).

Both rules only ever produce the intersection of two distinct lines spanned
by current points, so a generation is computed line-pair by line-pair: for
lines ``L1 != L2`` meeting at ``X``, ``X`` is produced by R1 when it is inside
the extent (hull of the points) of both lines, and by R2 when it is inside
the extent of one of them. Points lying beyond both extents are produced by
neither rule. Collinear R2 applications are skipped; their ``z`` is either
not unique or already present.

Since a monotone map is forced on every point so constructed, replaying the
provenance of each point on the image side reproduces the homography fitted
to the four base correspondences; :func:`rigidity_check` verifies exactly that.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Sequence

from .errors import ImageDegeneracy, InvalidBase
from .geometry import (Line, Point2, Segment, between, in_triangle_interior, line_through, orient,
                       segment_intersect)
from .projective import evaluate, fit_homography

Quad = tuple[Point2, Point2, Point2, Point2]

CANONICAL_BASE: Quad = (Point2(0, 0), Point2(1, 0), Point2(0, 1), Point2(Fraction(1, 4), Fraction(1, 4)))


@dataclass(frozen=True)
class Derivation:
    rule: str
    parents: Quad  # (x0, x1, y0, y1)


@dataclass(frozen=True)
class ClosureState:
    base: Quad
    points: tuple[Point2, ...]
    generation: dict = field(compare=False)
    provenance: dict = field(compare=False)
    depth: int = 0

    def __len__(self):
        return len(self.points)

    def __contains__(self, p):
        return p in self.generation

    def at_generation(self, g: int) -> list[Point2]:
        return [p for p in self.points if self.generation[p] <= g]


def _validate_base(base: Sequence[Point2], exc=InvalidBase) -> Quad:
    a, b, c, d = base
    if orient(a, b, c) == 0:
        raise exc("base triangle is degenerate")
    if not in_triangle_interior(d, a, b, c):
        raise exc("fourth point is not strictly inside the triangle")
    return a, b, c, d


def initial_state(base: Sequence[Point2]) -> ClosureState:
    base = _validate_base(base)
    return ClosureState(base, tuple(base), {p: 0 for p in base}, {}, 0)


def spanned_lines(points: Sequence[Point2]) -> list[tuple[Line, Point2, Point2]]:
    """Every line through two or more points, with the extreme points on it.

    Sorted by canonical line, so independent of input order.
    """
    m = 1
    for p in points:
        m = lcm(m, p.x.denominator, p.y.denominator)
    coords = [(int(p.x * m), int(p.y * m)) for p in points]
    seen: dict[Line, list[Point2]] = {}
    n = len(points)
    for i in range(n):
        xi, yi = coords[i]
        buckets: dict[tuple[int, int], list[int]] = {}
        for j in range(i + 1, n):
            dx, dy = coords[j][0] - xi, coords[j][1] - yi
            g = gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            buckets.setdefault((dx, dy), []).append(j)
        for members in buckets.values():
            line = line_through(points[i], points[members[0]])
            if line in seen:
                continue
            on_line = [points[i]] + [points[j] for j in members]
            seen[line] = [min(on_line), max(on_line)]
    return sorted((line, lo, hi) for line, (lo, hi) in seen.items())


def _within(lo: Point2, x: Point2, hi: Point2) -> bool:
    return lo <= x <= hi


def _derive(x: Point2, l1, l2) -> Derivation | None:
    _, lo1, hi1 = l1
    _, lo2, hi2 = l2
    in1 = _within(lo1, x, hi1)
    in2 = _within(lo2, x, hi2)
    if in1 and in2:
        return Derivation("R1", (lo1, hi1, lo2, hi2))
    if in2:
        y0, y1 = (lo1, hi1) if x > hi1 else (hi1, lo1)
        return Derivation("R2", (lo2, hi2, y0, y1))
    if in1:
        y0, y1 = (lo2, hi2) if x > hi2 else (hi2, lo2)
        return Derivation("R2", (lo1, hi1, y0, y1))
    return None


def closure_grow(state: ClosureState, budget: int | None = None) -> ClosureState:
    """One generation of R1/R2 over the current points.

    At most ``budget`` new points are added (None means unbounded); which
    ones is fixed by the line-pair enumeration order, so growth is
    deterministic.
    """
    _validate_base(state.base)
    lines = spanned_lines(state.points)
    generation = dict(state.generation)
    provenance = dict(state.provenance)
    new: list[Point2] = []
    g = state.depth + 1
    for i in range(len(lines)):
        if budget is not None and len(new) >= budget:
            break
        l1 = lines[i]
        for j in range(i + 1, len(lines)):
            x = l1[0].intersect(lines[j][0])
            if x is None or x in generation:
                continue
            d = _derive(x, l1, lines[j])
            if d is None:
                continue
            generation[x] = g
            provenance[x] = d
            new.append(x)
            if budget is not None and len(new) >= budget:
                break
    return ClosureState(state.base, state.points + tuple(new), generation, provenance, g)


def grow(base: Sequence[Point2], generations: int, budget: int | None = None) -> ClosureState:
    state = initial_state(base)
    for _ in range(generations):
        state = closure_grow(state, budget)
    return state


def replay_rule(rule: str, parents: Quad) -> Point2:
    """Apply a closure rule to (image) parent points; single point or error."""
    x0, x1, y0, y1 = parents
    if x0 == x1 or y0 == y1:
        raise ImageDegeneracy(f"{rule}: degenerate image segment")
    if rule == "R1":
        hit = segment_intersect(Segment(x0, x1), Segment(y0, y1))
        if not isinstance(hit, Point2):
            raise ImageDegeneracy(f"R1: image segments meet in {hit!r}")
        return hit
    if rule == "R2":
        z = line_through(x0, x1).intersect(line_through(y0, y1))
        if z is None or not between(x0, z, x1) or not between(y0, y1, z):
            raise ImageDegeneracy("R2: image ray does not hit the image segment uniquely")
        return z
    raise ValueError(f"unknown rule {rule!r}")


@dataclass(frozen=True)
class ValuedClosure:
    state: ClosureState
    values: dict = field(compare=False)
    image_base: Quad = None


def seed_values(state: ClosureState, image_base: Sequence[Point2]) -> ValuedClosure:
    image_base = _validate_base(image_base, ImageDegeneracy)
    values = dict(zip(state.base, image_base))
    return extend_values(ValuedClosure(initial_state(state.base), values, image_base), state)


def extend_values(v: ValuedClosure, grown: ClosureState,
                  replay: Callable[[str, Quad], Point2] = replay_rule) -> ValuedClosure:
    """Assign every point of ``grown`` missing from ``v`` the value forced by
    replaying its provenance rule on the images of its parents."""
    values = dict(v.values)
    for p in grown.points:
        if p in values:
            continue
        d = grown.provenance[p]
        values[p] = replay(d.rule, tuple(values[q] for q in d.parents))
    return ValuedClosure(grown, values, v.image_base)


@dataclass(frozen=True)
class Mismatch:
    point: Point2
    propagated: Point2
    expected: Point2


def rigidity_check(base: Sequence[Point2], image_base: Sequence[Point2], generations: int,
                   budget: int | None = None,
                   replay: Callable[[str, Quad], Point2] = replay_rule) -> Mismatch | None:
    """Grow the closure, propagate values by the rules, and compare every
    propagated value with the homography fitted to the base correspondences."""
    state = initial_state(base)
    valued = seed_values(state, image_base)
    H = fit_homography(list(state.base), list(valued.image_base))
    for _ in range(generations):
        state = closure_grow(state, budget)
        valued = extend_values(valued, state, replay)
    for p in state.points:
        expected = evaluate(H, p)
        if valued.values[p] != expected:
            return Mismatch(p, valued.values[p], expected)
    return None


def barycentric_grid(a: Point2, b: Point2, c: Point2, grid_n: int) -> list[Point2]:
    """Triangle nodes ``(i a + j b + k c) / (grid_n - 1)``, ``i + j + k = grid_n - 1``."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    n = grid_n - 1
    nodes = []
    for i in range(n + 1):
        for j in range(n + 1 - i):
            k = n - i - j
            nodes.append(Point2((i * a.x + j * b.x + k * c.x) / n, (i * a.y + j * b.y + k * c.y) / n))
    return nodes


def _max_min_sqdist(nodes: Sequence[Point2], points: Sequence[Point2]) -> Fraction:
    # common denominator keeps the inner loop in integers
    m = 1
    for p in list(nodes) + list(points):
        m = lcm(m, p.x.denominator, p.y.denominator)
    ip = [(int(p.x * m), int(p.y * m)) for p in points]
    worst = 0
    for q in nodes:
        qx, qy = int(q.x * m), int(q.y * m)
        best = min((px - qx) ** 2 + (py - qy) ** 2 for px, py in ip)
        worst = max(worst, best)
    return Fraction(worst, m * m)


def covering_radius(state: ClosureState, grid_n: int) -> Fraction:
    """Squared covering radius of the closure over a barycentric grid of the
    base triangle: max over nodes of the squared distance to the nearest point."""
    a, b, c, _ = state.base
    return _max_min_sqdist(barycentric_grid(a, b, c, grid_n), state.points)


def side_covering_radii(state: ClosureState, grid_n: int) -> tuple[Fraction, Fraction, Fraction]:
    """Squared covering radius of each side ``[a,b]``, ``[b,c]``, ``[c,a]`` by
    the closure points lying on that side."""
    a, b, c, _ = state.base
    out = []
    for p, q in ((a, b), (b, c), (c, a)):
        nodes = [Point2(p.x + (q.x - p.x) * Fraction(i, grid_n - 1), p.y + (q.y - p.y) * Fraction(i, grid_n - 1))
                 for i in range(grid_n)]
        on_side = [s for s in state.points if between(p, s, q)]
        out.append(_max_min_sqdist(nodes, on_side))
    return tuple(out)
