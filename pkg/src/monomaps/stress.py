"""Registry of total maps and an adversarial sampling harness.

A total map is a callable defined on an infinite planar set (a convex
polygon or a family of lines/segments) together with a sampler for that
set. The harness builds an exact finite sample, evaluates the map and runs
the exhaustive oracle on it.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .constructions import collapse_to_edge, fan_collapse, five_point_at
from .embeddings import LineFamily, lex_identity, parallel_lines_map, three_lines_config, three_lines_lexsum
from .errors import UnknownPlugin
from .geometry import Line, Point2, Segment, between, in_convex_polygon, convex_hull, line_through, midpoint, pt
from .maps import FiniteMap, Target, check_injective, check_monotone
from .orders import Rat
from .projective import ProjectiveTransform, polygon_grid


@dataclass(frozen=True)
class SampleSpec:
    grid: int = 11
    anchors: int | None = 8
    seed: int = 0


@dataclass(frozen=True)
class PolygonDomain:
    vertices: tuple[Point2, ...]

    def sample(self, spec: SampleSpec, rng: random.Random) -> list[Point2]:
        """Grid of the polygon, plus midpoints of random anchor pairs and
        crossings of segments between anchors."""
        hull = convex_hull(self.vertices)
        base = polygon_grid(hull, spec.grid)
        k = len(base) if spec.anchors is None else min(spec.anchors, len(base))
        anchors = sorted(rng.sample(base, k))
        extra = {midpoint(a, b) for a, b in combinations(anchors, 2)}
        chords = [Segment(a, b) for a, b in combinations(anchors, 2)]
        for s, t in combinations(chords, 2):
            if line_through(s.p, s.q).is_parallel(line_through(t.p, t.q)):
                continue
            x = line_through(s.p, s.q).intersect(line_through(t.p, t.q))
            if between(s.p, x, s.q) and between(t.p, x, t.q):
                extra.add(x)
        return sorted(set(base) | {p for p in extra if in_convex_polygon(p, hull)})


@dataclass(frozen=True)
class FamilyDomain:
    """Lines or segments; unbounded lines are sampled over ``span``."""

    family: LineFamily
    span: tuple[Fraction, Fraction] = (Fraction(-3), Fraction(3))

    def _base(self, grid: int) -> list[Point2]:
        lo, hi = self.span
        out = set()
        for line, clip in self.family.lines:
            for i in range(grid):
                t = Fraction(i, grid - 1)
                if clip is not None:
                    out.add(Point2(clip.p.x + t * (clip.q.x - clip.p.x), clip.p.y + t * (clip.q.y - clip.p.y)))
                elif line.vertical:
                    out.add(Point2(Fraction(line.c, line.a), lo + t * (hi - lo)))
                else:
                    x = lo + t * (hi - lo)
                    out.add(Point2(x, line.y_at(x)))
        return sorted(out)

    def sample(self, spec: SampleSpec, rng: random.Random) -> list[Point2]:
        """Points along each member, plus every point where a line through
        two anchors on different members crosses a third member."""
        base = self._base(spec.grid)
        k = len(base) if spec.anchors is None else min(spec.anchors, len(base))
        anchors = sorted(rng.sample(base, k))
        pts = set(base)
        members = {p: set(self.family.members(p)) for p in anchors}
        for p, q in combinations(anchors, 2):
            if members[p] & members[q] or members[p] == members[q]:
                continue
            chord = line_through(p, q)
            for i, (line, clip) in enumerate(self.family.lines):
                if i in members[p] or i in members[q]:
                    continue
                x = chord.intersect(line)
                if x is not None and (clip is None or between(clip.p, x, clip.q)) and self._in_span(x, line, clip):
                    pts.add(x)
        return sorted(pts)

    def _in_span(self, x: Point2, line: Line, clip) -> bool:
        if clip is not None:
            return True
        lo, hi = self.span
        v = x.y if line.vertical else x.x
        return lo <= v <= hi


@dataclass(frozen=True)
class TotalMap:
    name: str
    evaluate: Callable[[Point2], Target]
    domain: PolygonDomain | FamilyDomain
    injective: bool = False
    description: str = ""


_REGISTRY: dict[str, TotalMap] = {}


def register_map(total: TotalMap, replace: bool = False) -> TotalMap:
    if total.name in _REGISTRY and not replace:
        raise ValueError(f"a map named {total.name!r} is already registered")
    _REGISTRY[total.name] = total
    return total


def register_projective(name: str, P: ProjectiveTransform, polygon: Sequence[Point2],
                        replace: bool = False) -> TotalMap:
    """Register ``P`` restricted to a convex polygon inside one of its halfplanes."""
    return register_map(TotalMap(name, P, PolygonDomain(tuple(polygon)), injective=True,
                                 description="projective transformation on a convex polygon"), replace)


def get_map(map_id: str | TotalMap) -> TotalMap:
    if isinstance(map_id, TotalMap):
        return map_id
    try:
        return _REGISTRY[map_id]
    except KeyError:
        raise UnknownPlugin(f"no map registered as {map_id!r}; known: {sorted(_REGISTRY)}") from None


def registered() -> list[str]:
    return sorted(_REGISTRY)


def sample_map(map_id: str | TotalMap, spec: SampleSpec = SampleSpec()) -> FiniteMap:
    total = get_map(map_id)
    rng = random.Random(spec.seed)
    return FiniteMap.from_function(total.domain.sample(spec, rng), total.evaluate)


def stress_total_map(map_id: str | TotalMap, spec: SampleSpec = SampleSpec(),
                     injective: bool | None = None):
    """Sample, evaluate and check. Injectivity is checked when the map claims
    it, or when ``injective`` is passed explicitly. Returns the first
    witness or None."""
    total = get_map(map_id)
    m = sample_map(total, spec)
    witness = check_monotone(m)
    if witness is None and (total.injective if injective is None else injective):
        witness = check_injective(m)
    return witness


# -- built-ins ----------------------------------------------------------------------

TRIANGLE = (pt(0, 0), pt(1, 0), pt(0, 1))
UNIT_SQUARE = (pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1))
FAN_V = pt(Fraction(1, 2), Fraction(1, 2))
PARALLEL_HEIGHTS = tuple(Fraction(h) for h in range(5))
THREE_LINES = three_lines_config(0, Line.from_coefficients(1, -1, 0), Line.from_coefficients(1, 2, 2))
THREE_SEGMENTS = LineFamily.of_segments(
    Segment(pt(-1, -2), pt(1, 2)), Segment(pt(-2, 0), pt(2, 0)), Segment(pt(2, -1), pt(-2, 1)))
EXAMPLE_HOMOGRAPHY = ProjectiveTransform(((1, 0, 0), (0, 1, 0), (1, 0, 1)))


def _builtins():
    a, b, c = TRIANGLE
    register_map(TotalMap("collapse_to_edge", lambda x: collapse_to_edge(a, b, c, x), PolygonDomain(TRIANGLE),
                          description="identity on [a,b], c elsewhere"))
    register_map(TotalMap("fan_collapse", lambda x: fan_collapse(a, b, c, FAN_V, x), PolygonDomain(TRIANGLE),
                          description="three-valued fan map"))
    register_map(TotalMap("five_point_map", five_point_at, PolygonDomain(UNIT_SQUARE),
                          description="unit square onto five points"))
    register_map(TotalMap("lex_identity", lex_identity, PolygonDomain(UNIT_SQUARE), injective=True,
                          description="identity into the lexicographic square"))
    register_map(TotalMap(
        "parallel_lines_map", lambda p: parallel_lines_map(PARALLEL_HEIGHTS, p),
        FamilyDomain(LineFamily.of_lines(*(Line.from_coefficients(0, 1, h) for h in PARALLEL_HEIGHTS))),
        injective=True, description="five horizontal lines into Cantor gaps"))
    register_map(TotalMap("three_lines_lexsum", lambda p: three_lines_lexsum(THREE_LINES, p),
                          FamilyDomain(THREE_LINES), injective=True,
                          description="three lines into (Q*2) + Q + (Q*2)"))
    register_map(TotalMap("three_segments_projection", lambda p: Rat(p.x + 3 * p.y), FamilyDomain(THREE_SEGMENTS),
                          description="linear functional on three concurrent segments; monotone, "
                                      "not injective on the full segments"))
    register_projective("homography", EXAMPLE_HOMOGRAPHY, UNIT_SQUARE)


_builtins()
