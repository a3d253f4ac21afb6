"""Deterministic SVG rendering of finite planar scenes.

Coordinates are exact rationals until the last moment; attribute values use
a fixed 12-significant-digit decimal form (display only). The viewport is the
bounding box of everything drawn, widened by 5% on each side, with the y axis
pointing up. Identical scenes give identical bytes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .closure import ClosureState
from .errors import EmptyScene
from .geometry import Line, Point2, Segment, between, format_rational, segment_intersect
from .maps import FiniteMap, Witness

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
SIZE = 480


@dataclass(frozen=True)
class Scene:
    points: tuple[Point2, ...] = ()
    segments: tuple[Segment, ...] = ()
    lines: tuple[Line, ...] = ()
    highlight: tuple[Point2, ...] = ()
    labels: tuple[tuple[Point2, str], ...] = ()
    polygons: tuple[tuple[Point2, ...], ...] = ()
    title: str = ""


def _num(q) -> str:
    return format(float(q), ".12g")


def decimal_label(q: Fraction) -> str:
    """Shortest exact decimal if the denominator is 2^a 5^b, else ``p/q``."""
    q = Fraction(q)
    d = q.denominator
    k = 0
    while d % 2 == 0 or d % 5 == 0:
        d //= 2 if d % 2 == 0 else 5
        k += 1
    if d != 1:
        return format_rational(q)
    for digits in range(k + 1):
        scaled = q * 10 ** digits
        if scaled.denominator == 1:
            n = scaled.numerator
            if digits == 0:
                return str(n)
            sign = "-" if n < 0 else ""
            s = str(abs(n)).rjust(digits + 1, "0")
            return f"{sign}{s[:-digits]}.{s[-digits:]}"
    return format_rational(q)  # unreachable


def _bbox(scene: Scene) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    pts = list(scene.points) + list(scene.highlight) + [p for p, _ in scene.labels]
    for s in scene.segments:
        pts += [s.p, s.q]
    for poly in scene.polygons:
        pts += list(poly)
    if not pts:
        raise EmptyScene("nothing to draw")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    w, h = hi_x - lo_x, hi_y - lo_y
    side = max(w, h) or Fraction(1)
    mx, my = side / 20, side / 20
    cx, cy = (lo_x + hi_x) / 2, (lo_y + hi_y) / 2
    half = side / 2
    return cx - half - mx, cy - half - my, cx + half + mx, cy + half + my


def _clip_line(line: Line, box) -> Segment | None:
    x0, y0, x1, y1 = box
    hits = []
    if line.b != 0:
        for x in (x0, x1):
            y = (line.c - line.a * x) / line.b
            if y0 <= y <= y1:
                hits.append(Point2(x, y))
    if line.a != 0:
        for y in (y0, y1):
            x = (line.c - line.b * y) / line.a
            if x0 <= x <= x1:
                hits.append(Point2(x, y))
    hits = sorted(set(hits))
    if len(hits) < 2:
        return None
    return Segment(hits[0], hits[-1])


def render_svg(scene: Scene) -> str:
    box = _bbox(scene)
    x0, y0, x1, y1 = box
    scale = Fraction(SIZE) / (x1 - x0)

    def sx(p: Point2) -> str:
        return _num((p.x - x0) * scale)

    def sy(p: Point2) -> str:
        return _num((y1 - p.y) * scale)

    r = "3"
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">']
    if scene.title:
        out.append(f"<title>{_escape(scene.title)}</title>")
    out.append(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')
    for poly in scene.polygons:
        pts = " ".join(f"{sx(p)},{sy(p)}" for p in poly)
        out.append(f'<polygon class="region" points="{pts}" fill="#f0f0f0" stroke="#999999" stroke-width="1"/>')
    for i, line in enumerate(scene.lines):
        seg = _clip_line(line, box)
        if seg is not None:
            out.append(f'<line class="line" x1="{sx(seg.p)}" y1="{sy(seg.p)}" x2="{sx(seg.q)}" y2="{sy(seg.q)}" '
                       f'stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="1.5" stroke-dasharray="6 3"/>')
    for i, s in enumerate(scene.segments):
        out.append(f'<line class="segment" x1="{sx(s.p)}" y1="{sy(s.p)}" x2="{sx(s.q)}" y2="{sy(s.q)}" '
                   f'stroke="{PALETTE[i % len(PALETTE)]}" stroke-width="2"/>')
    for p in scene.points:
        out.append(f'<circle class="point" cx="{sx(p)}" cy="{sy(p)}" r="{r}" fill="black"/>')
    for p in scene.highlight:
        out.append(f'<circle class="highlight" cx="{sx(p)}" cy="{sy(p)}" r="6" fill="none" '
                   f'stroke="#d62728" stroke-width="2"/>')
    for p, text in scene.labels:
        out.append(f'<text x="{sx(p)}" y="{sy(p)}" dx="5" dy="-5" font-family="monospace" font-size="11">'
                   f"{_escape(text)}</text>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def write_svg(scene: Scene, path: str) -> str:
    text = render_svg(scene)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return text


def point_label(p: Point2) -> str:
    return f"({decimal_label(p.x)}, {decimal_label(p.y)})"


# -- scene builders ------------------------------------------------------------------

def closure_scene(state: ClosureState) -> Scene:
    """Base points labelled, the triangle they span shaded, closure points as dots."""
    a, b, c, _ = state.base
    return Scene(points=tuple(state.points), polygons=((a, b, c),),
                 labels=tuple((p, n) for p, n in zip(state.base, "abcd")),
                 title=f"closure after {state.depth} generations, {len(state)} points")


def segments_scene(segments: Sequence[Segment], points: Sequence[Point2] = (),
                   highlight: Sequence[Point2] = ()) -> Scene:
    """Segments in distinct colours, with sample points and optional highlights."""
    common = _common_point(segments)
    labels = ((common, "o"),) if common is not None else ()
    return Scene(points=tuple(points), segments=tuple(segments), highlight=tuple(highlight), labels=labels,
                 title=f"{len(segments)} segments")


def _common_point(segments: Sequence[Segment]) -> Point2 | None:
    if len(segments) < 2:
        return None
    hit = segment_intersect(segments[0], segments[1])
    if not isinstance(hit, Point2):
        return None
    return hit if all(between(s.p, hit, s.q) for s in segments[2:]) else None


def witness_scene(m: FiniteMap, witness: Witness | None) -> Scene:
    """Domain points, with the violating triple (or pair) highlighted."""
    pts = m.domain.points
    hl: tuple[Point2, ...] = ()
    if witness is not None:
        idx = (witness.i, witness.j) if hasattr(witness, "i") else (witness.a, witness.x, witness.b)
        hl = tuple(pts[i] for i in idx)
    segs = (Segment(hl[0], hl[-1]),) if len(hl) == 3 else ()
    return Scene(points=tuple(pts), highlight=hl, segments=segs,
                 labels=tuple((p, point_label(p)) for p in hl),
                 title="witness" if witness is not None else "no violation")
