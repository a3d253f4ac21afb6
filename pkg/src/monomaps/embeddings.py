"""One-to-one monotone maps into linear orders, and projections to the plane."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterator, Sequence

from .errors import DegenerateInput, NotOnFamily, SearchExhausted
from .geometry import Line, Point2, Segment, between, line_through, to_rational
from .maps import FiniteConfig, FiniteMap, check_injective, check_monotone
from .orders import DoubleArrow, LexPair, LexSum, Rat, rescale, squash


# -- linear functionals ----------------------------------------------------------

def functional_candidates() -> Iterator[tuple[int, int]]:
    """Primitive integer pairs ``(u, v)`` by increasing height max(|u|, |v|).

    Height 1 gives (1, 0), (0, 1), (1, 1), (1, -1); height 2 starts at (2, 1).
    """
    h = 1
    while True:
        ring = ([(h, k) for k in range(0, h)] + [(k, h) for k in range(0, h + 1)]
                + [(h, -k) for k in range(1, h + 1)] + [(k, -h) for k in range(1, h)])
        for u, v in ring:
            if gcd(u, v) == 1:
                yield u, v
        h += 1


@dataclass(frozen=True)
class ProjectionEmbedding:
    """``phi(x, y) = u x + v y`` together with the verified induced map."""

    u: int
    v: int
    map: FiniteMap

    def __call__(self, p: Point2) -> Fraction:
        return self.u * p.x + self.v * p.y


def projection_embed(points: Sequence[Point2]) -> ProjectionEmbedding:
    """A linear functional injective on ``points``.

    The kernel direction ``(-v, u)`` must avoid the finitely many directions
    of lines through two points; the first candidate that does is used.
    """
    pts = list(points)
    FiniteConfig(pts)  # rejects duplicates
    bad = set()
    for p, q in combinations(pts, 2):
        dx, dy = q.x - p.x, q.y - p.y
        bad.add(None if dx == 0 else dy / dx)
    for u, v in functional_candidates():
        kernel = _slope(-v, u)
        if kernel not in bad:
            break
    m = FiniteMap.from_function(pts, lambda p: Rat(u * p.x + v * p.y))
    if check_injective(m) is not None or check_monotone(m) is not None:
        raise AssertionError("projection embedding failed its own certificate")
    return ProjectionEmbedding(u, v, m)


def _slope(dx, dy):
    return None if dx == 0 else Fraction(dy) / dx


# -- projection of finite sets in Q^n onto a coordinate plane ----------------------

def _between_nd(a: Sequence[Fraction], x: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    d = [bi - ai for ai, bi in zip(a, b)]
    w = [xi - ai for ai, xi in zip(a, x)]
    k = next((i for i, di in enumerate(d) if di != 0), None)
    if k is None:
        return all(wi == 0 for wi in w)
    lam = w[k] / d[k]
    if not 0 <= lam <= 1:
        return False
    return all(wi == lam * di for wi, di in zip(w, d))


@dataclass(frozen=True)
class PlaneProjection:
    """Linear projection onto the first two coordinates along the kernel
    spanned by ``e_k - alpha[k] e_1 - beta[k] e_2`` (k >= 3)."""

    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    points: tuple[tuple[Fraction, ...], ...]
    image: FiniteConfig

    def project(self, p: Sequence[Fraction]) -> Point2:
        return _project(p, self.alpha, self.beta)

    def first_violation(self):
        """Re-run the both-ways betweenness check; None when it is an isomorphism."""
        return _iso_violation(self.points, list(self.image.points))


def _project(p, alpha, beta) -> Point2:
    tail = p[2:]
    return Point2(p[0] + sum((a * t for a, t in zip(alpha, tail)), Fraction(0)),
                  p[1] + sum((b * t for b, t in zip(beta, tail)), Fraction(0)))


def _iso_violation(points, images):
    n = len(points)
    if len(set(images)) != n:
        return ("collision",)
    for a in range(n):
        for x in range(n):
            if x == a:
                continue
            for b in range(n):
                if b == x:
                    continue
                if _between_nd(points[a], points[x], points[b]) != between(images[a], images[x], images[b]):
                    return ("triple", a, x, b)
    return None


def _kernel_candidates(extra: int) -> Iterator[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    # moment-curve parameters: each bad event is a nonzero polynomial condition
    # in s, so only finitely many s fail
    s = 0
    while True:
        q = Fraction(s)
        alpha = tuple(q ** (2 * k + 1) for k in range(extra))
        beta = tuple(q ** (2 * k + 2) for k in range(extra))
        yield alpha, beta
        s = -s if s > 0 else -s + 1


def project_to_plane(points: Sequence[Sequence], budget: int = 10_000) -> PlaneProjection:
    """Linear projection onto the (x1, x2)-plane that is a betweenness
    isomorphism on ``points`` (collinearity and order preserved both ways)."""
    pts = [tuple(to_rational(v) for v in p) for p in points]
    if not pts:
        raise DegenerateInput("no points")
    dim = len(pts[0])
    if dim < 2 or any(len(p) != dim for p in pts):
        raise DegenerateInput("points must share one dimension >= 2")
    if len(set(pts)) != len(pts):
        raise DegenerateInput("points must be distinct")
    for tries, (alpha, beta) in enumerate(_kernel_candidates(dim - 2)):
        if tries >= budget:
            break
        images = [_project(p, alpha, beta) for p in pts]
        if _iso_violation(pts, images) is None:
            return PlaneProjection(alpha, beta, tuple(pts), FiniteConfig(images))
    raise SearchExhausted(f"no isomorphic projection among {budget} candidate kernels")


# -- parallel lines ----------------------------------------------------------------

def cantor_gaps(level: int) -> list[tuple[Fraction, Fraction]]:
    """Open middle thirds removed in the first ``level`` Cantor steps, left to right."""
    out: list[tuple[Fraction, Fraction]] = []

    def walk(lo: Fraction, hi: Fraction, depth: int):
        if depth == 0:
            return
        t = (hi - lo) / 3
        walk(lo, lo + t, depth - 1)
        out.append((lo + t, lo + 2 * t))
        walk(lo + 2 * t, hi, depth - 1)

    walk(Fraction(0), Fraction(1), level)
    return out


def parallel_intervals(k: int) -> list[tuple[Fraction, Fraction]]:
    """Disjoint increasing intervals for ``k`` horizontal lines."""
    if k <= 0:
        return []
    level = k.bit_length()  # == ceil(log2(k + 1))
    return cantor_gaps(level)[:k]


def parallel_lines_map(heights: Sequence, p: Point2) -> Rat:
    """Injective monotone map of finitely many horizontal lines into Q.

    The line of height rank ``i`` is sent increasingly onto the ``i``-th
    removed Cantor interval, so lower lines land entirely below higher ones.
    """
    hs = [to_rational(h) for h in heights]
    if hs != sorted(set(hs)):
        raise ValueError("heights must be strictly increasing")
    try:
        i = hs.index(p.y)
    except ValueError:
        raise NotOnFamily(f"{p} is not on any of the lines") from None
    lo, hi = parallel_intervals(len(hs))[i]
    return Rat(rescale(squash(p.x), lo, hi))


# -- lexicographic targets -----------------------------------------------------------

def lex_identity(p: Point2) -> LexPair:
    return LexPair(p.x, p.y)


@dataclass(frozen=True)
class LineFamily:
    """Lines, each optionally clipped to a segment, with integer labels."""

    lines: tuple[tuple[Line, Segment | None], ...]
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(len(self.lines))))

    def members(self, p: Point2) -> list[int]:
        """Indices of the lines (or segments) containing ``p``."""
        out = []
        for i, (line, clip) in enumerate(self.lines):
            if line.contains(p) and (clip is None or between(clip.p, p, clip.q)):
                out.append(i)
        return out

    def contains(self, p: Point2) -> bool:
        return bool(self.members(p))

    @classmethod
    def of_lines(cls, *lines: Line) -> LineFamily:
        return cls(tuple((line, None) for line in lines))

    @classmethod
    def of_segments(cls, *segments: Segment) -> LineFamily:
        return cls(tuple((line_through(s.p, s.q), s) for s in segments))


def three_lines_config(vertical_x, l1: Line, l2: Line) -> LineFamily:
    """Three pairwise non-parallel lines, the first being ``x = vertical_x``."""
    v = Line.from_coefficients(1, 0, vertical_x)
    fam = LineFamily.of_lines(v, l1, l2)
    for a, b in combinations([v, l1, l2], 2):
        if a.is_parallel(b):
            raise DegenerateInput("the three lines must be pairwise non-parallel")
    return fam


def three_lines_lexsum(config: LineFamily, p: Point2) -> LexSum:
    """Injective monotone map of three lines, the first vertical, into
    ``(Q * 2) + Q + (Q * 2)``.

    Left of the vertical line a point goes to summand 0 as ``(x, which)``
    where ``which`` says which of the two slanted lines carries it; on the
    vertical line to summand 1 as its height; right of it to summand 2.
    """
    if len(config.lines) != 3 or not config.lines[0][0].vertical:
        raise DegenerateInput("expected three lines with the vertical one first")
    members = config.members(p)
    if not members:
        raise NotOnFamily(f"{p} is not on the configuration")
    vline = config.lines[0][0]
    x_v = Fraction(vline.c, vline.a)
    if p.x == x_v:
        return LexSum(1, Rat(p.y))
    which = min(i for i in members if i > 0) - 1
    return LexSum(0 if p.x < x_v else 2, DoubleArrow(p.x, which))
