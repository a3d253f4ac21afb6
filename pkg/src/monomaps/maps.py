"""Finite configurations, finite maps and the exhaustive betweenness oracle.

A finite map is verified by brute force over triples. The fast path only
visits triples that are collinear in the source, which is exact: every
other triple has a false premise (see :func:`check_monotone_bruteforce`
for the literal all-triples version, kept as an independent oracle).
"""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Callable, Iterable, Sequence, Union

from .errors import CapExceeded, DuplicatePoints, NotInjective, ShapeMismatch
from .geometry import Point2, barycentric_parameter, between, lerp
from .orders import OrderValue, compare, linear_between

Target = Union[Point2, OrderValue]

DEFAULT_MAX_POINTS = 3000


class Structure(enum.Enum):
    EUCLIDEAN = "euclidean"
    DISCRETE = "discrete"


def triple_budget() -> int:
    """Ordered-triple budget for exhaustive checks (``BTW_MAX_TRIPLES``)."""
    env = os.environ.get("BTW_MAX_TRIPLES")
    if env:
        return int(env)
    return DEFAULT_MAX_POINTS ** 3


def ensure_within_budget(n_points: int, force: bool = False):
    if not force and n_points ** 3 > triple_budget():
        raise CapExceeded(
            f"{n_points} points means {n_points ** 3} ordered triples, over the budget of "
            f"{triple_budget()}; set BTW_MAX_TRIPLES or pass force"
        )


def _integer_coords(points: Sequence[Point2]) -> list[tuple[int, int]]:
    m = 1
    for p in points:
        m = lcm(m, p.x.denominator, p.y.denominator)
    return [(int(p.x * m), int(p.y * m)) for p in points]


def collinear_groups(points: Sequence[Point2]) -> list[tuple[int, ...]]:
    """Index tuples of every line meeting at least three of ``points``.

    Each tuple is sorted along its line (lexicographic (x, y) order) and the
    list is sorted, so the result is deterministic.
    """
    coords = _integer_coords(points)
    n = len(coords)
    groups = []
    for i in range(n):
        xi, yi = coords[i]
        buckets: dict[tuple[int, int], list[int]] = {}
        for j in range(n):
            if j == i:
                continue
            dx, dy = coords[j][0] - xi, coords[j][1] - yi
            g = gcd(dx, dy)
            dx, dy = dx // g, dy // g
            if dx < 0 or (dx == 0 and dy < 0):
                dx, dy = -dx, -dy
            buckets.setdefault((dx, dy), []).append(j)
        for members in buckets.values():
            # emit each line once, from its smallest index
            if len(members) >= 2 and members[0] > i:
                line = [i] + members
                line.sort(key=lambda k: coords[k])
                groups.append(tuple(line))
    groups.sort()
    return groups


@dataclass(frozen=True)
class FiniteConfig:
    points: tuple[Point2, ...]
    structure: Structure = Structure.EUCLIDEAN

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(set(self.points)) != len(self.points):
            raise DuplicatePoints("configuration points must be pairwise distinct")

    def __len__(self):
        return len(self.points)

    @cached_property
    def lines(self) -> list[tuple[int, ...]]:
        return collinear_groups(self.points)

    @cached_property
    def index(self) -> dict[Point2, int]:
        return {p: i for i, p in enumerate(self.points)}

    def source_between(self, a: int, x: int, b: int) -> bool:
        if self.structure is Structure.DISCRETE:
            return x == a or x == b
        return between(self.points[a], self.points[x], self.points[b])


@dataclass(frozen=True)
class FiniteMap:
    domain: FiniteConfig
    values: tuple[Target, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.values) != len(self.domain.points):
            raise ValueError("need exactly one value per domain point")
        if self.values:
            first = self.values[0]
            if isinstance(first, Point2):
                if not all(isinstance(v, Point2) for v in self.values):
                    raise ShapeMismatch("mixed planar and ordered targets")
            elif isinstance(first, OrderValue):
                if not all(type(v) is type(first) for v in self.values):
                    raise ShapeMismatch("ordered targets must share one shape")
            else:
                raise TypeError(f"unsupported target {first!r}")

    @classmethod
    def from_function(cls, points: Iterable[Point2], f: Callable[[Point2], Target],
                      structure: Structure = Structure.EUCLIDEAN) -> FiniteMap:
        pts = tuple(points)
        return cls(FiniteConfig(pts, structure), tuple(f(p) for p in pts))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Point2, Target]],
                   structure: Structure = Structure.EUCLIDEAN) -> FiniteMap:
        pairs = list(pairs)
        return cls(FiniteConfig([p for p, _ in pairs], structure), [v for _, v in pairs])

    def __len__(self):
        return len(self.values)

    @property
    def planar(self) -> bool:
        return bool(self.values) and isinstance(self.values[0], Point2)

    def pairs(self):
        return list(zip(self.domain.points, self.values))

    def target_between(self, a: int, x: int, b: int) -> bool:
        return target_between(self.values[a], self.values[x], self.values[b])


def target_between(a: Target, x: Target, b: Target) -> bool:
    if isinstance(a, Point2):
        return between(a, x, b)
    return linear_between(a, x, b)


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class MonotonicityViolation:
    """Source triple ``B(a, x, b)`` whose image is not between."""

    a: int
    x: int
    b: int
    kind = "monotonicity"

    def verify(self, m: FiniteMap) -> bool:
        return m.domain.source_between(self.a, self.x, self.b) and not m.target_between(self.a, self.x, self.b)

    def to_json(self):
        return {"kind": self.kind, "triple": [self.a, self.x, self.b]}


@dataclass(frozen=True)
class InjectivityCollision:
    i: int
    j: int
    kind = "injectivity"

    def verify(self, m: FiniteMap) -> bool:
        return self.i != self.j and m.values[self.i] == m.values[self.j]

    def to_json(self):
        return {"kind": self.kind, "pair": [self.i, self.j]}


@dataclass(frozen=True)
class ReverseViolation:
    """Image triple that is between while the source triple is not."""

    a: int
    x: int
    b: int
    kind = "reverse"

    def verify(self, m: FiniteMap) -> bool:
        return m.target_between(self.a, self.x, self.b) and not m.domain.source_between(self.a, self.x, self.b)

    def to_json(self):
        return {"kind": self.kind, "triple": [self.a, self.x, self.b]}


@dataclass(frozen=True)
class BarycentricViolation:
    """``x = (1 - lam) a + lam b`` but ``f(x) != (1 - lam) f(a) + lam f(b)``."""

    a: int
    x: int
    b: int
    kind = "barycentric"

    def verify(self, m: FiniteMap) -> bool:
        pts = m.domain.points
        lam = barycentric_parameter(pts[self.a], pts[self.x], pts[self.b])
        if lam is None or not 0 <= lam <= 1:
            return False
        return m.values[self.x] != lerp(m.values[self.a], m.values[self.b], lam)

    def to_json(self):
        return {"kind": self.kind, "triple": [self.a, self.x, self.b]}


Witness = Union[MonotonicityViolation, InjectivityCollision, ReverseViolation, BarycentricViolation]

WITNESS_KINDS = {
    cls.kind: cls
    for cls in (MonotonicityViolation, InjectivityCollision, ReverseViolation, BarycentricViolation)
}


def witness_from_json(data) -> Witness:
    cls = WITNESS_KINDS[data["kind"]]
    if cls is InjectivityCollision:
        return cls(*data["pair"])
    return cls(*data["triple"])


# -- checks --------------------------------------------------------------------

def _line_triples(lines: Iterable[Sequence[int]]):
    """Yield ``(lo, mid, hi)`` for every strictly-between triple on the lines."""
    for line in lines:
        k = len(line)
        for p in range(k - 2):
            for q in range(p + 1, k - 1):
                for r in range(q + 1, k):
                    a, b = line[p], line[r]
                    if a > b:
                        a, b = b, a
                    yield a, line[q], b


def collinear_triples(config: FiniteConfig) -> list[tuple[int, int, int]]:
    """Every collinear unordered triple once, as ``(outer, middle, outer)``.

    Outer indices are in increasing order; the list is sorted.
    """
    return sorted(_line_triples(config.lines))


def _line_is_monotone(vals: Sequence[Target]) -> bool:
    """Decide monotonicity along one line in linear time.

    ``vals`` are the values in order along the line. Every middle value must
    lie between the two end values; for points that reduces to a common
    segment plus a weakly monotone parameter, for an order to a weakly
    monotone sequence.
    """
    first, last = vals[0], vals[-1]
    if isinstance(first, Point2):
        if first == last:
            return all(v == first for v in vals)
        dx, dy = last.x - first.x, last.y - first.y
        use_x = dx != 0
        prev = Fraction(0)
        for v in vals:
            if not between(first, v, last):
                return False
            t = (v.x - first.x) / dx if use_x else (v.y - first.y) / dy
            if t < prev:
                return False
            prev = t
        return True
    signs = {compare(u, v) for u, v in zip(vals, vals[1:])} - {0}
    return len(signs) <= 1


def check_monotone(m: FiniteMap) -> MonotonicityViolation | None:
    """Exhaustive monotonicity check; returns the first violation or None.

    "First" is the lexicographically smallest ordered triple ``(a, x, b)``,
    exactly what an all-triples scan in index order would report. Lines are
    screened in linear time and only failing lines are scanned triple by
    triple.
    """
    if m.domain.structure is Structure.DISCRETE:
        return None
    vals = m.values
    bad = [line for line in m.domain.lines if not _line_is_monotone([vals[i] for i in line])]
    best = None
    for a, x, b in _line_triples(bad):
        if best is not None and (a, x, b) >= best:
            continue
        if not target_between(vals[a], vals[x], vals[b]):
            best = (a, x, b)
    return MonotonicityViolation(*best) if best else None


def check_monotone_bruteforce(m: FiniteMap) -> MonotonicityViolation | None:
    """All ordered triples, no prefilter. Cubic; for small maps and cross-checks."""
    n = len(m)
    for a in range(n):
        for x in range(n):
            for b in range(n):
                if m.domain.source_between(a, x, b) and not m.target_between(a, x, b):
                    return MonotonicityViolation(a, x, b)
    return None


def check_injective(m: FiniteMap) -> InjectivityCollision | None:
    """The lexicographically first pair ``i < j`` with equal values, if any."""
    seen: dict = {}
    best = None
    for j, v in enumerate(m.values):
        i = seen.setdefault(v, j)
        if i != j and (best is None or (i, j) < best):
            best = (i, j)
    return InjectivityCollision(*best) if best else None


def check_isomorphism(m: FiniteMap) -> MonotonicityViolation | ReverseViolation | None:
    """Monotone, and the inverse on the image is monotone too."""
    if check_injective(m) is not None:
        raise NotInjective("isomorphism check needs an injective map")
    forward = check_monotone(m)
    if forward is not None:
        return forward
    vals = m.values
    if not vals:
        return None
    if m.planar:
        triples = _line_triples(collinear_groups(vals))
    else:
        order = sorted(range(len(vals)), key=lambda i: vals[i])
        triples = _line_triples([order])
    best = None
    for a, x, b in triples:
        if best is not None and (a, x, b) >= best:
            continue
        if not m.domain.source_between(a, x, b):
            best = (a, x, b)
    return ReverseViolation(*best) if best else None


def check_affine_barycentric(m: FiniteMap) -> BarycentricViolation | None:
    """Checks ``f((1 - lam) a + lam b) = (1 - lam) f(a) + lam f(b)`` on all
    collinear source triples. Planar targets only."""
    if not m.planar:
        if not m.values:
            return None
        raise ShapeMismatch("barycentric check needs planar targets")
    pts, vals = m.domain.points, m.values
    best = None
    for a, x, b in _line_triples(m.domain.lines):
        if best is not None and (a, x, b) >= best:
            continue
        lam = barycentric_parameter(pts[a], pts[x], pts[b])
        if vals[x] != lerp(vals[a], vals[b], lam):
            best = (a, x, b)
    return BarycentricViolation(*best) if best else None


def count_collinear_triples(config: FiniteConfig) -> int:
    return sum(len(line) * (len(line) - 1) * (len(line) - 2) // 6 for line in config.lines)


def compose(first: FiniteMap, second: Callable[[Target], Target]) -> FiniteMap:
    """Post-compose a finite map with a callable on targets."""
    return FiniteMap(first.domain, tuple(second(v) for v in first.values))
