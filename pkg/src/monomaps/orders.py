"""Linearly ordered target structures and linear betweenness.

Four shapes of order value are supported:

* :class:`Rat` -- a rational number;
* :class:`LexPair` -- an element of the lexicographic square of the rationals;
* :class:`DoubleArrow` -- a pair ``(real, side)`` with ``side`` in {0, 1},
  ordered lexicographically (the double arrow ``R * 2``);
* :class:`LexSum` -- an element ``(label, inner)`` of a lexicographic sum whose
  summands are indexed by small integers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyInterval, ShapeMismatch
from .geometry import Point2, to_rational


class OrderValue:
    """Common base; comparisons route through :func:`compare`."""

    __slots__ = ()
    tag = ""

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0


@dataclass(frozen=True, eq=True, order=False)
class Rat(OrderValue):
    value: Fraction
    tag = "rat"

    def __post_init__(self):
        object.__setattr__(self, "value", to_rational(self.value))


@dataclass(frozen=True, eq=True, order=False)
class LexPair(OrderValue):
    first: Fraction
    second: Fraction
    tag = "lex"

    def __post_init__(self):
        object.__setattr__(self, "first", to_rational(self.first))
        object.__setattr__(self, "second", to_rational(self.second))

    @classmethod
    def of_point(cls, p: Point2) -> LexPair:
        return cls(p.x, p.y)


@dataclass(frozen=True, eq=True, order=False)
class DoubleArrow(OrderValue):
    real: Fraction
    side: int
    tag = "da"

    def __post_init__(self):
        object.__setattr__(self, "real", to_rational(self.real))
        if self.side not in (0, 1):
            raise ValueError("double-arrow side bit must be 0 or 1")


@dataclass(frozen=True, eq=True, order=False)
class LexSum(OrderValue):
    label: int
    inner: OrderValue
    tag = "sum"

    def __post_init__(self):
        if not isinstance(self.inner, OrderValue):
            raise TypeError("LexSum inner value must be an OrderValue")


def _sign(a, b) -> int:
    return (a > b) - (a < b)


def compare(u: OrderValue, v: OrderValue) -> int:
    """Three-way comparison: -1, 0 or +1.

    Summands of a :class:`LexSum` are compared by label first; values under
    equal labels must have the same shape.
    """
    if type(u) is not type(v):
        raise ShapeMismatch(f"cannot compare {u.tag or type(u).__name__} with {v.tag or type(v).__name__}")
    if isinstance(u, Rat):
        return _sign(u.value, v.value)
    if isinstance(u, LexPair):
        return _sign(u.first, v.first) or _sign(u.second, v.second)
    if isinstance(u, DoubleArrow):
        return _sign(u.real, v.real) or _sign(u.side, v.side)
    if isinstance(u, LexSum):
        return _sign(u.label, v.label) or compare(u.inner, v.inner)
    raise ShapeMismatch(f"unknown order value {u!r}")


def same_shape(u: OrderValue, v: OrderValue) -> bool:
    return type(u) is type(v)


def linear_between(a: OrderValue, x: OrderValue, b: OrderValue) -> bool:
    """``a <= x <= b`` or ``b <= x <= a``."""
    ax = compare(a, x)
    xb = compare(x, b)
    return (ax <= 0 and xb <= 0) or (ax >= 0 and xb >= 0)


def squash(x) -> Fraction:
    """Strictly increasing rational bijection from Q onto the open (0, 1)."""
    x = to_rational(x)
    return (1 + x / (1 + abs(x))) / 2


def rescale(x, lo, hi) -> Fraction:
    """Affine increasing map of (0, 1) onto (lo, hi)."""
    x, lo, hi = to_rational(x), to_rational(lo), to_rational(hi)
    if lo >= hi:
        raise EmptyInterval(f"need lo < hi, got [{lo}, {hi}]")
    return lo + (hi - lo) * x
