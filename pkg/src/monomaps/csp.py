"""Backtracking search for total orders satisfying strict betweenness.

A constraint ``(p, q, r)`` demands that ``q`` lies strictly between ``p``
and ``r`` in the order. Points are inserted one at a time into a growing
sequence; inserting never changes the relative order of points already
placed, so a constraint is checked once, when its last point arrives.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .embeddings import projection_embed
from .errors import CapExceeded, Unsatisfiable
from .maps import FiniteConfig, FiniteMap, check_injective, check_monotone, collinear_triples
from .orders import Rat

Constraint = tuple[int, int, int]

DEFAULT_CAP = 400


def _search(points: Sequence[int], constraints: Sequence[Constraint], hint: dict | None):
    involving: dict[int, list[Constraint]] = {p: [] for p in points}
    for c in constraints:
        for p in set(c):
            involving[p].append(c)
    # most constrained first; ties by hint rank, then index
    rank = hint or {}
    order = sorted(points, key=lambda p: (-len(involving[p]), rank.get(p, 0), p))
    seq: list[int] = []

    def ok(v: int) -> bool:
        pos = {p: i for i, p in enumerate(seq)}
        for p, q, r in involving[v]:
            if p in pos and q in pos and r in pos:
                if not (pos[p] < pos[q] < pos[r] or pos[r] < pos[q] < pos[p]):
                    return False
        return True

    def slots(v: int) -> list[int]:
        n = len(seq)
        if hint is None:
            return list(range(n + 1))
        home = sum(1 for p in seq if rank[p] < rank[v])
        return sorted(range(n + 1), key=lambda k: (abs(k - home), k))

    def place(depth: int) -> bool:
        if depth == len(order):
            return True
        v = order[depth]
        for k in slots(v):
            seq.insert(k, v)
            if ok(v) and place(depth + 1):
                return True
            del seq[k]
        return False

    if place(0):
        return list(seq)
    return None


def _satisfiable(constraints: Sequence[Constraint]) -> bool:
    pts = sorted({p for c in constraints for p in c})
    return _search(pts, constraints, None) is not None


def minimal_conflict(constraints: Sequence[Constraint]) -> list[Constraint]:
    """Deletion filter: an unsatisfiable subset with no removable member."""
    core = list(constraints)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        if not _satisfiable(trial):
            core = trial
        else:
            i += 1
    return core


def solve_betweenness(n: int, constraints: Sequence[Constraint],
                      hint: Sequence[int] | None = None) -> list[int]:
    """A permutation of ``range(n)`` satisfying every strict constraint.

    ``hint`` is a preferred order tried first. Raises :class:`Unsatisfiable`
    with a minimal conflicting subset when no order exists.
    """
    constraints = [tuple(c) for c in constraints]
    for c in constraints:
        if len(set(c)) != 3:
            # strict betweenness of a repeated point is never satisfiable
            raise Unsatisfiable([c])
    rank = {p: i for i, p in enumerate(hint)} if hint is not None else None
    found = _search(list(range(n)), constraints, rank)
    if found is None:
        raise Unsatisfiable(minimal_conflict(constraints))
    return found


def betweenness_csp(config: FiniteConfig, cap: int = DEFAULT_CAP, warm_start: bool = True) -> FiniteMap:
    """Injective order assignment ``point -> 1..n`` satisfying every
    collinear triple of ``config``, certified by the exhaustive oracle."""
    n = len(config)
    if n > cap:
        raise CapExceeded(f"{n} points exceeds the CSP cap of {cap}")
    constraints = collinear_triples(config)
    hint = None
    if warm_start and n:
        phi = projection_embed(config.points)
        hint = sorted(range(n), key=lambda i: phi(config.points[i]))
    order = solve_betweenness(n, constraints, hint)
    values = [None] * n
    for rank, i in enumerate(order, start=1):
        values[i] = Rat(Fraction(rank))
    m = FiniteMap(config, values)
    if check_monotone(m) is not None or check_injective(m) is not None:
        raise AssertionError("CSP assignment failed the oracle")
    return m
