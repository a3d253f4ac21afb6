from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from monomaps.closure import (CANONICAL_BASE, barycentric_grid, closure_grow, covering_radius, extend_values, grow,
                              initial_state, replay_rule, rigidity_check, seed_values, side_covering_radii)
from monomaps.errors import ImageDegeneracy, InvalidBase
from monomaps.geometry import Point2, Segment, between, in_triangle_interior, line_through, pt, segment_intersect, \
    squared_distance
from monomaps.projective import ProjectiveTransform, evaluate

A, B, C, D = CANONICAL_BASE
M = ProjectiveTransform(((1, 0, 0), (0, 1, 0), (1, 0, 1)))


def rules_oracle(points):
    """One generation of R1 and R2 straight from their definitions, over all
    ordered quadruples of current points."""
    pts = list(points)
    out = set(pts)
    for x0, x1, y0, y1 in product(pts, repeat=4):
        if x0 == x1 or y0 == y1:
            continue
        hit = segment_intersect(Segment(x0, x1), Segment(y0, y1))
        if isinstance(hit, Point2):
            out.add(hit)
        lx, ly = line_through(x0, x1), line_through(y0, y1)
        if lx == ly:
            continue
        z = lx.intersect(ly)
        if z is not None and between(x0, z, x1) and between(y0, y1, z):
            out.add(z)
    return out


def test_generation_zero_is_the_base():
    s = grow(CANONICAL_BASE, 0)
    assert set(s.points) == set(CANONICAL_BASE)


def test_first_generation_contains_ray_hit():
    s = grow(CANONICAL_BASE, 1)
    z = pt(F(1, 2), F(1, 2))
    assert z in s
    # the ray from a through d meets [b, c] exactly there
    assert line_through(A, D).intersect(line_through(B, C)) == z
    assert between(B, z, C) and between(A, D, z)
    assert replay_rule("R2", (B, C, A, D)) == z


def test_invalid_base():
    with pytest.raises(InvalidBase):
        initial_state([A, B, C, pt(F(1, 2), 0)])
    with pytest.raises(InvalidBase):
        initial_state([A, B, pt(2, 0), D])


@pytest.mark.parametrize("gens", [1, 2])
def test_line_pair_growth_matches_rule_oracle(gens):
    s = initial_state(CANONICAL_BASE)
    expected = set(s.points)
    for _ in range(gens):
        s = closure_grow(s)
        expected = rules_oracle(expected)
        assert set(s.points) == expected


def test_sizes_are_base_independent():
    other = (pt(0, 0), pt(5, 1), pt(2, 7), pt(2, 3))
    assert [len(grow(CANONICAL_BASE, k)) for k in range(4)] == [4, 7, 10, 46]
    assert [len(grow(other, k)) for k in range(4)] == [4, 7, 10, 46]


def test_budget_and_determinism():
    s = grow(CANONICAL_BASE, 4, budget=60)
    t = grow(CANONICAL_BASE, 4, budget=60)
    assert s.points == t.points
    assert len(s) <= 4 + 4 * 60
    assert len(grow(CANONICAL_BASE, 3, budget=2)) <= 4 + 3 * 2


def test_provenance_replays_on_the_source_side():
    s = grow(CANONICAL_BASE, 3)
    for p in s.points:
        if p in CANONICAL_BASE:
            continue
        d = s.provenance[p]
        assert replay_rule(d.rule, d.parents) == p
        assert all(s.generation[q] < s.generation[p] for q in d.parents)


def test_identity_seed_fixes_points():
    s = grow(CANONICAL_BASE, 2)
    v = seed_values(s, CANONICAL_BASE)
    assert all(v.values[p] == p for p in s.points)


def test_extension_agrees_with_homography():
    s = grow(CANONICAL_BASE, 3)
    v = seed_values(s, [evaluate(M, p) for p in CANONICAL_BASE])
    assert all(v.values[p] == evaluate(M, p) for p in s.points)


def test_extend_values_is_incremental():
    s1 = grow(CANONICAL_BASE, 1)
    v1 = seed_values(s1, [evaluate(M, p) for p in CANONICAL_BASE])
    s2 = closure_grow(s1)
    v2 = extend_values(v1, s2)
    assert set(v2.values) == set(s2.points)
    assert all(v2.values[p] == evaluate(M, p) for p in s2.points)


def test_image_degeneracy():
    s = grow(CANONICAL_BASE, 1)
    with pytest.raises(ImageDegeneracy):
        seed_values(s, [A, B, C, pt(F(1, 2), F(1, 2))])


def test_rigidity_identity_and_homography():
    assert rigidity_check(CANONICAL_BASE, CANONICAL_BASE, 2) is None
    assert rigidity_check(CANONICAL_BASE, [evaluate(M, p) for p in CANONICAL_BASE], 3) is None


def test_corrupted_replay_is_caught():
    def corrupt(rule, parents):
        z = replay_rule(rule, parents)
        return Point2(z.x + F(1, 1000), z.y) if rule == "R2" else z

    img = [evaluate(M, p) for p in CANONICAL_BASE]
    found = rigidity_check(CANONICAL_BASE, img, 1, replay=corrupt)
    assert found is not None
    assert found.propagated != found.expected == evaluate(M, found.point)


base_coords = st.integers(-6, 6)


@settings(max_examples=15)
@given(st.lists(st.tuples(base_coords, base_coords), min_size=4, max_size=4, unique=True),
       st.lists(st.tuples(base_coords, base_coords), min_size=4, max_size=4, unique=True))
def test_rigidity_on_random_bases(src, dst):
    src = [pt(*p) for p in src]
    dst = [pt(*p) for p in dst]

    def valid(q):
        try:
            return in_triangle_interior(q[3], q[0], q[1], q[2])
        except Exception:
            return False

    if valid(src) and valid(dst):
        assert rigidity_check(src, dst, 2) is None


def oracle_radius(nodes, points):
    return max(min(squared_distance(q, p) for p in points) for q in nodes)


def test_covering_radius_small_grid():
    s = initial_state(CANONICAL_BASE)
    nodes = barycentric_grid(A, B, C, 3)
    assert len(nodes) == 6
    assert covering_radius(s, 3) == oracle_radius(nodes, s.points) == F(1, 8)
    # grid 2 is just the vertices, all in the state
    assert covering_radius(s, 2) == 0


def test_covering_radius_never_increases():
    radii = [covering_radius(grow(CANONICAL_BASE, k), 17) for k in range(4)]
    assert radii == sorted(radii, reverse=True)
    assert radii == [F(25, 128), F(17, 128), F(1, 8), F(5, 128)]
    nodes = barycentric_grid(A, B, C, 17)
    assert radii == [oracle_radius(nodes, grow(CANONICAL_BASE, k).points) for k in range(4)]


def test_side_radii_decrease():
    r0 = side_covering_radii(grow(CANONICAL_BASE, 1), 9)
    r3 = side_covering_radii(grow(CANONICAL_BASE, 3), 9)
    assert all(b <= a for a, b in zip(r0, r3))
    assert sum(r3) < sum(r0)
