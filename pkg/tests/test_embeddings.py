from fractions import Fraction as F
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from monomaps.csp import betweenness_csp, minimal_conflict, solve_betweenness
from monomaps.embeddings import (_between_nd, cantor_gaps, functional_candidates, lex_identity,
                                 parallel_intervals, parallel_lines_map, project_to_plane, projection_embed,
                                 three_lines_config, three_lines_lexsum)
from monomaps.errors import CapExceeded, DegenerateInput, NotOnFamily, UnknownPlugin, Unsatisfiable
from monomaps.geometry import Line, Point2, between, orient, pt
from monomaps.maps import (FiniteMap, InjectivityCollision, check_injective, check_monotone,
                           collinear_triples)
from monomaps.orders import DoubleArrow, LexPair, LexSum, Rat, linear_between
from monomaps.stress import (THREE_LINES, THREE_SEGMENTS, FamilyDomain, SampleSpec, TotalMap, get_map,
                             register_map, registered, sample_map, stress_total_map)

from strategies import points


def test_functional_candidates_order():
    gen = functional_candidates()
    assert [next(gen) for _ in range(5)] == [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]


def test_projection_examples():
    e = projection_embed([pt(0, 0), pt(1, 0), pt(2, 0)])
    assert (e.u, e.v) == (1, 0)
    sq = [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]
    e = projection_embed(sq)
    assert (e.u, e.v) == (2, 1)
    assert len({e(p) for p in sq}) == 4


@given(st.lists(points, min_size=2, max_size=25, unique=True))
def test_projection_embed_is_certified(pts):
    e = projection_embed(pts)
    assert check_injective(e.map) is None and check_monotone(e.map) is None


def test_between_nd():
    z = F(0)
    assert _between_nd((z, z, z), (F(1), F(1), F(1)), (F(2), F(2), F(2)))
    assert not _between_nd((z, z, z), (F(1), F(1), F(0)), (F(2), F(2), F(2)))
    assert _between_nd((F(1), z), (F(1), z), (F(1), z))


def iso_oracle(src, img):
    n = len(src)
    return len(set(img)) == n and all(
        _between_nd(src[a], src[x], src[b]) == between(img[a], img[x], img[b])
        for a in range(n) for x in range(n) for b in range(n))


def test_project_to_plane_examples():
    flat = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]
    proj = project_to_plane(flat)
    assert [proj.project([F(v) for v in p]) for p in flat] == [pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)]
    simplex = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    proj = project_to_plane(simplex)
    assert orient(*proj.image.points) != 0
    assert proj.first_violation() is None
    generic = [(0, 0, 0), (1, 2, 3), (2, -1, 1), (3, 3, -2)]
    proj = project_to_plane(generic)
    assert iso_oracle([tuple(F(v) for v in p) for p in generic], list(proj.image.points))


def test_project_to_plane_keeps_collinearity():
    pts = [(0, 0, 0), (1, 1, 1), (2, 2, 2), (0, 1, 0), (0, 0, 1)]
    proj = project_to_plane(pts)
    img = proj.image.points
    assert between(img[0], img[1], img[2])
    assert iso_oracle([tuple(F(v) for v in p) for p in pts], list(img))


def test_project_to_plane_errors():
    with pytest.raises(DegenerateInput):
        project_to_plane([(0, 0, 0), (0, 0, 0)])
    with pytest.raises(DegenerateInput):
        project_to_plane([(0, 0, 0), (0, 0)])


def test_cantor_intervals():
    assert cantor_gaps(1) == [(F(1, 3), F(2, 3))]
    assert parallel_intervals(3) == [(F(1, 9), F(2, 9)), (F(1, 3), F(2, 3)), (F(7, 9), F(8, 9))]
    for k in range(1, 12):
        iv = parallel_intervals(k)
        assert len(iv) == k
        assert all(hi1 < lo2 for (_, hi1), (lo2, _) in zip(iv, iv[1:]))


def test_parallel_lines_examples():
    hs = [0, 1, 2]
    assert parallel_lines_map(hs, pt(0, 1)) == Rat(F(1, 2))
    assert parallel_lines_map(hs, pt(-1, 1)) < parallel_lines_map(hs, pt(1, 1))
    assert parallel_lines_map(hs, pt(100, 0)) < parallel_lines_map(hs, pt(-100, 1))
    with pytest.raises(NotOnFamily):
        parallel_lines_map(hs, pt(0, F(1, 2)))


def test_parallel_lines_cross_triples():
    hs = [F(h) for h in range(4)]
    pts = [pt(F(x, 2), h) for h in hs for x in range(-6, 7)]
    m = FiniteMap.from_function(pts, lambda p: parallel_lines_map(hs, p))
    assert any(len({pts[i].y for i in t}) == 3 for t in collinear_triples(m.domain))
    assert check_monotone(m) is None and check_injective(m) is None


@given(points, points, st.integers(0, 8))
def test_lex_identity_on_segments(a, b, k):
    x = Point2(a.x + F(k, 8) * (b.x - a.x), a.y + F(k, 8) * (b.y - a.y))
    assert linear_between(lex_identity(a), lex_identity(x), lex_identity(b))


def test_lex_identity_example():
    assert lex_identity(pt(1, 2)) == LexPair(1, 2)


def cross_lines(m, family):
    """Collinear groups of the sample not contained in one member of the family."""
    pts = m.domain.points
    return [g for g in m.domain.lines
            if not any(all(k in family.members(pts[i]) for i in g) for k in range(len(family.lines)))]


def test_three_lines_lexsum():
    fam = THREE_LINES
    assert three_lines_lexsum(fam, pt(0, 5)) == LexSum(1, Rat(5))
    assert three_lines_lexsum(fam, pt(-1, -1)) == LexSum(0, DoubleArrow(-1, 0))
    assert three_lines_lexsum(fam, pt(2, 0)) == LexSum(2, DoubleArrow(2, 1))
    with pytest.raises(NotOnFamily):
        three_lines_lexsum(fam, pt(1, 5))
    with pytest.raises(DegenerateInput):
        three_lines_config(0, Line(1, 0, 2), Line(1, 1, 0))


def test_three_lines_sample_is_monotone():
    m = sample_map("three_lines_lexsum", SampleSpec(grid=41, anchors=40, seed=3))
    assert len(m) >= 400
    assert cross_lines(m, THREE_LINES)
    assert check_monotone(m) is None and check_injective(m) is None


# -- CSP ----------------------------------------------------------------------------

def test_csp_single_constraint():
    order = solve_betweenness(3, [(0, 1, 2)])
    pos = {p: i for i, p in enumerate(order)}
    assert min(pos[0], pos[2]) < pos[1] < max(pos[0], pos[2])


def test_csp_unsat():
    with pytest.raises(Unsatisfiable) as info:
        solve_betweenness(3, [(0, 1, 2), (1, 0, 2)])
    assert sorted(info.value.conflict) == [(0, 1, 2), (1, 0, 2)]
    with pytest.raises(Unsatisfiable):
        solve_betweenness(3, [(0, 0, 2)])


def test_minimal_conflict_is_irreducible():
    cons = [(0, 1, 2), (3, 4, 5), (1, 2, 0), (2, 0, 1)]
    core = minimal_conflict(cons)
    for c in core:
        rest = [d for d in core if d != c]
        solve_betweenness(6, rest)  # satisfiable once any member is dropped


def brute_sat(n, cons):
    for perm in permutations(range(n)):
        pos = {p: i for i, p in enumerate(perm)}
        if all(min(pos[a], pos[c]) < pos[b] < max(pos[a], pos[c]) for a, b, c in cons):
            return True
    return False


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4)).filter(lambda t: len(set(t)) == 3),
                max_size=6))
def test_csp_matches_bruteforce(cons):
    try:
        order = solve_betweenness(5, cons)
    except Unsatisfiable:
        assert not brute_sat(5, cons)
        return
    pos = {p: i for i, p in enumerate(order)}
    assert all(min(pos[a], pos[c]) < pos[b] < max(pos[a], pos[c]) for a, b, c in cons)


def test_betweenness_csp_on_segments():
    m = sample_map("three_segments_projection", SampleSpec(grid=9, anchors=12, seed=1))
    out = betweenness_csp(m.domain)
    assert check_monotone(out) is None and check_injective(out) is None
    with pytest.raises(CapExceeded):
        betweenness_csp(m.domain, cap=5)


# -- stress harness -------------------------------------------------------------------

def test_registry():
    assert "five_point_map" in registered()
    with pytest.raises(UnknownPlugin):
        get_map("no-such-map")
    with pytest.raises(ValueError):
        register_map(get_map("five_point_map"))


def test_stress_examples():
    assert stress_total_map("five_point_map", SampleSpec(grid=11)) is None
    w = stress_total_map("collapse_to_edge", SampleSpec(grid=5), injective=True)
    assert isinstance(w, InjectivityCollision)
    assert stress_total_map("three_segments_projection", SampleSpec(grid=9, anchors=12)) is None
    for name in ("lex_identity", "parallel_lines_map", "homography", "fan_collapse"):
        assert stress_total_map(name, SampleSpec(grid=7)) is None


def test_stress_catches_a_bad_plugin():
    bad = TotalMap("bad_square", lambda p: Rat(p.x * p.x - p.y), FamilyDomain(THREE_SEGMENTS))
    w = stress_total_map(bad, SampleSpec(grid=9))
    assert w is not None
    assert w.verify(sample_map(bad, SampleSpec(grid=9)))


def test_segment_sample_has_cross_triples():
    m = sample_map("three_segments_projection", SampleSpec(grid=9, anchors=12, seed=2))
    assert sum(len(g) * (len(g) - 1) * (len(g) - 2) // 6 for g in cross_lines(m, THREE_SEGMENTS)) >= 10
    assert all(THREE_SEGMENTS.contains(p) for p in m.domain.points)
