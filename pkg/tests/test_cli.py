import io
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from monomaps import serialize as js
from monomaps.cli import parse_points, run
from monomaps.closure import CANONICAL_BASE, grow
from monomaps.errors import EmptyScene
from monomaps.geometry import Line, pt
from monomaps.maps import FiniteMap, MonotonicityViolation, check_monotone
from monomaps.orders import DoubleArrow, LexPair, LexSum, Rat
from monomaps.projective import ProjectiveTransform
from monomaps.stress import THREE_SEGMENTS, SampleSpec, sample_map
from monomaps.svg import Scene, closure_scene, decimal_label, render_svg, segments_scene, witness_scene, write_svg
from monomaps.trichotomy import classify_points

from strategies import points, rationals


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, json.loads(out.getvalue()), out.getvalue()


@pytest.fixture
def five_point_file(tmp_path):
    m = sample_map("five_point_map", SampleSpec(grid=5))
    path = tmp_path / "map.json"
    path.write_text(js.dumps(js.map_to_json(m)))
    return path


def test_check_ok_and_violation(five_point_file, tmp_path):
    code, rep, _ = call("check", str(five_point_file))
    assert code == 0 and rep["verdict"] == "ok"
    data = json.loads(five_point_file.read_text())
    data["pairs"][7][1] = ["9", "9"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, rep, _ = call("check", str(bad), "--svg", str(tmp_path / "w.svg"))
    assert code == 1 and rep["verdict"] == "violation"
    w = js.witness_read(rep["witness"])
    assert w.verify(js.map_from_json(data))
    assert 'class="highlight"' in (tmp_path / "w.svg").read_text()


def test_fit_and_eval():
    code, rep, _ = call("fit", "--src", "0,0;1,0;0,1;1/4,1/4", "--dst", "0,0;1/2,0;0,1;1/5,1/5")
    assert code == 0 and rep["result"] == {"m": [["1", "0", "0"], ["0", "1", "0"], ["1", "0", "1"]]}
    code, rep, _ = call("fit", "--src", "0,0;1,0;2,0;0,1", "--dst", "0,0;1,0;0,1;1,1")
    assert code == 2 and rep["result"]["error"] == "DegenerateCorrespondence"
    code, rep, _ = call("eval", "--matrix", "1,0,0;0,1,0;1,0,1", "--points", "1,0;0,0")
    assert rep["result"]["points"] == [["1/2", "0"], ["0", "0"]]
    code, rep, _ = call("eval", "--matrix", "1,0,0;0,1,0;1,0,1", "--points=-1,5")
    assert code == 2 and rep["result"]["error"] == "VanishingDenominator"


def test_closure_command(tmp_path):
    svg = tmp_path / "c.svg"
    code, rep, _ = call("closure", "--gens", "2", "--image", "0,0;1/2,0;0,1;1/5,1/5", "--svg", str(svg))
    assert code == 0
    assert rep["result"]["rigidity"] == "ok"
    assert rep["result"]["radius_by_generation"] == ["25/128", "17/128", "1/8"]
    assert rep["metrics"]["points"] == len(rep["result"]["points"]) == 10
    assert svg.read_text().count('class="point"') == 10


def test_classify_and_construct(five_point_file):
    code, rep, _ = call("classify", "--map", str(five_point_file))
    assert code == 0 and rep["result"]["class"] == "five_point"
    assert rep["result"]["points"][4] == ["1/2", "1/2"]
    code, rep, _ = call("construct", "fan_collapse", "--at", "1/2,1/4")
    assert rep["result"]["value"] == ["1", "0"]
    code, rep, _ = call("construct", "three_lines_lexsum", "--at", "0,3")
    assert rep["result"]["value"] == {"sum": [1, {"rat": "3"}]}


def test_embed_methods(tmp_path):
    pts = tmp_path / "p.json"
    pts.write_text(json.dumps([["0", "0"], ["1", "0"], ["1", "1"], ["0", "1"], ["1/2", "1/2"]]))
    code, rep, _ = call("embed", "--method", "projection", "--points", str(pts))
    assert code == 0 and rep["result"]["functional"] == [2, 1]
    code, rep, _ = call("embed", "--method", "csp", "--points", str(pts))
    assert code == 0
    m = js.map_from_json(rep["result"])
    assert check_monotone(m) is None
    lines = tmp_path / "l.json"
    lines.write_text(json.dumps({"points": [["-1", "0"], ["0", "0"], ["1", "0"], ["0", "1"], ["2", "1"]]}))
    code, rep, _ = call("embed", "--method", "parallel", "--points", str(lines))
    assert code == 0
    space = tmp_path / "s.json"
    space.write_text(json.dumps([["0", "0", "0"], ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]))
    code, rep, _ = call("embed", "--method", "plane", "--points", str(space))
    assert code == 0 and len(rep["result"]["image"]) == 4


def test_stress_command():
    code, rep, _ = call("stress", "--map", "five_point_map", "--grid", "7")
    assert code == 0
    code, rep, _ = call("stress", "--map", "collapse_to_edge", "--grid", "5", "--injective")
    assert code == 1 and rep["witness"]["kind"] == "injectivity"
    code, rep, _ = call("stress", "--map", "nope")
    assert code == 2 and rep["result"]["error"] == "UnknownPlugin"
    code, rep, _ = call("stress", "--list")
    assert "homography" in rep["result"]["maps"]


def test_usage_errors(tmp_path, capsys):
    code, rep, _ = call("bogus")
    assert code == 2 and rep["result"]["error"] == "UsageError"
    code, rep, _ = call("eval", "--matrix", "1,2;3", "--points", "0,0")
    assert code == 2 and "usage" in rep["result"]
    bad = tmp_path / "x.json"
    bad.write_text('{"pairs": [[["0"], ["0", "0"]]]}')
    code, rep, _ = call("check", str(bad))
    assert code == 2 and rep["result"]["pointer"] == "/pairs/0/0"


def test_cap_and_force(five_point_file, monkeypatch):
    monkeypatch.setenv("BTW_MAX_TRIPLES", "100")
    code, rep, _ = call("check", str(five_point_file))
    assert code == 2 and rep["result"]["error"] == "CapExceeded"
    code, rep, _ = call("--force", "check", str(five_point_file))
    assert code == 0


def test_reports_are_deterministic(five_point_file):
    a = call("--seed", "4", "stress", "--map", "three_segments_projection")[2]
    b = call("--seed", "4", "stress", "--map", "three_segments_projection")[2]
    assert a == b
    assert "elapsed" not in a
    assert "elapsed" in call("--timing", "check", str(five_point_file))[1]["metrics"]


def test_parse_points_formats():
    assert parse_points("0,0;1/2,3") == parse_points("0,0,1/2,3") == [pt(0, 0), pt(F(1, 2), 3)]


# -- serialization round trips -------------------------------------------------------

orders = st.one_of(
    st.builds(Rat, rationals),
    st.builds(LexPair, rationals, rationals),
    st.builds(DoubleArrow, rationals, st.integers(0, 1)),
)


@given(rationals)
def test_rational_round_trip(q):
    assert js.rational_from_json(js.rational_to_json(q)) == q


@given(points)
def test_point_round_trip(p):
    assert js.point_from_json(json.loads(json.dumps(js.point_to_json(p)))) == p


@given(orders, st.integers(0, 3))
def test_order_round_trip(v, label):
    for w in (v, LexSum(label, v)):
        assert js.order_from_json(json.loads(json.dumps(js.order_to_json(w)))) == w


def test_map_and_transform_round_trip():
    m = sample_map("three_lines_lexsum", SampleSpec(grid=5))
    back = js.map_from_json(json.loads(js.dumps(js.map_to_json(m))))
    assert back == m
    P = ProjectiveTransform(((1, F(1, 2), 0), (0, 1, 3), (F(-1, 3), 0, 1)))
    assert js.transform_from_json(json.loads(js.dumps(js.transform_to_json(P)))) == P


def test_class_round_trip():
    for pts in ([pt(0, 0), pt(1, 0), pt(0, 1)],
                [pt(0, 0), pt(4, 0), pt(0, 4), pt(1, 1)],
                [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1), pt(F(1, 2), F(1, 2))],
                [pt(0, 0), pt(1, 0), pt(1, 1), pt(0, 1)]):
        c = classify_points(pts)
        assert js.class_from_json(json.loads(js.dumps(js.class_to_json(c)))) == c


# -- svg ------------------------------------------------------------------------------

def test_decimal_labels():
    assert decimal_label(F(3, 8)) == "0.375"
    assert decimal_label(F(-1, 20)) == "-0.05"
    assert decimal_label(F(1, 3)) == "1/3"
    assert decimal_label(F(7)) == "7"


def test_three_segment_svg_structure():
    segs = [clip for _, clip in THREE_SEGMENTS.lines]
    text = render_svg(segments_scene(segs))
    assert text.count('class="segment"') == 3
    assert render_svg(segments_scene(segs)) == text


def test_closure_svg_counts_nodes(tmp_path):
    s = grow(CANONICAL_BASE, 2)
    path = tmp_path / "c.svg"
    text = write_svg(closure_scene(s), str(path))
    assert text.count('class="point"') == len(s) == 10
    assert path.read_bytes() == text.encode()


def test_witness_overlay():
    m = FiniteMap.from_pairs([(pt(0, 0), Rat(0)), (pt(1, 1), Rat(5)), (pt(2, 2), Rat(1))])
    text = render_svg(witness_scene(m, MonotonicityViolation(0, 1, 2)))
    assert text.count('class="highlight"') == 3


def test_empty_scene():
    with pytest.raises(EmptyScene):
        render_svg(Scene())


def test_svg_viewport_margin():
    text = render_svg(Scene(points=(pt(0, 0), pt(10, 10)), lines=(Line(1, -1, 0),)))
    # a 10-wide box plus 5% on each side maps x = 0 to 480 * 0.5 / 11
    assert 'cx="21.8181818182"' in text
    assert 'class="line"' in text


def test_svg_command(tmp_path):
    out = tmp_path / "f.svg"
    code, rep, _ = call("svg", "--three-segments", "--out", str(out))
    assert code == 0 and out.read_text().count('class="segment"') == 3
    first = out.read_bytes()
    call("svg", "--three-segments", "--out", str(out))
    assert out.read_bytes() == first
    scene = tmp_path / "scene.json"
    scene.write_text(json.dumps({"points": [["0", "0"], ["1", "1"]], "segments": [[["0", "0"], ["1", "0"]]]}))
    code, rep, _ = call("svg", "--scene", str(scene))
    assert code == 0 and rep["result"]["svg"].startswith("<svg")
