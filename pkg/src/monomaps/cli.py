"""``monomaps`` command line.

Every subcommand prints one JSON report on stdout::

    {"command": ..., "verdict": "ok" | "violation" | "unsat" | "error",
     "witness": ..., "metrics": {...}, "result": ...}

Exit status is 0 for ok, 1 for violation or unsat, 2 for usage or input
errors. Output is deterministic; wall-clock time is only reported with
``--timing``. Random sampling uses Python's ``random.Random`` (Mersenne
Twister) seeded by ``--seed``.
"""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import serialize as js
from .closure import CANONICAL_BASE, closure_grow, covering_radius, initial_state, rigidity_check
from .csp import DEFAULT_CAP, betweenness_csp
from .embeddings import parallel_lines_map, project_to_plane, projection_embed, three_lines_config, three_lines_lexsum
from .errors import BetweennessError, Unsatisfiable
from .geometry import Line, Point2, to_rational
from .maps import (FiniteConfig, FiniteMap, check_injective, check_isomorphism, check_monotone,
                   count_collinear_triples, ensure_within_budget)
from .projective import evaluate, fit_homography
from .stress import THREE_LINES, THREE_SEGMENTS, SampleSpec, get_map, registered, sample_map, stress_total_map
from .svg import Scene, closure_scene, render_svg, segments_scene, witness_scene
from .trichotomy import Violation, classify_image

EXIT = {"ok": 0, "violation": 1, "unsat": 1, "error": 2}


@dataclass
class RunReport:
    command: str
    verdict: str = "ok"
    witness: Any = None
    metrics: dict = field(default_factory=dict)
    result: Any = None

    def to_json(self) -> dict:
        out = {"command": self.command, "verdict": self.verdict, "metrics": self.metrics}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.result is not None:
            out["result"] = self.result
        return out


# -- argument parsing helpers ----------------------------------------------------------

def parse_points(text: str) -> list[Point2]:
    """``"x,y;x,y"`` or a flat comma list ``"x,y,x,y"``; rationals as ``p/q``."""
    text = text.strip()
    if ";" in text:
        parts = [p for p in text.split(";") if p.strip()]
        pairs = [p.split(",") for p in parts]
    else:
        flat = [v for v in text.replace(" ", ",").split(",") if v]
        if len(flat) % 2:
            raise argparse.ArgumentTypeError(f"odd number of coordinates in {text!r}")
        pairs = [flat[i:i + 2] for i in range(0, len(flat), 2)]
    try:
        out = []
        for pair in pairs:
            if len(pair) != 2:
                raise ValueError(f"expected x,y but got {','.join(pair)!r}")
            out.append(Point2(to_rational(pair[0].strip()), to_rational(pair[1].strip())))
        return out
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def parse_point(text: str) -> Point2:
    pts = parse_points(text)
    if len(pts) != 1:
        raise argparse.ArgumentTypeError(f"expected one point x,y, got {text!r}")
    return pts[0]


def parse_matrix(text: str):
    """A JSON file path, or nine entries as ``"a,b,c;d,e,f;g,h,i"``."""
    if ";" not in text and "," not in text:
        return js.transform_from_json(js.load_path(text))
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise argparse.ArgumentTypeError("matrix must be 3 rows of 3 entries")
    return js.transform_from_json({"m": [[v.strip() for v in r] for r in rows]})


def _load_points_file(path: str) -> list:
    data = js.load_path(path)
    if isinstance(data, dict):
        if "points" not in data:
            raise js.SchemaError("expected a list of points or {\"points\": [...]}")
        data = data["points"]
    if not isinstance(data, list):
        raise js.SchemaError("expected a list of points")
    return data


# -- subcommands -------------------------------------------------------------------

def cmd_check(args, report: RunReport):
    m = js.map_from_json(js.load_path(args.map))
    ensure_within_budget(len(m), args.force)
    witness = check_isomorphism(m) if args.iso else check_monotone(m)
    if witness is None and args.injective:
        witness = check_injective(m)
    report.metrics.update(points=len(m), triples_checked=count_collinear_triples(m.domain))
    _finish_witness(report, witness, m, args)


def _finish_witness(report: RunReport, witness, m: FiniteMap, args):
    if witness is not None:
        assert witness.verify(m)
        report.verdict = "violation"
        report.witness = js.witness_to_json(witness)
    if getattr(args, "svg", None):
        _write(args.svg, render_svg(witness_scene(m, witness)))


def cmd_fit(args, report: RunReport):
    if len(args.src) != 4 or len(args.dst) != 4:
        raise js.SchemaError("fit needs exactly 4 source and 4 target points")
    P = fit_homography(args.src, args.dst)
    report.result = js.transform_to_json(P)


def cmd_eval(args, report: RunReport):
    P = args.matrix
    report.result = {"points": [js.point_to_json(evaluate(P, p)) for p in args.points]}
    report.metrics["points"] = len(args.points)


def cmd_closure(args, report: RunReport):
    base = args.base or list(CANONICAL_BASE)
    if len(base) != 4:
        raise js.SchemaError("--base needs exactly 4 points")
    state = initial_state(base)
    radii = [covering_radius(state, args.grid)]
    for _ in range(args.gens):
        state = closure_grow(state, args.budget)
        radii.append(covering_radius(state, args.grid))
    result = {"points": [js.point_to_json(p) for p in state.points],
              "radius_by_generation": [js.rational_to_json(r) for r in radii]}
    if args.image:
        if len(args.image) != 4:
            raise js.SchemaError("--image needs exactly 4 points")
        mismatch = rigidity_check(base, args.image, args.gens, args.budget)
        if mismatch is None:
            result["rigidity"] = "ok"
        else:
            result["rigidity"] = "mismatch"
            report.verdict = "violation"
            report.witness = {"kind": "rigidity", "point": js.point_to_json(mismatch.point),
                              "propagated": js.point_to_json(mismatch.propagated),
                              "expected": js.point_to_json(mismatch.expected)}
    report.result = result
    report.metrics.update(points=len(state), generations=state.depth, radius=js.rational_to_json(radii[-1]))
    if args.svg:
        _write(args.svg, render_svg(closure_scene(state)))


def cmd_classify(args, report: RunReport):
    m = js.map_from_json(js.load_path(args.map))
    ensure_within_budget(len(m), args.force)
    report.metrics["points"] = len(m)
    witness = check_monotone(m)
    if witness is not None:
        _finish_witness(report, witness, m, args)
        return
    found = classify_image(m)
    report.result = js.class_to_json(found)
    if isinstance(found, Violation):
        report.verdict = "violation"
        report.witness = report.result


def cmd_construct(args, report: RunReport):
    total = get_map(args.name)
    if args.at is not None:
        report.result = {"point": js.point_to_json(args.at), "value": js.target_to_json(total.evaluate(args.at))}
        return
    m = sample_map(total, SampleSpec(grid=args.grid, anchors=args.anchors, seed=args.seed))
    report.result = js.map_to_json(m)
    report.metrics["points"] = len(m)


def cmd_embed(args, report: RunReport):
    raw = _load_points_file(args.points)
    if args.method == "plane":
        proj = project_to_plane([[js.rational_from_json(v, f"/{i}/{k}") for k, v in enumerate(p)]
                                 for i, p in enumerate(raw)])
        report.result = {"alpha": [js.rational_to_json(a) for a in proj.alpha],
                         "beta": [js.rational_to_json(b) for b in proj.beta],
                         "image": [js.point_to_json(p) for p in proj.image.points]}
        report.metrics["points"] = len(raw)
        return
    pts = js.points_from_json(raw)
    config = FiniteConfig(pts)
    ensure_within_budget(len(config), args.force)
    if args.method == "projection":
        emb = projection_embed(pts)
        m = emb.map
        report.result = {"functional": [emb.u, emb.v], "map": js.map_to_json(m)}
    elif args.method == "csp":
        try:
            m = betweenness_csp(config, cap=args.cap)
        except Unsatisfiable as exc:
            report.verdict = "unsat"
            report.witness = {"kind": "conflict", "constraints": [list(c) for c in exc.conflict]}
            return
        report.result = js.map_to_json(m)
    elif args.method == "parallel":
        heights = sorted({p.y for p in pts})
        m = FiniteMap.from_function(pts, lambda p: parallel_lines_map(heights, p))
        report.result = js.map_to_json(m)
    else:
        fam = three_lines_config(args.vertical_x, *args.lines) if args.lines else THREE_LINES
        m = FiniteMap.from_function(pts, lambda p: three_lines_lexsum(fam, p))
        report.result = js.map_to_json(m)
    report.metrics.update(points=len(m), triples_checked=count_collinear_triples(m.domain))
    witness = check_monotone(m) or check_injective(m)
    _finish_witness(report, witness, m, args)


def cmd_stress(args, report: RunReport):
    if args.list:
        report.result = {"maps": registered()}
        return
    if not args.map:
        raise js.SchemaError("--map is required (see --list)")
    spec = SampleSpec(grid=args.grid, anchors=args.anchors, seed=args.seed)
    m = sample_map(args.map, spec)
    ensure_within_budget(len(m), args.force)
    witness = stress_total_map(args.map, spec, injective=True if args.injective else None)
    report.metrics.update(points=len(m), triples_checked=count_collinear_triples(m.domain))
    report.result = {"map": args.map, "grid": args.grid, "anchors": args.anchors, "seed": args.seed}
    _finish_witness(report, witness, m, args)


def cmd_svg(args, report: RunReport):
    if args.three_segments:
        segs = [clip for _, clip in THREE_SEGMENTS.lines]
        pts = sample_map("three_segments_projection", SampleSpec(grid=args.grid, seed=args.seed)).domain.points
        scene = segments_scene(segs, pts)
    elif args.scene:
        scene = scene_from_json(js.load_path(args.scene))
    else:
        raise js.SchemaError("give --scene FILE or --three-segments")
    text = render_svg(scene)
    report.metrics.update(points=len(scene.points), segments=len(scene.segments))
    if args.out:
        _write(args.out, text)
        report.result = {"path": args.out}
    else:
        report.result = {"svg": text}


def scene_from_json(data) -> Scene:
    if not isinstance(data, dict):
        raise js.SchemaError("expected a scene object")
    return Scene(points=tuple(js.points_from_json(data.get("points", []), "/points")),
                 segments=tuple(js.segment_from_json(s, f"/segments/{i}")
                                for i, s in enumerate(data.get("segments", []))),
                 lines=tuple(js.line_from_json(l, f"/lines/{i}") for i, l in enumerate(data.get("lines", []))),
                 highlight=tuple(js.points_from_json(data.get("highlight", []), "/highlight")),
                 title=str(data.get("title", "")))


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _parse_line(text: str) -> Line:
    vals = text.split(",")
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("a line is a,b,c meaning a x + b y = c")
    try:
        return Line.from_coefficients(*(to_rational(v.strip()) for v in vals))
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class UsageError(Exception):
    def __init__(self, message: str, usage: str):
        super().__init__(message)
        self.usage = usage


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so usage errors still produce a report."""

    def error(self, message):
        raise UsageError(message, self.format_usage().strip())


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monomaps", description="Exact checks for betweenness-preserving maps.")
    p.add_argument("--timing", action="store_true", help="report elapsed seconds (breaks byte determinism)")
    p.add_argument("--seed", type=int, default=0, help="seed for random.Random (Mersenne Twister)")
    p.add_argument("--force", action="store_true", help="ignore the BTW_MAX_TRIPLES cap")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="verify a map JSON file")
    s.add_argument("map")
    s.add_argument("--iso", action="store_true", help="check betweenness in both directions")
    s.add_argument("--injective", action="store_true")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("fit", help="homography from 4 point correspondences")
    s.add_argument("--src", type=parse_points, required=True)
    s.add_argument("--dst", type=parse_points, required=True)
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("eval", help="apply a projective transformation")
    s.add_argument("--matrix", type=parse_matrix, required=True, help="JSON file or a,b,c;d,e,f;g,h,i")
    s.add_argument("--points", type=parse_points, required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("closure", help="grow the intersection closure of a base quadruple")
    s.add_argument("--base", type=parse_points)
    s.add_argument("--image", type=parse_points)
    s.add_argument("--gens", type=int, default=2)
    s.add_argument("--grid", type=int, default=17)
    s.add_argument("--budget", type=int)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_closure)

    s = sub.add_parser("classify", help="classify the image of a monotone map")
    s.add_argument("--map", required=True)
    s.add_argument("--svg")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("construct", help="evaluate or sample a registered construction")
    s.add_argument("name")
    s.add_argument("--at", type=parse_point)
    s.add_argument("--grid", type=int, default=11)
    s.add_argument("--anchors", type=int, default=8)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("embed", help="injective monotone map of a finite point set")
    s.add_argument("--method", choices=("projection", "csp", "parallel", "lexsum", "plane"), required=True)
    s.add_argument("--points", required=True, help="JSON list of points")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--vertical-x", type=to_rational, default=Fraction(0))
    s.add_argument("--lines", type=_parse_line, nargs=2, help="the two slanted lines as a,b,c")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("stress", help="sample a registered total map and check it")
    s.add_argument("--map")
    s.add_argument("--list", action="store_true")
    s.add_argument("--grid", type=int, default=11)
    s.add_argument("--anchors", type=int, default=8)
    s.add_argument("--injective", action="store_true")
    s.add_argument("--svg")
    s.set_defaults(func=cmd_stress)

    s = sub.add_parser("svg", help="render a scene")
    s.add_argument("--scene")
    s.add_argument("--three-segments", action="store_true")
    s.add_argument("--grid", type=int, default=7)
    s.add_argument("--out")
    s.set_defaults(func=cmd_svg)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except UsageError as exc:
        argv = list(sys.argv[1:] if argv is None else argv)
        report = RunReport(next((a for a in argv if not a.startswith("-")), ""), "error",
                           result={"error": "UsageError", "message": str(exc), "usage": exc.usage})
        stdout.write(js.dumps(report.to_json()))
        return EXIT["error"]
    report = RunReport(args.command)
    start = time.perf_counter()
    try:
        args.func(args, report)
    except (BetweennessError, ValueError, OSError, KeyError) as exc:
        report.verdict = "error"
        report.witness = None
        # KeyError's str() is the repr of its key
        message = str(exc.args[0]) if isinstance(exc, KeyError) and exc.args else str(exc)
        report.result = {"error": type(exc).__name__, "message": message}
        if isinstance(exc, js.SchemaError):
            report.result["pointer"] = exc.pointer
    if args.timing:
        report.metrics["elapsed"] = round(time.perf_counter() - start, 6)
    stdout.write(js.dumps(report.to_json()))
    return EXIT[report.verdict]


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
