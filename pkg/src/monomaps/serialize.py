"""JSON encodings. Every writer here has a reader that inverts it exactly.

Rationals are strings ``"p/q"`` (``"p"`` for integers), points are pairs of
rationals, order values are single-key objects tagged by shape.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .closure import ClosureState
from .errors import DegenerateInput
from .geometry import Line, Point2, Segment, format_rational, to_rational
from .maps import FiniteMap, Structure, Target, Witness, witness_from_json
from .orders import DoubleArrow, LexPair, LexSum, OrderValue, Rat
from .projective import ProjectiveTransform
from .trichotomy import FivePointConfig, InteriorCertificate, LineUnionPoint, TrichotomyClass, Violation


class SchemaError(DegenerateInput):
    """JSON input that does not match the expected shape; ``pointer`` locates it."""

    def __init__(self, message: str, pointer: str = ""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"


def rational_to_json(q) -> str:
    return format_rational(to_rational(q))


def rational_from_json(s, pointer: str = "") -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise SchemaError("expected a rational string like \"p/q\"", pointer)
    try:
        return to_rational(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(str(exc), pointer) from None


def point_to_json(p: Point2) -> list[str]:
    return [rational_to_json(p.x), rational_to_json(p.y)]


def point_from_json(data, pointer: str = "") -> Point2:
    if not isinstance(data, list) or len(data) != 2:
        raise SchemaError("expected a point [\"x\", \"y\"]", pointer)
    return Point2(rational_from_json(data[0], pointer + "/0"), rational_from_json(data[1], pointer + "/1"))


def points_from_json(data, pointer: str = "") -> list[Point2]:
    if not isinstance(data, list):
        raise SchemaError("expected a list of points", pointer)
    return [point_from_json(p, f"{pointer}/{i}") for i, p in enumerate(data)]


def order_to_json(v: OrderValue) -> dict:
    if isinstance(v, Rat):
        return {"rat": rational_to_json(v.value)}
    if isinstance(v, LexPair):
        return {"lex": [rational_to_json(v.first), rational_to_json(v.second)]}
    if isinstance(v, DoubleArrow):
        return {"da": [rational_to_json(v.real), v.side]}
    if isinstance(v, LexSum):
        return {"sum": [v.label, order_to_json(v.inner)]}
    raise TypeError(f"unknown order value {v!r}")


def order_from_json(data, pointer: str = "") -> OrderValue:
    if not isinstance(data, dict) or len(data) != 1:
        raise SchemaError("expected an order value object with one key", pointer)
    (tag, body), = data.items()
    here = f"{pointer}/{tag}"
    if tag == "rat":
        return Rat(rational_from_json(body, here))
    if tag == "lex":
        if not isinstance(body, list) or len(body) != 2:
            raise SchemaError("expected [first, second]", here)
        return LexPair(rational_from_json(body[0], here + "/0"), rational_from_json(body[1], here + "/1"))
    if tag == "da":
        if not isinstance(body, list) or len(body) != 2 or body[1] not in (0, 1):
            raise SchemaError("expected [real, 0|1]", here)
        return DoubleArrow(rational_from_json(body[0], here + "/0"), body[1])
    if tag == "sum":
        if not isinstance(body, list) or len(body) != 2 or not isinstance(body[0], int):
            raise SchemaError("expected [label, inner]", here)
        return LexSum(body[0], order_from_json(body[1], here + "/1"))
    raise SchemaError(f"unknown order tag {tag!r}", pointer)


def target_to_json(v: Target):
    return point_to_json(v) if isinstance(v, Point2) else order_to_json(v)


def target_from_json(data, pointer: str = "") -> Target:
    return point_from_json(data, pointer) if isinstance(data, list) else order_from_json(data, pointer)


def map_to_json(m: FiniteMap) -> dict:
    return {"structure": m.domain.structure.value,
            "pairs": [[point_to_json(p), target_to_json(v)] for p, v in m.pairs()]}


def map_from_json(data) -> FiniteMap:
    if not isinstance(data, dict) or "pairs" not in data:
        raise SchemaError("expected {\"structure\": ..., \"pairs\": [...]}")
    try:
        structure = Structure(data.get("structure", "euclidean"))
    except ValueError:
        raise SchemaError("structure must be \"euclidean\" or \"discrete\"", "/structure") from None
    pairs = data["pairs"]
    if not isinstance(pairs, list):
        raise SchemaError("expected a list", "/pairs")
    out = []
    for i, pair in enumerate(pairs):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError("expected [point, target]", f"/pairs/{i}")
        out.append((point_from_json(pair[0], f"/pairs/{i}/0"), target_from_json(pair[1], f"/pairs/{i}/1")))
    return FiniteMap.from_pairs(out, structure)


def transform_to_json(P: ProjectiveTransform) -> dict:
    return {"m": [[rational_to_json(v) for v in row] for row in P.m]}


def transform_from_json(data) -> ProjectiveTransform:
    if not isinstance(data, dict) or "m" not in data:
        raise SchemaError("expected {\"m\": [[...], [...], [...]]}")
    rows = data["m"]
    if not isinstance(rows, list) or len(rows) != 3 or any(not isinstance(r, list) or len(r) != 3 for r in rows):
        raise SchemaError("expected a 3x3 matrix", "/m")
    return ProjectiveTransform(tuple(tuple(rational_from_json(v, f"/m/{i}/{j}") for j, v in enumerate(r))
                                     for i, r in enumerate(rows)))


def line_to_json(line: Line) -> list[int]:
    return [line.a, line.b, line.c]


def line_from_json(data, pointer: str = "") -> Line:
    if not isinstance(data, list) or len(data) != 3:
        raise SchemaError("expected a line [a, b, c] meaning a x + b y = c", pointer)
    a, b, c = (rational_from_json(v, f"{pointer}/{i}") for i, v in enumerate(data))
    return Line.from_coefficients(a, b, c)


def segment_to_json(s: Segment) -> list:
    return [point_to_json(s.p), point_to_json(s.q)]


def segment_from_json(data, pointer: str = "") -> Segment:
    if not isinstance(data, list) or len(data) != 2:
        raise SchemaError("expected a segment [p, q]", pointer)
    return Segment(point_from_json(data[0], pointer + "/0"), point_from_json(data[1], pointer + "/1"))


def witness_to_json(w: Witness) -> dict:
    return w.to_json()


def witness_read(data) -> Witness:
    try:
        return witness_from_json(data)
    except (KeyError, TypeError):
        raise SchemaError("malformed witness") from None


def class_to_json(c: TrichotomyClass) -> dict:
    if isinstance(c, LineUnionPoint):
        return {"class": c.name, "line": line_to_json(c.line), "q": None if c.q is None else point_to_json(c.q)}
    if isinstance(c, InteriorCertificate):
        return {"class": c.name, "points": [point_to_json(p) for p in (c.a, c.b, c.c, c.d)]}
    if isinstance(c, FivePointConfig):
        return {"class": c.name, "points": [point_to_json(p) for p in (c.a, c.b, c.c, c.d, c.e)]}
    return {"class": c.name, "detail": c.detail}


def class_from_json(data) -> TrichotomyClass:
    name = data.get("class") if isinstance(data, dict) else None
    if name == LineUnionPoint.name:
        q = data.get("q")
        return LineUnionPoint(line_from_json(data["line"], "/line"), None if q is None else point_from_json(q, "/q"))
    if name == InteriorCertificate.name:
        return InteriorCertificate(*points_from_json(data["points"], "/points"))
    if name == FivePointConfig.name:
        return FivePointConfig(*points_from_json(data["points"], "/points"))
    if name == Violation.name:
        return Violation(data["detail"])
    raise SchemaError(f"unknown class {name!r}", "/class")


def closure_to_json(state: ClosureState) -> dict:
    return {"base": [point_to_json(p) for p in state.base],
            "generations": state.depth,
            "points": [point_to_json(p) for p in state.points]}


def dumps(data: Any) -> str:
    """Canonical text form: sorted keys, fixed separators, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def load_path(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from None
