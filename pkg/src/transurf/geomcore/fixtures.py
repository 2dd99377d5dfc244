"""Named curve fixtures and the curve JSON format.

JSON: {"kind": "analytic", "x": "...", "y": "...", "z": "...", "domain": [a, b]}
or {"kind": "samples", "points": [[t, x, y, z], ...]}; an optional "arclength"
flag marks curves that are already unit speed.
"""
from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..exprlang import ExprError
from .curves import AnalyticCurve, Curve, SampledCurve


class FixtureError(ValueError):
    pass


def _lit(q: Fraction) -> str:
    return f"({q.numerator}/{q.denominator})" if q.denominator != 1 else f"({q.numerator})"


def _params(text: str) -> tuple[str, list[Fraction]]:
    m = re.fullmatch(r"\s*([A-Za-z][\w-]*)\s*(?:\((.*)\))?\s*", text)
    if not m:
        raise FixtureError(f"malformed fixture {text!r}")
    name, args = m.group(1), m.group(2)
    try:
        values = [Fraction(a.strip()) for a in args.split(",")] if args and args.strip() else []
    except ValueError:
        raise FixtureError(f"fixture parameters must be numbers: {text!r}") from None
    return name, values


def _line(d=(0, 0, 1)):
    d = [Fraction(x) for x in d]
    n2 = sum(x * x for x in d)
    if n2 == 0:
        raise FixtureError("line direction must be nonzero")
    norm = f"sqrt({_lit(n2)})"
    comps = [f"{_lit(x)}*t/{norm}" for x in d]
    return {"kind": "analytic", "x": comps[0], "y": comps[1], "z": comps[2], "domain": [-1.0, 1.0], "arclength": True}


def _circle(r=Fraction(1)):
    if r <= 0:
        raise FixtureError("circle radius must be positive")
    R = _lit(r)
    return {"kind": "analytic", "x": f"{R}*cos(t/{R})", "y": f"{R}*sin(t/{R})", "z": "0",
            "domain": [0.0, 2 * math.pi * float(r)], "arclength": True}


def _helix(a=Fraction(1), b=Fraction(1)):
    if a <= 0:
        raise FixtureError("helix radius must be positive")
    c = f"sqrt({_lit(a * a + b * b)})"
    A, B = _lit(a), _lit(b)
    length = 2 * math.pi * math.sqrt(float(a * a + b * b))
    return {"kind": "analytic", "x": f"{A}*cos(t/{c})", "y": f"{A}*sin(t/{c})", "z": f"{B}*t/{c}",
            "domain": [0.0, length], "arclength": True}


def _fourier():
    return {"kind": "analytic", "x": "cos(t) + cos(3*t)/5", "y": "sin(t) - sin(3*t)/5", "z": "sin(2*t)/2",
            "domain": [0.0, 2 * math.pi], "arclength": False}


def _scherk_slice(axis=Fraction(0)):
    # graph of -log(cos t) in the xz-plane (axis 0) or of log(cos t) in the yz-plane (axis 1)
    if axis == 0:
        return {"kind": "analytic", "x": "t", "y": "0", "z": "-log(cos(t))", "domain": [-1.2, 1.2], "arclength": False}
    if axis == 1:
        return {"kind": "analytic", "x": "0", "y": "t", "z": "log(cos(t))", "domain": [-1.2, 1.2], "arclength": False}
    raise FixtureError("scherk-slice axis must be 0 or 1")


_FIXTURES = {
    "line": (_line, (0, 3)),
    "circle": (_circle, (0, 1)),
    "helix": (_helix, (0, 2)),
    "fourier": (_fourier, (0, 0)),
    "scherk-slice": (_scherk_slice, (0, 1)),
}
FIXTURE_NAMES = tuple(_FIXTURES)


def fixture_json(text: str) -> dict:
    """Curve JSON for a fixture such as "circle(2)", "helix(1,1)" or "line(1,0,0)"."""
    name, values = _params(text)
    if name not in _FIXTURES:
        raise FixtureError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    build, (lo, hi) = _FIXTURES[name]
    if name == "line" and values and len(values) != 3:
        raise FixtureError("line takes zero or three parameters")
    if not lo <= len(values) <= hi:
        raise FixtureError(f"{name} takes {lo} to {hi} parameters, got {len(values)}")
    if name == "line" and values:
        return build(values)
    return build(*values)


def fixture(text: str) -> Curve:
    return curve_from_json(fixture_json(text))


def curve_from_json(obj: dict) -> Curve:
    if not isinstance(obj, dict):
        raise FixtureError("curve JSON must be an object")
    kind = obj.get("kind")
    arclength = bool(obj.get("arclength", False))
    if kind == "analytic":
        try:
            domain = obj["domain"]
            if len(domain) != 2 or not float(domain[0]) < float(domain[1]):
                raise FixtureError("domain must be [a, b] with a < b")
            return AnalyticCurve.from_text(obj["x"], obj["y"], obj["z"], domain, arclength)
        except KeyError as exc:
            raise FixtureError(f"analytic curve missing field {exc}") from None
        except ExprError as exc:
            raise FixtureError(f"bad curve expression: {exc}") from None
    if kind == "samples":
        try:
            return SampledCurve(np.asarray(obj["points"], dtype=float), arclength)
        except KeyError:
            raise FixtureError("sampled curve missing field 'points'") from None
    raise FixtureError(f"unknown curve kind {kind!r}")


def curve_to_json(c: Curve) -> dict:
    if isinstance(c, AnalyticCurve):
        return {"kind": "analytic", "x": c.x.to_text(), "y": c.y.to_text(), "z": c.z.to_text(),
                "domain": list(c.domain), "arclength": c.arclength}
    if isinstance(c, SampledCurve):
        return {"kind": "samples", "points": c.points.tolist(), "arclength": c.arclength}
    raise TypeError(f"cannot serialize {type(c).__name__}")


def load_curve(path) -> Curve:
    with open(Path(path)) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FixtureError(f"{path}: invalid JSON ({exc})") from None
    return curve_from_json(obj)


def dump_curve_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
