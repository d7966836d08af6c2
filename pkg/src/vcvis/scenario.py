"""Scenario files: a polygon, a labelled point set and a metric.

Format (version 1)::

    {
      "format": 1,
      "name": "u4",
      "metric": "l1",
      "polygon": [["0", "0"], ["4", "0"], ...],
      "points": [{"label": 1, "x": "1/2", "y": "3"}],
      "expected": {"shattered": true, "signatureCount": 2}
    }

Coordinates are exact: integers, decimals or ``"a/b"`` strings. Bare JSON
numbers are accepted and converted from their literal text, never through a
float.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

from .decomposition import PointSet
from .geometry import Polygon, PolygonError, format_rational, rational, validate_polygon
from .visibility import Metric

FORMAT_VERSION = 1


class ScenarioError(ValueError):
    pass


class ParseError(ScenarioError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class ValidationError(ScenarioError):
    pass


@dataclass(frozen=True)
class Expected:
    shattered: Optional[bool] = None
    signature_count: Optional[int] = None


@dataclass(frozen=True)
class Scenario:
    name: str
    polygon: Polygon
    points: PointSet
    metric: Metric = Metric.L1
    expected: Optional[Expected] = None

    def to_dict(self) -> dict:
        out = {
            "format": FORMAT_VERSION,
            "name": self.name,
            "metric": self.metric.value,
            "polygon": [[format_rational(p.x), format_rational(p.y)] for p in self.polygon.vertices],
            "points": [
                {"label": label, "x": format_rational(p.x), "y": format_rational(p.y)} for label, p in self.points.items()
            ],
        }
        if self.expected is not None:
            exp = {}
            if self.expected.shattered is not None:
                exp["shattered"] = self.expected.shattered
            if self.expected.signature_count is not None:
                exp["signatureCount"] = self.expected.signature_count
            out["expected"] = exp
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _coord(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ValidationError(f"{where}: coordinates must be strings or integers, got {value!r}")
    try:
        return rational(value)
    except (ValueError, TypeError) as exc:
        raise ValidationError(f"{where}: {exc}") from None


def from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ValidationError("scenario must be a JSON object")
    fmt = data.get("format", FORMAT_VERSION)
    if fmt != FORMAT_VERSION:
        raise ValidationError(f"unsupported scenario format {fmt!r}")
    for key in ("polygon", "points"):
        if key not in data:
            raise ValidationError(f"missing field {key!r}")
    verts = []
    for k, v in enumerate(data["polygon"]):
        if not isinstance(v, (list, tuple)) or len(v) != 2:
            raise ValidationError(f"polygon[{k}]: expected [x, y]")
        verts.append((_coord(v[0], f"polygon[{k}]"), _coord(v[1], f"polygon[{k}]")))
    try:
        poly = validate_polygon(verts)
    except PolygonError as exc:
        raise ValidationError(str(exc)) from exc
    pts, labels = [], []
    for k, entry in enumerate(data["points"]):
        if not isinstance(entry, dict) or "x" not in entry or "y" not in entry:
            raise ValidationError(f"points[{k}]: expected an object with x and y")
        labels.append(int(entry.get("label", k + 1)))
        pts.append((_coord(entry["x"], f"points[{k}]"), _coord(entry["y"], f"points[{k}]")))
    try:
        points = PointSet.of(pts, labels)
        points.validate(poly)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    try:
        metric = Metric.parse(data.get("metric", "l1"))
    except ValueError:
        raise ValidationError(f"unknown metric {data.get('metric')!r}") from None
    expected = None
    if "expected" in data and data["expected"] is not None:
        exp = data["expected"]
        expected = Expected(exp.get("shattered"), exp.get("signatureCount"))
    return Scenario(str(data.get("name", "")), poly, points, metric, expected)


def loads(text: str) -> Scenario:
    try:
        # keep decimal literals as text so they convert exactly
        data = json.loads(text, parse_float=str)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return from_dict(data)


def load_scenario(path) -> Scenario:
    return loads(Path(path).read_text())


def save_scenario(scenario: Scenario, path) -> None:
    Path(path).write_text(scenario.dumps())


def bundled_path(name: str) -> Path:
    return Path(str(resources.files("vcvis") / "data" / f"{name}.json"))


def bundled(name: str) -> Scenario:
    return load_scenario(bundled_path(name))


def bundled_names() -> list[str]:
    folder = resources.files("vcvis") / "data"
    return sorted(p.name[:-5] for p in folder.iterdir() if p.name.endswith(".json"))
