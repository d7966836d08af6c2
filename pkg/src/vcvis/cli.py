"""Command-line front end.

Every subcommand except ``render`` writes one JSON document to stdout.
Exit codes: 0 success, 1 expected-mismatch or lemma violation, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .cuts import PointOnCutError
from .decomposition import FaceDecomposition, decompose, signature_map
from .geometry import Point, PointOutsidePolygonError, format_rational, rational
from .render import write_svg
from .scenario import Scenario, ScenarioError, load_scenario
from .search import Generator, SearchConfig, search_no_shatter
from .shattering import sig_key, shatter_check, verify_all
from .visibility import Metric, visible

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _pt(p) -> list[str]:
    return [format_rational(p[0]), format_rational(p[1])]


def _sig(sig) -> list:
    return sorted(sig)


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _parse_xy(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"expected X,Y but got {text!r}")
    try:
        return Point(rational(parts[0].strip()), rational(parts[1].strip()))
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _faces_doc(dec: FaceDecomposition, with_signatures: bool) -> dict:
    faces = []
    for k, f in enumerate(dec.faces):
        entry = {
            "index": k,
            "vertices": [_pt(p) for p in f.boundary.vertices],
            "representative": _pt(f.representative),
            "area": format_rational(f.boundary.area),
        }
        if with_signatures:
            entry["signature"] = _sig(f.signature)
        faces.append(entry)
    adjacency = [
        {
            "faces": list(a.faces),
            "segment": [_pt(a.segment.a), _pt(a.segment.b)],
            "cut": a.owner,
            "label": a.label.value if a.label is not None else None,
        }
        for a in dec.adjacency
    ]
    return {"metric": dec.metric.value, "faceCount": len(faces), "faces": faces, "adjacency": adjacency}


def cmd_validate(sc: Scenario, args) -> int:
    poly = sc.polygon
    _emit(
        {
            "name": sc.name,
            "valid": True,
            "vertices": len(poly),
            "generalPosition": poly.general_position,
            "area": format_rational(poly.area),
            "metric": sc.metric.value,
            "points": len(sc.points),
        }
    )
    return EXIT_OK


def cmd_cuts(sc: Scenario, args) -> int:
    dec = decompose(sc.polygon, Metric.L1)
    cuts = [
        {
            "id": k,
            "label": c.label.value,
            "axis": c.axis,
            "feature": c.feature.describe(),
            "merged": [f.describe() for f in c.merged],
            "chords": [[_pt(a), _pt(b)] for a, b in c.chords],
        }
        for k, c in enumerate(dec.cuts)
    ]
    _emit({"name": sc.name, "cutCount": len(cuts), "cuts": cuts})
    return EXIT_OK


def cmd_faces(sc: Scenario, args) -> int:
    dec = decompose(sc.polygon, sc.metric, sc.points)
    _emit({"name": sc.name, **_faces_doc(dec, False)})
    return EXIT_OK


def cmd_signatures(sc: Scenario, args) -> int:
    dec = signature_map(sc.polygon, sc.points, sc.metric)
    doc = {"name": sc.name, **_faces_doc(dec, True)}
    doc["signatureCount"] = len(dec.signatures)
    doc["signatures"] = [_sig(s) for s in sorted(dec.signatures, key=sig_key)]
    _emit(doc)
    return EXIT_OK


def cmd_visible(sc: Scenario, args) -> int:
    p, q = _parse_xy(args.from_), _parse_xy(args.to)
    metric = Metric.parse(args.metric) if args.metric else sc.metric
    _emit({"from": _pt(p), "to": _pt(q), "metric": metric.value, "visible": visible(sc.polygon, p, q, metric)})
    return EXIT_OK


def cmd_shatter(sc: Scenario, args) -> int:
    rep = shatter_check(sc.polygon, sc.points, sc.metric)
    order = sorted(rep.achieved, key=sig_key)
    doc = {
        "name": sc.name,
        "metric": sc.metric.value,
        "points": len(sc.points),
        "shattered": rep.shattered,
        "signatureCount": rep.signature_count,
        "witnesses": [{"signature": _sig(s), "point": _pt(rep.witnesses[s])} for s in order],
        "missing": [_sig(s) for s in rep.missing],
    }
    status = EXIT_OK
    exp = sc.expected
    if exp is not None:
        mismatch = (exp.shattered is not None and exp.shattered != rep.shattered) or (
            exp.signature_count is not None and exp.signature_count != rep.signature_count
        )
        doc["matchesExpected"] = not mismatch
        if mismatch:
            status = EXIT_MISMATCH
    _emit(doc)
    return status


def cmd_verify(sc: Scenario, args) -> int:
    which = ("1", "2", "3") if args.lemma == "all" else (args.lemma,)
    reports = verify_all(sc.polygon, sc.points, sc.metric, which)
    ok = all(r.holds for r in reports)
    _emit({"name": sc.name, "holds": ok, "reports": [r.to_dict() for r in reports]})
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_render(sc: Scenario, args) -> int:
    dec = signature_map(sc.polygon, sc.points, sc.metric)
    write_svg(dec, sc.points, args.output, labels=not args.no_labels)
    return EXIT_OK


def _seed(args) -> int:
    env = os.environ.get("VCVIS_SEED")
    if env is not None and env.strip():
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"VCVIS_SEED must be an integer, got {env!r}") from None
    return args.seed


def cmd_search(args) -> int:
    try:
        gen = Generator.parse(args.generator)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        cfg = SearchConfig(args.points, args.trials, _seed(args), gen, args.workers, args.fixture)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = search_no_shatter(cfg)
    _emit(summary.to_dict())
    # six or more shattered points would contradict the known upper bound
    if cfg.point_count >= 6 and summary.successes:
        return EXIT_MISMATCH
    return EXIT_OK


SCENARIO_COMMANDS = {
    "validate": cmd_validate,
    "cuts": cmd_cuts,
    "faces": cmd_faces,
    "signatures": cmd_signatures,
    "visible": cmd_visible,
    "shatter": cmd_shatter,
    "verify": cmd_verify,
    "render": cmd_render,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vcvis", description="L1/L2 visibility shattering toolkit")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in ("validate", "cuts", "faces", "signatures", "shatter"):
        sub.add_parser(name).add_argument("file")
    p = sub.add_parser("visible")
    p.add_argument("file")
    p.add_argument("--from", dest="from_", required=True, metavar="X,Y")
    p.add_argument("--to", required=True, metavar="X,Y")
    p.add_argument("--metric", choices=("l1", "l2"))
    p = sub.add_parser("verify")
    p.add_argument("file")
    p.add_argument("--lemma", choices=("1", "2", "3", "all"), default="all")
    p = sub.add_parser("render")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--no-labels", action="store_true")
    p = sub.add_parser("search")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--generator", default=Generator.RANDOM_STAIRCASE.value)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fixture", default="lowerbound5")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "search":
            return cmd_search(args)
        sc = load_scenario(args.file)
        return SCENARIO_COMMANDS[args.command](sc, args)
    except UsageError as exc:
        print(f"vcvis: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioError, OSError) as exc:
        print(f"vcvis: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PointOutsidePolygonError, PointOnCutError) as exc:
        print(f"vcvis: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
