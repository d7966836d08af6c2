import json

import gmpy2
import pytest

from vcvis import cli
from vcvis.scenario import ParseError, ValidationError, bundled, bundled_path, load_scenario, loads, save_scenario

from conftest import U4_VERTICES


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_u4_fixture_round_trip(tmp_path):
    sc = bundled("u4")
    assert [tuple(map(int, p)) for p in sc.polygon.vertices] == U4_VERTICES
    assert len(sc.points) == 1
    path = tmp_path / "copy.json"
    save_scenario(sc, path)
    again = load_scenario(path)
    assert again == sc
    assert again.dumps() == sc.dumps()


def test_rational_coordinates_are_exact():
    sc = loads('{"format": 1, "polygon": [["0","0"],["1","0"],["0","1"]], "points": [{"x": "1/3", "y": 0.25}]}')
    p = sc.points.points[0]
    assert p.x == gmpy2.mpq(1, 3) and p.y == gmpy2.mpq(1, 4)


def test_parse_error_has_position():
    with pytest.raises(ParseError) as info:
        loads('{"format": 1,\n  "polygon": [}')
    assert info.value.line == 2 and info.value.column is not None


@pytest.mark.parametrize(
    "text",
    [
        '{"format": 2, "polygon": [], "points": []}',
        '{"format": 1, "points": []}',
        '{"format": 1, "polygon": [["0","0"],["2","2"],["2","0"],["0","2"]], "points": []}',
        '{"format": 1, "polygon": [["0","0"],["1","0"],["0","1"]], "points": [{"x": "5", "y": "5"}]}',
        '{"format": 1, "polygon": [["0","0"],["1","0"],["0","1"]], "points": [], "metric": "l7"}',
    ],
)
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        loads(text)


def test_cli_visible(capsys):
    code, out, _ = run(capsys, "visible", str(bundled_path("u4")), "--from", "1/2,3", "--to", "7/2,3", "--metric", "l1")
    assert code == 0 and json.loads(out)["visible"] is False
    code, out, _ = run(capsys, "visible", str(bundled_path("u4")), "--from", "1/2,3", "--to", "2,1/2", "--metric", "l1")
    assert json.loads(out)["visible"] is True


def test_cli_shatter_u4(capsys):
    code, out, _ = run(capsys, "shatter", str(bundled_path("u4")))
    doc = json.loads(out)
    assert code == 0 and doc["shattered"] and doc["signatureCount"] == 2


def test_cli_expected_mismatch(capsys, tmp_path):
    data = json.loads(bundled_path("u4").read_text())
    data["expected"] = {"shattered": False}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, out, _ = run(capsys, "shatter", str(path))
    assert code == 1 and json.loads(out)["matchesExpected"] is False


def test_cli_cuts_and_faces(capsys):
    code, out, _ = run(capsys, "cuts", str(bundled_path("u4")))
    (cut,) = json.loads(out)["cuts"]
    assert cut["label"] == "N" and cut["axis"] == "horizontal"
    code, out, _ = run(capsys, "faces", str(bundled_path("u4")))
    assert json.loads(out)["faceCount"] == 3
    code, out, _ = run(capsys, "signatures", str(bundled_path("u4")))
    assert json.loads(out)["signatures"] == [[], [1]]


def test_cli_verify(capsys):
    code, out, _ = run(capsys, "verify", str(bundled_path("spike")), "--lemma", "all")
    assert code == 0 and json.loads(out)["holds"]
    code, out, _ = run(capsys, "verify", str(bundled_path("spike")), "--lemma", "2")
    assert [r["lemma"] for r in json.loads(out)["reports"]] == ["2"]


def test_cli_validate(capsys):
    code, out, _ = run(capsys, "validate", str(bundled_path("u4")))
    doc = json.loads(out)
    assert code == 0 and doc["area"] == "10" and doc["generalPosition"] is False


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["visible", "x.json"],
        ["shatter", "/nonexistent/file.json"],
        ["search", "--points", "0", "--trials", "5"],
        ["search", "--points", "3", "--trials", "5", "--generator", "Nope"],
    ],
)
def test_cli_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_cli_parse_error_exit(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2 and "line 1" in err


def test_cli_point_outside_exit(capsys):
    code, _, _ = run(capsys, "visible", str(bundled_path("u4")), "--from", "2,3", "--to", "1/2,1/2")
    assert code == 2


def test_cli_render(capsys, tmp_path):
    out = tmp_path / "u4.svg"
    code, _, _ = run(capsys, "render", str(bundled_path("u4")), "-o", str(out))
    svg = out.read_text()
    assert code == 0 and svg.count("<polygon id=\"face-") == 3
    assert "stroke-dasharray" in svg
    fills = {line.split('fill="')[1][:7] for line in svg.splitlines() if 'id="face-' in line}
    assert len(fills) == 2


def test_cli_search_seed_env(capsys, monkeypatch):
    argv = ["search", "--points", "3", "--trials", "3", "--seed", "1", "--generator", "RandomSimple"]
    _, base, _ = run(capsys, *argv)
    monkeypatch.setenv("VCVIS_SEED", "1")
    _, same, _ = run(capsys, *argv[:-4], "--seed", "99", *argv[-2:])
    assert same == base
    monkeypatch.setenv("VCVIS_SEED", "2")
    _, other, _ = run(capsys, *argv)
    assert json.loads(other)["seed"] == 2
