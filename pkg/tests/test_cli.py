from __future__ import annotations

import json

import pytest

from hexapod_liaison import cli


def _run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def _write(tmp_path, doc, name="h.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_example_fixture_legs(fixture_doc):
    doc = cli.load_input("example")
    assert len(doc["legs_squared"]) == 6
    assert doc["legs_squared"][:3] == fixture_doc["special_legs_squared_123"]


def test_moebius_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        code, _, _ = _run(capsys, "moebius", "example", "--out", str(d))
        assert code == 0
        outs.append((d / "moebius.json").read_bytes())
    assert outs[0] == outs[1]
    rep = json.loads(outs[0])
    assert rep["moebius_general"] and rep["pencil_dimension"] == 2 and len(rep["pencil"]) == 2


def test_verify_example(capsys):
    code, out, _ = _run(capsys, "verify", "example")
    assert code == 0
    assert json.loads(out)["matched_directions"] == 14


def test_gamma_example(capsys):
    code, out, _ = _run(capsys, "gamma", "example")
    assert code == 0
    assert json.loads(out)["gammas"] == ["1"]


@pytest.mark.slow
def test_all_example(capsys, tmp_path):
    code, out, _ = _run(capsys, "all", "example", "--out", str(tmp_path), "--samples", "20")
    assert code == 0
    rep = json.loads(out)
    assert rep["legs"]["dimension"] == 3
    assert rep["legs"]["input_legs_in_subspace"]
    assert rep["certify"]["issued"]
    assert rep["motion"]["degrees"]["J"] == 10
    assert (tmp_path / "motion.csv").exists()
    assert (tmp_path / "all.json").exists()


def test_family_roundtrip(capsys, tmp_path):
    code, out, _ = _run(capsys, "family", "order3", "--seed", "2")
    assert code == 0
    rep = json.loads(out)
    assert rep["symmetric"]
    path = _write(tmp_path, rep["hexapod"])
    base, plat, gamma, legs = cli.parse_hexapod(cli.load_input(path))
    h = cli.hexapod_json(cli.lia.Hexapod(base, plat, gamma, tuple(legs)))
    assert h == rep["hexapod"]


def test_family_lines_motion(capsys, tmp_path):
    code, out, _ = _run(capsys, "family", "lines", "--seed", "3")
    path = _write(tmp_path, json.loads(out)["hexapod"])
    code, out, _ = _run(capsys, "motion", path, "--samples", "4")
    assert code == 0
    assert json.loads(out)["movable"]


def test_motion_rigid_is_math_failure(capsys, tmp_path):
    doc = cli.load_input("example")
    doc["legs_squared"] = ["20", "17", "9", "10", "11", "12"]
    code, out, _ = _run(capsys, "motion", _write(tmp_path, doc))
    assert code == 2
    assert json.loads(out)["status"] == "fail"


def test_verify_wrong_platform_is_math_failure(capsys, tmp_path):
    doc = cli.load_input("example")
    doc["platform"] = [[0, 0, 0], [1, 0, 0], [0, 2, 1], [3, 1, 2], [1, 3, 3], [2, 2, 0]]
    code, out, _ = _run(capsys, "verify", _write(tmp_path, doc))
    assert code == 2


@pytest.mark.parametrize("doc, msg", [
    ({"base": [[0, 0, 0]] * 6}, "distinct"),
    ({"base": [[0, 0, "1/x"], [1, 0, 0], [2, 1, 0], [0, 1, 1], [1, 1, 1], [3, 2, 1]]}, "base"),
    ({"base": [[0, 0, 0.5], [1, 0, 0], [2, 1, 0], [0, 1, 1], [1, 1, 1], [3, 2, 1]]}, "float"),
    ({"platform": []}, "missing field 'base'"),
])
def test_input_errors(capsys, tmp_path, doc, msg):
    code, _, err = _run(capsys, "moebius", _write(tmp_path, doc))
    assert code == 1
    assert msg in err


def test_missing_file_and_bad_json(capsys, tmp_path):
    assert _run(capsys, "moebius", str(tmp_path / "nope.json"))[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert _run(capsys, "moebius", str(bad))[0] == 1


def test_low_precision_rejected(capsys):
    code, _, err = _run(capsys, "verify", "example", "--precision", "64")
    assert code == 1 and "128" in err


def test_certify_needs_legs(capsys, tmp_path):
    doc = cli.load_input("example")
    del doc["legs_squared"]
    assert _run(capsys, "certify", _write(tmp_path, doc))[0] == 1


def test_pairs_argument():
    assert cli._pairs_arg("5,6;4,6;4,5") == ((5, 6), (4, 6), (4, 5))
    with pytest.raises(Exception):
        cli._pairs_arg("5,6")
