import json
import math
import subprocess
import sys

import pytest

from massgrowth.cli import InstanceFile, ValidationError, main, parse_grid


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data))
    return str(p)


SCALAR = {"version": 1, "matrix": [[[[-1, 1], [1, 1]]]]}
WORKED = {"version": 1, "autoequivalence": {"permutation": [1, 0, 2], "shifts": [1, 0, 2]}}


def test_parse_grid():
    assert parse_grid("-1:1:3") == (-1.0, 0.0, 1.0)
    for bad in ("1:0:3", "0:1", "a:b:c", "0:1:0"):
        with pytest.raises(ValidationError):
            parse_grid(bad)


def test_instance_roundtrip_and_validation():
    inst = InstanceFile.from_dict({**SCALAR, "stability": {"masses": [1.0], "phases": [0.0]}, "grid": [0.0], "seed": 3})
    assert InstanceFile.from_dict(inst.to_dict()) == inst
    with pytest.raises(ValidationError):
        InstanceFile.from_dict({"version": 1})
    with pytest.raises(ValidationError):
        InstanceFile.from_dict({**WORKED, "matrix": [[[[0, 1]]]]})
    with pytest.raises(ValidationError):
        InstanceFile.from_dict({"version": 2, **{k: v for k, v in SCALAR.items() if k != "version"}})


def test_entropy_csv(tmp_path):
    out = tmp_path / "h.csv"
    assert main(["entropy", "--instance", write(tmp_path, "a.json", SCALAR), "--out", str(out)]) == 0
    raw = out.read_bytes()
    assert b"\r" not in raw
    rows = raw.decode().strip().split("\n")
    assert rows[0] == "t,h,lower_basic,upper_basic,lower_sharp"
    assert len(rows) == 202
    for row in rows[1:]:
        t, h, *_ = map(float, row.split(","))
        assert h == pytest.approx(math.log(math.exp(-t) + math.exp(t)), abs=1e-9)


def test_entropy_identity_is_zero(tmp_path, capsys):
    inst = write(tmp_path, "i.json", {"version": 1, "matrix": [[[[0, 1]], []], [[], [[0, 1]]]]})
    assert main(["entropy", "--instance", inst, "--grid", "-2:2:5"]) == 0
    rows = capsys.readouterr().out.strip().split("\n")[1:]
    assert all(float(r.split(",")[1]) == 0.0 for r in rows)


def test_entropy_nilpotent_exit_code(tmp_path):
    inst = write(tmp_path, "n.json", {"version": 1, "matrix": [[[], [[0, 1]]], [[], []]]})
    assert main(["entropy", "--instance", inst]) == 4


def test_validation_exit_codes(tmp_path):
    assert main(["entropy", "--instance", str(tmp_path / "missing.json")]) == 2
    bad = write(tmp_path, "b.json", {"version": 1, "autoequivalence": {"permutation": [0, 0], "shifts": [0, 0]}})
    assert main(["classify", "--instance", bad]) == 2
    assert main(["verify", "no-such-suite"]) == 2
    assert main(["catalog", "--name", "spherical-twist", "--N", "1"]) == 2


def test_classify_json(tmp_path):
    out = tmp_path / "c.json"
    assert main(["classify", "--instance", write(tmp_path, "w.json", WORKED), "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["eventual_displacement"] == {"num": 2, "den": 1}
    assert rep["translation_length"] == {"num": 2, "den": 1}
    assert rep["conventional_classification"] == "parabolic"
    assert rep["classification"] == "hyperbolic"
    assert set(rep["witness"]) == {"masses", "phases"}


def test_verify_vacuous_and_deterministic(tmp_path, capsys):
    assert main(["verify", "pl-bounds", "--count", "0"]) == 0
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "metric-bounds", "--seed", "5", "--count", "20", "--jobs", "2", "--out", str(a)]) == 0
    assert main(["verify", "metric-bounds", "--seed", "5", "--count", "20", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert [r["index"] for r in rep["instances"]] == list(range(20))


def test_catalog_curves(tmp_path, capsys):
    report = tmp_path / "r.json"
    assert main(["catalog", "--name", "spherical-twist", "--N", "3", "--grid", "-2:2:5", "--report", str(report)]) == 0
    rows = capsys.readouterr().out.strip().split("\n")
    assert rows == ["t,h", "-2,4", "-1,2", "0,0", "1,0", "2,0"]
    assert json.loads(report.read_text())["passed"]
    assert main(["catalog", "--name", "shift", "--n", "0", "--grid", "-1:1:3", "--report", str(report)]) == 0
    assert capsys.readouterr().out.strip().split("\n")[1:] == ["-1,0", "0,0", "1,0"]
    assert main(["catalog", "--name", "dhkk", "--r", "2", "--f0", "1", "--report", str(report)]) == 0
    assert json.loads(report.read_text())["displacement"] == 1


def test_module_entry_point(tmp_path):
    inst = write(tmp_path, "w.json", WORKED)
    runs = [
        subprocess.run([sys.executable, "-m", "massgrowth", "classify", "--instance", inst], capture_output=True)
        for _ in range(2)
    ]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout
