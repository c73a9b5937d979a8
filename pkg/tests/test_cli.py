"""The command-line surface: outputs, formats, and exit codes."""

import json
import os
import shutil

from bredon.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr().out
    return code, out


def test_weight0_single_value(capsys):
    code, out = run(capsys, "weight0", "--a", "-2", "--p", "2")
    assert code == 0 and out.strip() == "Z"
    code, out = run(capsys, "weight0", "--a", "0", "--p", "1", "--coeff", "2")
    assert code == 0 and out.strip() == "Z/2"


def test_grid_csv_seven_rows(capsys):
    code, out = run(capsys, "grid", "--weight", "0", "--p-range", "3",
                    "--coeff", "Z", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 8 and lines[0].startswith("p\\a")


def test_grid_json(capsys):
    code, out = run(capsys, "grid", "--weight", "0", "--p-range", "1",
                    "--format", "json")
    assert code == 0
    cells = json.loads(out)
    assert all({"a", "p", "group", "citation", "source"} <= set(c) for c in cells)


def test_derive_trace(capsys):
    code, out = run(capsys, "derive", "--weight", "1", "--profile", "euclidean",
                    "--n-max", "3", "--trace")
    assert code == 0
    assert "A-comp" in out and "P-prop" in out


def test_derive_reports_findings(capsys):
    code, out = run(capsys, "derive", "--weight", "1", "--profile", "freal",
                    "--n-max", "3")
    assert code == 0
    assert "note:" in out and "A-alpha" in out


def test_check_pass_exit_zero(capsys):
    code, out = run(capsys, "check", "corner-values", "fixture-coverage")
    assert code == 0
    assert out.count("PASS") == 2


def test_check_failure_exit_one(capsys, tmp_path, monkeypatch):
    from bredon.tables import fixture_dir
    src = fixture_dir()
    for name in os.listdir(src):
        shutil.copy(os.path.join(src, name), tmp_path / name)
    path = tmp_path / "weight0_integral.json"
    data = json.loads(path.read_text())
    data["rows"][0]["group"] = "Z/2"  # wrong corner value
    path.write_text(json.dumps(data))
    monkeypatch.setenv("BREDON_FIXTURE_DIR", str(tmp_path))
    code, out = run(capsys, "check", "weight0-integral", "--p-max", "2")
    assert code == 1
    assert "FAIL" in out


def test_export_writes_file(capsys, tmp_path):
    out_file = tmp_path / "grid.csv"
    code, _ = run(capsys, "export", "--weight", "0", "--p-range", "2",
                  "--format", "csv", "--out", str(out_file))
    assert code == 0
    assert out_file.read_text().startswith("p\\a")
