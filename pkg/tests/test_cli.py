import json

import pytest

from conftest import triangle
from fsmpaths.cli import main
from fsmpaths.io import read_paths, read_results_csv, write_model, write_paths
from fsmpaths.model import TestPath


@pytest.fixture
def g3_file(tmp_path):
    path = tmp_path / "g3.json"
    write_model(triangle({"b": 3.0}), path)
    return path


def test_generate_and_evaluate(tmp_path, g3_file, capsys):
    out = tmp_path / "p.json"
    assert main(["generate", str(g3_file), "--reduction", "ga", "--seed", "4", "-o", str(out),
                 "--dot", str(tmp_path / "p.dot")]) == 0
    assert read_paths(out) == [TestPath(("a", "b"))]
    assert "digraph" in (tmp_path / "p.dot").read_text()
    capsys.readouterr()
    assert main(["evaluate", str(g3_file), str(out)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "steps,2" in lines and "coverage_satisfied,True" in lines


def test_evaluate_flags_uncovered(tmp_path, g3_file):
    write_paths([TestPath(("c",))], tmp_path / "p.json")
    assert main(["evaluate", str(g3_file), str(tmp_path / "p.json"), "--min-length", "1"]) == 1


def test_exit_codes(tmp_path, g3_file):
    (tmp_path / "bad.json").write_text("{}")
    assert main(["generate", str(tmp_path / "bad.json")]) == 1
    assert main(["generate", str(g3_file), "--min-length", "3", "--max-length", "4"]) == 2
    assert main(["generate", str(g3_file), "--reduction", "nswitch", "--enum-cap", "2"]) == 3
    assert main(["generate", str(g3_file), "--min-length", "5", "--max-length", "2"]) == 1


def test_gen_instance_and_batch(tmp_path):
    models = tmp_path / "models"
    assert main(["gen-instance", "--random", "2", "-o", str(models), "--seed", "10"]) == 0
    assert sorted(p.name for p in models.iterdir()) == ["gen-0010.json", "gen-0011.json"]
    csv = tmp_path / "out" / "res.csv"
    assert main(["batch", str(models), "-o", str(csv), "--reductions", "sorted", "nswitch",
                 "--coverage", "basic", "--ranges", "2:6", "--repetitions", "1"]) == 0
    rows = read_results_csv(csv)
    assert {r["reduction"] for r in rows} <= {"sorted", "nswitch"}
    assert (tmp_path / "out" / "res_steps.png").stat().st_size > 0


def test_gen_instance_single(tmp_path):
    out = tmp_path / "one.json"
    assert main(["gen-instance", "-o", str(out), "--vertices", "8", "--edges", "12", "--seed", "2"]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 8 and len(doc["edges"]) == 12
    assert main(["gen-instance", "-o", str(out), "--vertices", "8", "--edges", "3"]) == 1


def test_export_dot(tmp_path, g3_file, capsys):
    assert main(["export-dot", str(g3_file)]) == 0
    assert capsys.readouterr().out.startswith('digraph "G3"')


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "fsmpaths", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "gen-instance" in proc.stdout
