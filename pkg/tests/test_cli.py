import json
import subprocess
import sys

import pytest

from lrcbench.cli import main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_bound_exact(capsys):
    status, out, _ = run(capsys, "bound", "--n", "7", "--d", "4", "--q", "2", "--r", "2",
                         "--provider", "exact")
    assert status == 0 and json.loads(out) == {"bound": 3, "argmin_t": 0}


def test_bound_with_terms_and_k(capsys):
    status, out, _ = run(capsys, "bound", "--n", "6", "--d", "1", "--r", "2", "--k", "5",
                         "--terms")
    blob = json.loads(out)
    assert blob["bound"] == 4 and blob["argmin_t"] == 2 and blob["terms"] == [6, 5, 4]
    assert blob["refutes"] is True


def test_bound_from_table_file(capsys, tmp_path):
    table = tmp_path / "kopt.csv"
    status, _, _ = run(capsys, "search", "kopt", "--n", "7", "--d", "4", "--out", str(table))
    assert status == 0
    status, out, _ = run(capsys, "bound", "--n", "7", "--d", "4", "--r", "2", "--provider",
                         "exact", "--table", str(table))
    assert json.loads(out)["bound"] == 3


def test_curve_first_row(capsys):
    status, out, _ = run(capsys, "curve", "--series", "achievable-eq5", "--r", "2", "--q", "2",
                         "--delta-min", "0", "--delta-max", "0.5", "--step", "0.01")
    lines = out.split("\n")
    assert status == 0 and lines[0] == "delta,rate,series"
    assert lines[1] == "0.000000,0.666667,achievable-eq5"
    assert len(lines) == 1 + 51 + 1 and lines[-1] == ""
    assert "\r" not in out


def test_curve_is_stable_and_multi_series(capsys):
    args = ("curve", "--series", "converse-mrrw,eq1-singleton", "gv-parity", "--r", "2",
            "--step", "0.1")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b
    series = [line.split(",")[2] for line in a.strip().split("\n")[1:]]
    assert series == ["converse-mrrw"] * 6 + ["eq1-singleton"] * 6 + ["gv-parity"] * 6


def test_construct_and_verify_round_trip(capsys, tmp_path):
    path = tmp_path / "simplex.json"
    assert run(capsys, "construct", "simplex", "--m", "3", "--out", str(path))[0] == 0
    status, out, _ = run(capsys, "verify", str(path))
    report = json.loads(out)
    assert status == 0 and report["d_measured"] == 4 and report["r_measured"] == 2
    assert report["verified"] is True

    path = tmp_path / "concat.json"
    run(capsys, "construct", "concat", "--q", "2", "--r", "2", "--ko", "2", "--out", str(path))
    status, out, _ = run(capsys, "verify", str(path))
    assert status == 0 and json.loads(out)["d_measured"] >= 6


def test_construct_gv_augment_from_matrix(capsys, tmp_path):
    base = tmp_path / "base.json"
    base.write_text(json.dumps({"H0": [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1],
                                       [0, 0, 0, 1, 1, 1, 1]]}), encoding="utf-8")
    status, out, _ = run(capsys, "construct", "gv-augment", "--base", str(base), "--r", "2",
                         "--verify")
    art = json.loads(out)
    assert status == 0 and art["verified"] is True and art["repair_sets"][0] == [1, 2]


def test_construct_gv_augment_from_artifact(capsys, tmp_path):
    base = tmp_path / "simplex.json"
    run(capsys, "construct", "simplex", "--m", "3", "--out", str(base))
    status, out, _ = run(capsys, "construct", "gv-augment", "--base", str(base), "--r", "1")
    assert status == 0 and json.loads(out)["construction"] == "gv-augment"


def test_verify_failure_exit_code(capsys, tmp_path):
    path = tmp_path / "bad.json"
    run(capsys, "construct", "simplex", "--m", "3", "--out", str(path))
    blob = json.loads(path.read_text(encoding="utf-8"))
    blob["claims"]["d"] = 5
    path.write_text(json.dumps(blob), encoding="utf-8")
    status, out, _ = run(capsys, "verify", str(path))
    assert status == 4 and json.loads(out)["verified"] is False


def test_sample_commands(capsys):
    status, out, _ = run(capsys, "sample", "thm2", "--q", "2", "--r", "2", "--n", "12", "--M", "4",
                         "--d", "4", "--seed", "1")
    blob = json.loads(out)
    assert status == 0 and blob["certificate"]["exact_tail"] == "13/256"
    assert blob["certificate"]["lll_condition"] is True and blob["report"]["d_measured"] >= 4
    assert blob["artifact"]["seed"] == 1

    status, out, _ = run(capsys, "sample", "thm3", "--r", "2", "--n", "12", "--k", "4", "--d", "4",
                         "--seed", "3", "--trials", "50")
    blob = json.loads(out)
    assert status == 0 and blob["certificate"]["expected_bad"] == pytest.approx(9.0)
    assert 0 <= blob["certificate"]["monte_carlo"]["fraction_below_d"] <= 1


def test_search_commands(capsys):
    status, out, _ = run(capsys, "search", "kopt", "--n", "4", "--d", "2", "--restriction",
                         "linear")
    assert status == 0
    assert out.splitlines() == ["q,n,d,kopt,restriction", "2,1,2,0,linear", "2,2,2,1,linear",
                                "2,3,2,2,linear", "2,4,2,3,linear"]
    status, out, _ = run(capsys, "search", "lrc", "--n", "7", "--d", "4", "--r", "2")
    assert out.splitlines() == ["q,n,d,r,k", "2,7,4,2,3"]


@pytest.mark.parametrize("argv,code,kind", [
    (["bound", "--n", "3", "--d", "5", "--r", "1"], 2, "validation"),
    (["bound", "--n", "3", "--bogus", "1"], 2, "usage"),
    (["curve", "--series", "nope", "--r", "2"], 2, "validation"),
    (["construct", "simplex", "--m", "1"], 2, "validation"),
    (["verify", "/nonexistent/file.json"], 2, "input"),
    (["sample", "thm2", "--r", "1", "--n", "4", "--M", "16", "--d", "4", "--seed", "0",
      "--max-iter", "3"], 3, "budget"),
    (["search", "kopt", "--n", "8", "--d", "3", "--max-seconds", "0.05"], 3, "budget"),
    (["sample", "thm3", "--r", "2", "--n", "12", "--d", "4", "--seed", "0"], 2, "usage"),
])
def test_errors_are_single_json_lines(capsys, argv, code, kind):
    status, out, err = run(capsys, *argv)
    assert status == code and out == ""
    lines = err.strip().split("\n")
    assert len(lines) == 1
    blob = json.loads(lines[0])
    assert blob["error"] == kind and blob["exit_code"] == code


def test_module_entry_point_and_pipe():
    make = subprocess.run([sys.executable, "-m", "lrcbench", "construct", "simplex", "--m", "3"],
                          capture_output=True, check=True)
    check = subprocess.run([sys.executable, "-m", "lrcbench", "verify", "-"], input=make.stdout,
                           capture_output=True)
    assert check.returncode == 0 and json.loads(check.stdout)["verified"] is True
