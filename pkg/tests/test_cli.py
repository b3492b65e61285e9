import json
import subprocess
import sys

import pytest

from gcomplex.cli import main
from conftest import fixture_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    return json.loads(out)


def test_complexity_cycle(capsys):
    doc = run_json(capsys, "complexity", "--family", "cycle", "--n", "5")
    assert doc["treeCount"] == "5" and doc["closedForm"] == "5"


def test_complexity_file(capsys):
    doc = run_json(capsys, "complexity", "--file", str(fixture_path("g9_18.txt")))
    assert doc["treeCount"] == "12480"


def test_filtrate(capsys):
    doc = run_json(capsys, "filtrate", "--order", "9", "--size", "18", "--regular-only", "--max-r", "3")
    assert doc["max_tree_count"] == "12480"
    assert [c["tree_count"] for c in doc["champions"]] == ["12480"]


def test_synchrony(capsys):
    doc = run_json(capsys, "synchrony", "--family", "cycle", "--n", "4", "--threshold", "2", "--k", "2", "--exhaustive")
    assert doc["pK"]["num"] == "1" and doc["pK"]["den"] == "3"
    doc = run_json(capsys, "synchrony", "--family", "cycle", "--n", "4", "--threshold", "1", "--seed", "1")
    assert doc["i_star"] == 2 and doc["trajectory"][1] == [1, 2, 4]


def test_monte_carlo_is_reproducible(capsys):
    argv = ["synchrony", "--family", "petersen", "--threshold", "2", "--k", "3", "--samples", "300"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_other_commands(capsys):
    assert run_json(capsys, "stats", "--family", "petersen")["srg"] == [10, 3, 0, 1]
    doc = run_json(capsys, "spectrum", "--family", "rook", "--a", "3", "--b", "3")
    assert doc["two_eigenvalue"]["n1"] == 4
    doc = run_json(capsys, "complement", "--family", "petersen")
    assert doc["triangles"] == [0, 30]
    doc = run_json(capsys, "verify-srg", "--family", "clebsch", "--expect", "16,5,0,2")
    assert doc["passed"]
    doc = run_json(capsys, "expander", "--family", "moebius_ladder", "--start", "6", "--stop", "12", "--step", "2", "--tail", "2")
    assert [p["tree_count"] for p in doc["points"][:2]] == ["81", "392"] and "estimate" in doc["cd_estimate_note"]
    doc = run_json(capsys, "verify-conjecture", "--order", "5", "--size", "7")
    assert doc["holds"] is True
    doc = run_json(capsys, "gen", "--family", "gkl", "--param", "k=2", "--param", "l=0")
    assert doc["order"] == 9 and doc["size"] == 18
    doc = run_json(capsys, "stats", "--family", "cycle", "--n", "5", "--double")
    assert doc["degrees"]["min"] == 3


def test_text_output(capsys):
    code, out, _ = run(capsys, "--format", "text", "complexity", "--family", "petersen")
    assert code == 0 and "treeCount: 2000" in out
    code, out, _ = run(capsys, "gen", "--format", "text", "--family", "complete", "--n", "3")
    assert out == "3 3\n1 2\n1 3\n2 3\n"


def test_exit_codes(capsys):
    code, _, err = run(capsys, "complexity", "--family", "cycle", "--n", "2")
    assert code == 1 and err.startswith("domain-error")
    code, _, err = run(capsys, "filtrate", "--order", "12", "--size", "20")
    assert code == 1 and err.startswith("envelope-exceeded")
    with pytest.raises(SystemExit) as info:
        main(["complexity"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["complexity", "--family", "cycle", "--n", "5", "--file", "x"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["filtrate", "--order", "5"])
    assert info.value.code == 2


def test_parse_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n1 4\n")
    code, _, err = run(capsys, "stats", "--file", str(bad))
    assert code == 1 and err.startswith("index-out-of-range") and "line 2" in err


def test_help_names_constructs():
    out = subprocess.run([sys.executable, "-m", "gcomplex", "filtrate", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "Tr(L^r)" in out.stdout
    for cmd, word in [("complexity", "matrix-tree"), ("synchrony", "threshold"), ("verify-srg", "strongly regular")]:
        out = subprocess.run([sys.executable, "-m", "gcomplex", cmd, "--help"], capture_output=True, text=True)
        assert word in out.stdout


def test_byte_identical_runs():
    argv = [sys.executable, "-m", "gcomplex", "filtrate", "--order", "7", "--size", "10", "--max-r", "5"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv + ["--workers", "2"], capture_output=True, check=True).stdout
    assert a == b
