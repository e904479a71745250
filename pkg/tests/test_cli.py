import json
import re
import subprocess
import sys

import pytest

from lindep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_dot(capsys):
    code, out, err = run(capsys, "build", "--p", "3", "--k", "1", "--n", "2", "--format", "dot")
    assert code == 0
    assert out.startswith("graph G {")
    assert len(re.findall(r"^\s*\d+ \[label=", out, re.M)) == 9
    assert len(re.findall(r"^\s*\d+ -- \d+", out, re.M)) == 12
    assert "vertices=9 edges=12" in err


def test_build_json(capsys):
    code, out, _ = run(capsys, "build", "--p", "2", "--k", "2", "--n", "1", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["meta"]["q"] == 4 and d["meta"]["N"] == 1
    assert len(d["vertex_order"]) == 4 and len(d["edges"]) == 6


def test_build_csv_to_file(capsys, tmp_path):
    target = tmp_path / "L.csv"
    code, out, _ = run(capsys, "build", "--p", "2", "--n", "2", "--format", "csv",
                       "--matrix", "laplacian", "--out", str(target))
    assert code == 0 and "vertices=4 edges=3" in out
    rows = target.read_text().splitlines()
    assert rows[0] == "order,4" and rows[1] == "3,-1,-1,-1"


def test_build_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "build", "--p", "2", "--n", "1", "--out",
                       str(tmp_path / "missing" / "x.json"))
    assert code == 1 and "error" in err


def test_p_must_be_prime(capsys):
    code, _, err = run(capsys, "build", "--p", "4", "--n", "1")
    assert code == 1 and "p must be prime" in err


def test_capacity_exit(capsys):
    code, _, err = run(capsys, "build", "--p", "2", "--n", "11")
    assert code == 2 and "capacity" in err
    code, _, _ = run(capsys, "charpoly", "--p", "3", "--n", "3", "--spectra-bound", "10")
    assert code == 2


@pytest.mark.parametrize("argv,expected", [
    (["--p", "2", "--k", "1", "--n", "2", "--matrix", "adjacency"], "x^4 - 3x^2"),
    (["--matrix", "laplacian", "--p", "2", "--k", "1", "--n", "1"], "x^2 - 2x"),
    (["--matrix", "distance", "--p", "3", "--k", "1", "--n", "1"], "x^3 - 3x - 2"),
])
def test_charpoly_examples(capsys, argv, expected):
    code, out, _ = run(capsys, "charpoly", *argv)
    assert code == 0
    assert f"computed:  {expected}\n" in out and f"predicted: {expected}\n" in out
    assert "equal=true" in out


def test_charpoly_json(capsys):
    code, out, _ = run(capsys, "charpoly", "--p", "2", "--n", "2", "--format", "json")
    d = json.loads(out)
    assert d["equal"] and d["computed"]["coeffs"] == ["0", "0", "-3", "0", "1"]


def test_custom_modulus(capsys):
    code, out, _ = run(capsys, "charpoly", "--p", "2", "--k", "2", "--n", "1",
                       "--modulus", "1,1,1")
    assert code == 0 and "equal=true" in out
    code, _, err = run(capsys, "build", "--p", "2", "--k", "2", "--n", "1", "--modulus", "1,0,1")
    assert code == 1


def test_verify_markdown(capsys):
    code, out, _ = run(capsys, "verify", "--p", "3", "--k", "1", "--n", "2",
                       "--format", "markdown")
    assert code == 0
    assert "| adjacency_energy |" in out and "| NO |" in out


def test_verify_strict(capsys):
    code, _, _ = run(capsys, "verify", "--p", "3", "--k", "1", "--n", "2", "--strict")
    assert code != 0


@pytest.mark.slow
def test_verify_large_skips_np_rows(capsys):
    code, out, _ = run(capsys, "verify", "--p", "2", "--k", "1", "--n", "8")
    assert code == 0
    rows = {c["claim_id"]: c for c in json.loads(out)["claims"]}
    for cid in ("domination", "independence", "clique_number", "chromatic_number",
                "maximal_cliques", "isomorphism"):
        assert rows[cid]["status"] == "skipped"
    for cid in ("charpoly_adjacency", "charpoly_laplacian", "charpoly_distance",
                "spanning_trees", "laplacian_energy"):
        assert rows[cid]["status"] == "evaluated" and rows[cid]["match"] is True


def test_invariants_examples(capsys):
    code, out, _ = run(capsys, "invariants", "--p", "2", "--k", "1", "--n", "2")
    d = json.loads(out)
    assert code == 0
    assert (d["m"], d["diameter"], d["clique"], d["chromatic"]) == (3, 2, 2, 2)
    code, out, _ = run(capsys, "invariants", "--p", "5", "--k", "1", "--n", "1")
    assert json.loads(out)["planar"] is False


@pytest.mark.parametrize("argv", [["invariants"], ["invariants", "--p", "2"],
                                  ["verify", "--n", "2"], [], ["bogus"],
                                  ["build", "--p", "2", "--n", "1", "--format", "markdown"]])
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_n_must_be_positive(capsys):
    code, _, _ = run(capsys, "build", "--p", "2", "--n", "0")
    assert code == 1


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "lindep.cli", "charpoly", "--p", "2",
                          "--n", "1"], capture_output=True, text=True, check=True).stdout
    assert "equal=true" in out
