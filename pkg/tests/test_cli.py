import csv
import io
import json
import subprocess
import sys

import pytest

from splitfact import cli
from splitfact.invariant import rho
from splitfact.rootsys import build
from splitfact.weyl import from_word


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv)
    assert code == 0, err
    return json.loads(out)


def test_rootsys_info():
    doc = run_json("rootsys", "info", "B2")
    assert doc["type"] == "B" and doc["rank"] == 2
    assert len(doc["roots"]) == 8
    assert sorted(doc["base"]) == [[0, 1], [1, -1]]
    assert run_json("rootsys", "info", "G2")["simple_coroots"][1] == ["-2/3", "1/3", "1/3"]


def test_msos_list_b2():
    doc = run_json("msos", "list", "B2")
    assert sorted(r["size"] for r in doc["representatives"]) == [1, 2]


def test_msos_enumerate_and_cache(tmp_path):
    doc = run_json("msos", "list", "B2", "--enumerate", "--cache", str(tmp_path))
    assert sorted(o["size"] for o in doc["orbits"]) == [1, 2]
    cached = tmp_path / "msos-B2.json"
    assert cached.exists()
    assert run_json("msos", "list", "B2", "--enumerate", "--cache", str(tmp_path)) == doc
    code, _, err = run("msos", "list", "A5", "--enumerate", "--max-rank", "3")
    assert code == 2 and "RankGuardError" in err


def test_rho_simple_root():
    doc = run_json("rho", "A2", "--alpha", "1,-1,0")
    assert doc["w_mod4"] == [2, 0]
    assert doc["basis"] == "simple-coroots"
    assert doc["sos"] == [[1, -1, 0]]
    assert doc["mu"] == [["1/1", "0/1", "0/1"], ["0/1", "1/1", "0/1"], ["0/1", "0/1", "1/1"]]


def test_rho_explicit_word_and_sos():
    B3 = build("B", 3)
    doc = run_json("rho", "B3", "--alpha", "1,1,0", "--mu", "2,3,2")
    assert doc["w_mod4"] == list(rho(B3, None, from_word(B3, [2, 3, 2]), (1, 1, 0)).value.w)
    pair = run_json("rho", "B2", "--sos", "1,-1;1,1")
    assert pair["w_mod4"] == [2, 2]
    assert set(pair["mu"]) == {"1,-1", "1,1"}
    code, _, err = run("rho", "A2", "--alpha", "1,0,-1", "--mu", "1,1")
    assert code == 2 and "PreconditionError" in err


def test_table_json_and_csv():
    doc = run_json("table", "C3")
    assert all(e["match"] for e in doc["entries"])
    assert any(not e["literal_text_match"] for e in doc["entries"])
    code, out, _ = run("table", "B4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows and all(r["match"] == "True" for r in rows)
    assert any(r["literal_text_match"] == "False" for r in rows)


def test_verify_pass_and_fail():
    code, out, _ = run("verify", "d3-counterexample")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["failures"] == []
    code, out, _ = run("verify", "adapted-positivity")
    doc = json.loads(out)
    assert code == 1 and doc["status"] == "fail" and doc["failures"]
    assert {"case_id", "witness"} <= set(doc["failures"][0])
    code, _, err = run("verify", "no-such-suite")
    assert code == 2


def test_cohomology_quotient():
    doc = run_json("cohomology", "quotient", "D4", "--sos", "1,-1,0,0;1,1,0,0")
    assert doc["divisors"] == [2] and doc["order"] == 2
    assert run_json("cohomology", "quotient", "D4", "--sos", "1,-1,0,0")["divisors"] == []
    doc = run_json("cohomology", "quotient", "A1", "--sos", "1,-1", "--kind", "cocycle")
    assert doc["divisors"] == [2]


def test_compare_b2():
    doc = run_json("compare", "B2", "--sos-sub", "1,-1", "--sos", "1,-1;1,1", "--char", "1/2,0")
    assert doc["value_A_sub"] == doc["value_A"] == "1/2 mod 1"
    assert doc["embedding_consistent"] is True
    assert doc["domain"]["divisors"] == [2] and doc["codomain"]["divisors"] == [2, 2]


def test_usage_errors_exit_2():
    for argv in (["rho", "B2", "--alpha", "1,2"], ["rho", "B2", "--alpha", "x"], ["rootsys", "info", "E8"],
                 ["compare", "B2", "--sos-sub", "0,1", "--sos", "1,-1;1,1", "--char", "1/2,0"],
                 ["compare", "B2", "--sos-sub", "1,-1", "--sos", "1,-1;1,1", "--char", "1/0,0"],
                 ["bogus"], []):
        code, out, err = run(*argv)
        assert code == 2, argv
        assert out == ""
        assert "error" in json.loads(err)


def test_output_is_byte_identical():
    for argv in (["verify", "boxed"], ["table", "D5"], ["msos", "list", "C4"]):
        assert run(*argv) == run(*argv)


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "splitfact.cli", "rho", "A2", "--alpha", "1,-1,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["w_mod4"] == [2, 0]


@pytest.mark.parametrize("suite", sorted(cli.SUITES))
def test_every_suite_reports(suite):
    code, out, _ = run("verify", suite)
    doc = json.loads(out)
    assert doc["suite"] == suite
    assert (doc["status"] == "pass") == (not doc["failures"]) == (code == 0)
