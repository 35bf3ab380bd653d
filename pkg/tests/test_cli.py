import json
import subprocess
import sys

import pytest

from patpop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "--sigma", "53421", "--tau", "321") == (0, "7\n", "")


def test_move(capsys):
    code, out, _ = run(capsys, "move", "--sigma", "865347129", "--value", "7")
    assert (code, out) == (0, "876534129\n")


def test_move_json_and_listing(capsys):
    code, out, _ = run(capsys, "move", "--sigma", "865347129", "--value", "7", "--format", "json")
    data = json.loads(out)
    assert data["site"]["L"] == [8] and data["site"]["M"] == [3, 4, 5]
    code, out, _ = run(capsys, "move", "--sigma", "213")
    assert out.startswith("value=3 ")


def test_verify_equipop_json(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "equipop", "--k-max", "4", "--n-max", "8", "--format", "json")
    assert code == 0 and json.loads(out)["verdict"] == "PASS"


def test_failing_suite_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "psi-witness", "--k-max", "3", "--n-max", "5")
    assert code == 1 and "FAIL" in out


def test_budget_error(capsys):
    code, out, err = run(capsys, "popularity", "--tau", "21", "--n", "12")
    assert code == 2 and out == "" and err.count("\n") == 1


def test_budget_override(capsys):
    code, _, err = run(capsys, "popularity", "--tau", "21", "--n", "8", "--budget-n", "6")
    assert code == 2 and "n_max" in err
    code, out, _ = run(capsys, "popularity", "--tau", "21", "--n", "11", "--budget-n", "11")
    assert code == 0 and int(out) > 0


def test_domain_error(capsys):
    code, _, err = run(capsys, "move", "--sigma", "321", "--value", "3")
    assert code == 2 and err.startswith("patpop: error:")


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["count", "--sigma", "1x"])
    assert exc.value.code == 2


def test_tree_spine_order(capsys):
    assert run(capsys, "spine", "--sigma", "3241")[1] == "<2,2>\n"
    out = run(capsys, "tree", "--sigma", "3241", "--format", "dot")[1]
    assert out.startswith("digraph")
    out = run(capsys, "order", "--a", "<2,2>", "--b", "<3,1>")[1]
    assert "refinement=incomparable" in out
    out = run(capsys, "order", "--hasse", "3", "--format", "json")[1]
    assert json.loads(out)["nodes"] == ["<3>", "<2,1>", "<1,1,1>"]


def test_psi_roundtrip(capsys):
    out = run(capsys, "psi", "--sigma", "(11,12,8,7,9,6,10,5,4,13,2,1,3)", "--values", "(12,7,9,13,2,3)")[1]
    assert out == "sigma=(12,11,13,9,10,6,5,7,4,8,2,1,3) values=(13,10,5,7,2,3)\n"
    back = run(capsys, "psi", "--sigma", "(12,11,13,9,10,6,5,7,4,8,2,1,3)", "--values", "(13,10,5,7,2,3)",
               "--inverse", "--tau", "534612")[1]
    assert back == "sigma=(11,12,8,7,9,6,10,5,4,13,2,1,3) values=(12,7,9,13,2,3)\n"


def test_popularity_outputs(capsys):
    assert run(capsys, "popularity", "--tau", "3241", "--n", "4")[1] == "1\n"
    out = run(capsys, "popularity", "--tau", "3421", "--n-max", "6", "--method", "recurrence", "--format", "csv")[1]
    assert out.splitlines()[-1] == "3421,6,158,recurrence"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "patpop", "count", "--sigma", "53421", "--tau", "21"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "9\n"
