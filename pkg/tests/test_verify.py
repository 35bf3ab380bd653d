import csv
import io
import json

import pytest

from patpop.budget import Budget
from patpop.errors import BudgetExceeded
from patpop.verify import SUITES, export_report, read_report, replay, run_suite


def test_counterexample_suite():
    r = run_suite("counterexample", n_max=9)
    assert r.verdict == "PASS" and not r.violations
    rows = {o["n"]: o for o in r.observations if "n" in o}
    assert rows[4]["A_3241"] == rows[4]["A_3421"] == 1
    assert all(rows[n]["relation"] == "<" for n in range(5, 10))


def test_refine_monotone_small():
    r = run_suite("refine-monotone", k_max=4, n_max=8)
    assert r.verdict == "PASS" and r.checks_run > 0


def test_rl_explore_is_observational():
    r = run_suite("rl-explore", k=4, n_max=7)
    assert r.verdict == "OBSERVED"
    assert r.observations[-1]["summary"]


def test_report_roundtrip_and_formats():
    r = run_suite("catalan", n_max=6)
    assert read_report(export_report(r, "json")).to_dict() == r.to_dict()
    assert export_report(r, "text").decode().rstrip().endswith(f"PASS (checks={r.checks_run}, violations=0)")
    assert export_report(r, "json") == export_report(run_suite("catalan", n_max=6), "json")
    assert "elapsed" in json.loads(export_report(r, "json", include_timing=True))


def test_violation_rows_in_csv():
    r = run_suite("psi-witness", k_max=3, n_max=5)
    assert r.verdict == "FAIL"
    rows = list(csv.DictReader(io.StringIO(export_report(r, "csv").decode())))
    bad = [row for row in rows if row["kind"] == "nonimage-witness"]
    assert bad and all(json.loads(row["inputs"])["tau"] for row in bad)
    assert all(replay(v) for v in r.violations)


def test_read_report_rejects_garbage():
    with pytest.raises(Exception):
        read_report('{"suite": 3}')


def test_budget_and_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope")
    with pytest.raises(BudgetExceeded):
        run_suite("catalan", n_max=11)
    with pytest.raises(BudgetExceeded):
        run_suite("equipop", budget=Budget(k_max=3), k_max=4, n_max=6)


@pytest.mark.parametrize("name", ["catalan", "bijection", "moves", "tree-rewrite", "spine-merge", "orders"])
def test_structural_suites_small(name):
    params = {"n_max": 6}
    assert run_suite(name, **params).verdict == "PASS"


def test_registry():
    assert {"equipop", "move-monotone", "refine-monotone", "strict", "sandwich"} <= set(SUITES)
