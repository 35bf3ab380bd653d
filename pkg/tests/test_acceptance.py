"""Acceptance criteria, one check per criterion.

Each check records a ``criterion N: PASS|FAIL`` line; the lines are printed
at the end of the pytest run (see conftest.py) and by running this file
directly.  Criterion 9's non-image witness half does not hold for patterns
whose right block is empty; it is asserted as written and marked xfail.
"""

from __future__ import annotations

import time
from itertools import permutations

import pytest

from patpop.moves import apply_move, find_site, psi, psi_inverse
from patpop.orders import refinement_leq
from patpop.perm import Occurrence, avoiders, catalan, count_occurrences, is_132_avoiding, list_occurrences
from patpop.popularity import popularity, popularity_recurrence
from patpop.trees import permutation_spine_structure
from patpop.verify import run_suite

RESULTS: list[str] = []


def record(label: str, ok: bool, detail: str, elapsed: float, limit: float) -> None:
    within = elapsed <= limit
    verdict = "PASS" if ok and within else "FAIL"
    RESULTS.append(f"criterion {label}: {verdict}  {detail}  ({elapsed:.1f}s, limit {limit:.0f}s)")
    assert ok, detail
    assert within, f"took {elapsed:.1f}s, limit {limit}s"


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def _suites(*names, **params):
    reports = [run_suite(n, **params) for n in names]
    bad = {r.suite: len(r.violations) for r in reports if r.verdict != "PASS"}
    checks = sum(r.checks_run for r in reports)
    return not bad, f"{checks} checks, failing suites: {bad or 'none'}"


def test_criterion_01_catalan():
    def go():
        counts = [len(avoiders(n)) for n in range(10)]
        oracle = all(sorted(p for p in permutations(range(1, n + 1)) if is_132_avoiding(p)) == list(avoiders(n))
                     for n in range(8))
        return counts == [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862] and counts == [catalan(n) for n in range(10)] \
            and oracle, f"counts={counts} oracle_n<=7={oracle}"
    (ok, detail), t = timed(go)
    record("1", ok, detail, t, 10)


def test_criterion_02_occurrences():
    def go():
        sets = {"".join(map(str, o.values)) for o in list_occurrences((5, 3, 4, 2, 1), (3, 2, 1))}
        want = {"532", "531", "542", "541", "321", "521", "421"}
        n = count_occurrences((5, 3, 4, 2, 1), (3, 2, 1))
        return n == 7 and sets == want, f"f(53421,321)={n} sets={sorted(sets)}"
    (ok, detail), t = timed(go)
    record("2", ok, detail, t, 1)


def test_criterion_03_move():
    (out, t) = timed(lambda: apply_move((8, 6, 5, 3, 4, 7, 1, 2, 9), 7))
    record("3", out == (8, 7, 6, 5, 3, 4, 1, 2, 9), f"apply_move(865347129,7)={''.join(map(str, out))}", t, 1)


def test_criterion_04_psi():
    def go():
        host = (11, 12, 8, 7, 9, 6, 10, 5, 4, 13, 2, 1, 3)
        occ = Occurrence.from_values(host, (12, 7, 9, 13, 2, 3))
        site = find_site((5, 3, 4, 6, 1, 2), 6)
        img = psi(occ, site)
        want = Occurrence.from_values((12, 11, 13, 9, 10, 6, 5, 7, 4, 8, 2, 1, 3), (13, 10, 5, 7, 2, 3))
        return img == want and psi_inverse(img, site) == occ, f"psi -> {img}"
    (ok, detail), t = timed(go)
    record("4", ok, detail, t, 1)


def test_criterion_05_spines_and_refinement():
    def go():
        a, b = permutation_spine_structure((3, 2, 4, 1)), permutation_spine_structure((3, 4, 2, 1))
        incomparable = not refinement_leq(a, b) and not refinement_leq(b, a)
        fine = refinement_leq((3, 3, 2, 2, 1, 1), (5, 4, 3))
        return (a, b) == ((2, 2), (3, 1)) and incomparable and fine, \
            f"S(T(3241))={a} S(T(3421))={b} incomparable={incomparable} <3,3,2,2,1,1> <=R <5,4,3>: {fine}"
    (ok, detail), t = timed(go)
    record("5", ok, detail, t, 1)


def test_criterion_06_counterexample():
    def go():
        rows = []
        for n in range(4, 10):
            a, b = popularity((3, 2, 4, 1), n), popularity((3, 4, 2, 1), n)
            ra, rb = popularity_recurrence("3241", n), popularity_recurrence("3421", n)
            rows.append((n, a, b, ra == a and rb == b))
        ok = rows[0][1:3] == (1, 1) and all(r[3] for r in rows) and all(a < b for _, a, b, _ in rows[1:])
        return ok, "n:A(3241)/A(3421)=" + " ".join(f"{n}:{a}/{b}" for n, a, b, _ in rows)
    (ok, detail), t = timed(go)
    record("6", ok, detail, t, 120)


def test_criterion_07_bijection():
    (res, t) = timed(lambda: _suites("bijection", n_max=8))
    record("7", *res, t, 120)


def test_criterion_08_moves():
    (res, t) = timed(lambda: _suites("moves", "tree-rewrite", "spine-merge", n_max=8))
    record("8", *res, t, 300)


def test_criterion_09a_psi_injective():
    (res, t) = timed(lambda: _suites("psi-injective", k_max=5, n_max=8))
    record("9a", *res, t, 300)


@pytest.mark.xfail(strict=True, reason="no non-image occurrence exists when the right block of tau is empty")
def test_criterion_09b_psi_witness():
    def go():
        r = run_suite("psi-witness", k_max=5, n_max=8)
        taus = sorted({v["inputs"]["tau"] for v in r.violations}, key=lambda s: (len(s), s))
        return not r.violations, f"{r.checks_run} checks, {len(r.violations)} without witness, tau in {taus}"
    (res, t) = timed(go)
    record("9b", *res, t, 300)


def test_criterion_10_popularity_suites():
    (res, t) = timed(lambda: _suites("equipop", "move-monotone", "refine-monotone", "strict", "sandwich",
                                     k_max=5, n_max=9))
    record("10", *res, t, 600)


def test_criterion_11_orders():
    (res, t) = timed(lambda: _suites("orders", n_max=12))
    record("11", *res, t, 60)


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion"):
            try:
                fn()
            except AssertionError:
                pass
    print("\n".join(RESULTS))
