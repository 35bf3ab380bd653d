"""Exhaustive verification suites and their reports.

Each suite is a pure function of its parameters: it walks every case in
range, counts the checks it made and records a replayable witness for each
failed one.  Nothing is sampled.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable

import jsonschema

from .budget import Budget, default_budget
from .errors import BudgetExceeded
from .moves import (
    apply_move,
    find_site,
    has_move,
    move_candidates,
    nonimage_witness,
    psi,
    psi_codomain,
    psi_domain,
    psi_inverse,
    realize_spine_merge,
    tree_rewrite,
)
from .orders import (
    LITERAL,
    REFINEMENT_COMPATIBLE,
    partitions,
    refinement_leq,
    refinement_leq_oracle,
    rl_compare,
)
from .perm import avoiders, catalan, decreasing, format_perm, increasing, is_132_avoiding, parse_perm
from .popularity import popularity, popularity_recurrence, popularity_table
from .trees import (
    child_of,
    parent_of,
    permutation_of_tree,
    permutation_spine_structure,
    spine_structure,
    tree_of_permutation,
)

PASS, FAIL, OBSERVED = "PASS", "FAIL", "OBSERVED"


@dataclass
class Report:
    suite: str
    params: dict
    checks_run: int = 0
    violations: list[dict] = field(default_factory=list)
    observations: list[dict] = field(default_factory=list)
    verdict: str = PASS
    elapsed: float = 0.0

    def check(self, ok: bool, kind: str, inputs: dict, expected: str, observed: dict) -> bool:
        self.checks_run += 1
        if not ok:
            self.violations.append({"kind": kind, "inputs": inputs, "expected": expected, "observed": observed})
        return ok

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "params": self.params,
            "checks_run": self.checks_run,
            "violations": self.violations,
            "observations": self.observations,
            "verdict": self.verdict,
        }
        if include_timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "params", "checks_run", "violations", "observations", "verdict"],
    "additionalProperties": False,
    "properties": {
        "suite": {"type": "string"},
        "params": {"type": "object"},
        "checks_run": {"type": "integer", "minimum": 0},
        "violations": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind", "inputs", "expected", "observed"],
                "properties": {
                    "kind": {"type": "string"},
                    "inputs": {"type": "object"},
                    "expected": {"type": "string"},
                    "observed": {"type": "object"},
                },
            },
        },
        "observations": {"type": "array", "items": {"type": "object"}},
        "verdict": {"enum": [PASS, FAIL, OBSERVED]},
        "elapsed": {"type": "number"},
    },
}


def read_report(data: bytes | str) -> Report:
    """Parse and schema-validate a JSON report."""
    obj = json.loads(data)
    jsonschema.validate(obj, REPORT_SCHEMA)
    if obj["verdict"] == PASS and obj["violations"]:
        raise jsonschema.ValidationError("PASS report with violations")
    return Report(obj["suite"], obj["params"], obj["checks_run"], obj["violations"],
                  obj["observations"], obj["verdict"], obj.get("elapsed", 0.0))


def _p(perm) -> str:
    return format_perm(perm)


# --- suites ----------------------------------------------------------------------

def suite_catalan(r: Report, n_max: int, oracle_n_max: int = 7, **_):
    for n in range(n_max + 1):
        got = avoiders(n)
        r.check(len(got) == catalan(n), "catalan-count", {"n": n}, f"C_{n}={catalan(n)}", {"count": len(got)})
        r.check(all(a < b for a, b in zip(got, got[1:])), "lex-order", {"n": n}, "strictly increasing", {})
        r.check(all(map(is_132_avoiding, got)), "avoidance", {"n": n}, "all 132-avoiding", {})
        if n <= oracle_n_max:
            brute = sorted(p for p in permutations(range(1, n + 1)) if _has_no_132(p))
            r.check(list(got) == brute, "filter-oracle", {"n": n}, "matches all-permutation filter",
                    {"count": len(got), "oracle": len(brute)})


def _has_no_132(p) -> bool:
    return not any(p[a] < p[c] < p[b] for a, b, c in combinations(range(len(p)), 3))


def suite_bijection(r: Report, n_max: int, parent_n_max: int = 7, **_):
    for n in range(n_max + 1):
        for sigma in avoiders(n):
            t = tree_of_permutation(sigma)
            back = permutation_of_tree(t)
            r.check(back == sigma, "roundtrip-perm", {"sigma": _p(sigma)}, "permutation_of_tree(T(sigma)) == sigma",
                    {"got": _p(back)})
            r.check(tree_of_permutation(back) == t, "roundtrip-tree", {"sigma": _p(sigma)}, "T(P(T)) == T", {})
            spine = spine_structure(t)
            r.check(sum(spine) == n, "spine-total", {"sigma": _p(sigma)}, f"parts sum to {n}", {"spine": str(spine)})
            if n > parent_n_max or t is None:
                continue
            parents = {}
            for node in t.preorder():
                for child in (node.left, node.right):
                    if child is not None:
                        parents[child.label] = node.label
            for value in range(1, n + 1):
                got = parent_of(sigma, value)
                r.check(got == parents.get(value), "parent-rule", {"sigma": _p(sigma), "value": value},
                        f"parent {parents.get(value)}", {"got": got})
                kid = child_of(sigma, value)
                node = t.find(value)
                kids = {c.label for c in (node.left, node.right) if c is not None}
                r.check((kid in kids) if kids else kid is None, "child-rule", {"sigma": _p(sigma), "value": value},
                        f"a child among {sorted(kids)}", {"got": kid})


def _site_oracle(sigma, value) -> bool:
    """Move conditions checked over every index pair, independent of find_site."""
    n = len(sigma)
    for i in range(n):
        for j in range(i + 1, n):
            if sigma[j] != value or not sigma[i] < sigma[j]:
                continue
            if all(sigma[a] > sigma[j] for a in range(i)) and all(sigma[b] < sigma[i] for b in range(i + 1, j)):
                return True
    return False


def suite_moves(r: Report, n_max: int, **_):
    for n in range(n_max + 1):
        for sigma in avoiders(n):
            sites = {s.value: s for s in move_candidates(sigma)}
            for value in range(1, n + 1):
                oracle = _site_oracle(sigma, value)
                r.check((value in sites) == oracle, "site-soundness", {"sigma": _p(sigma), "value": value},
                        f"site exists == {oracle}", {"reported": value in sites})
            for s in sites.values():
                r.check(s.holds() and s.perm[s.j - 1] == s.perm[s.i - 1] + 1, "site-conditions",
                        {"sigma": _p(sigma), "value": s.value}, "bullet conditions hold", {})
                phi = apply_move(sigma, s.value)
                r.check(is_132_avoiding(phi), "closure", {"sigma": _p(sigma), "value": s.value},
                        "result avoids 132", {"result": _p(phi)})
            if n >= 2:
                expect = sigma != decreasing(n)
                r.check(bool(sites) == expect, "existence", {"sigma": _p(sigma)},
                        "a move exists" if expect else "no move exists", {"sites": sorted(sites)})


def suite_tree_rewrite(r: Report, n_max: int, **_):
    for n in range(2, n_max + 1):
        for sigma in avoiders(n):
            t = tree_of_permutation(sigma)
            for s in move_candidates(sigma):
                lhs = tree_of_permutation(apply_move(sigma, s.value))
                rhs = tree_rewrite(t, s.value)
                r.check(lhs == rhs, "commuting-square", {"sigma": _p(sigma), "value": s.value},
                        "T(move(sigma)) == rewrite(T(sigma))", {"rewrite": _p(permutation_of_tree(rhs))})


def suite_spine_merge(r: Report, n_max: int, **_):
    for n in range(2, n_max + 1):
        for sigma in avoiders(n):
            before = permutation_spine_structure(sigma)
            for s in move_candidates(sigma):
                after = permutation_spine_structure(apply_move(sigma, s.value))
                r.check(_is_single_merge(before, after), "merge-two-parts", {"sigma": _p(sigma), "value": s.value},
                        "after = before with two parts merged", {"before": str(before), "after": str(after)})
        for spine in partitions(n):
            for a, b in combinations(range(1, len(spine) + 1), 2):
                for x, y in ((a, b), (b, a)):
                    sigma, value = realize_spine_merge(spine, x, y)
                    merged = sorted([q for t, q in enumerate(spine, 1) if t not in (x, y)] + [spine[x - 1] + spine[y - 1]],
                                    reverse=True)
                    ok = (permutation_spine_structure(sigma) == spine and has_move(sigma, value)
                          and list(permutation_spine_structure(apply_move(sigma, value))) == merged)
                    r.check(ok, "realize-merge", {"spine": str(spine), "parts": [x, y]},
                            "realized permutation merges the two parts", {"sigma": _p(sigma), "value": value})


def _is_single_merge(before, after) -> bool:
    if len(after) != len(before) - 1:
        return False
    for x, y in combinations(range(len(before)), 2):
        rest = [q for t, q in enumerate(before) if t not in (x, y)]
        if sorted(rest + [before[x] + before[y]], reverse=True) == list(after):
            return True
    return False


def _eligible_sites(k_max: int):
    for k in range(2, k_max + 1):
        for tau in avoiders(k):
            if has_move(tau, k):
                yield find_site(tau, k)


def suite_psi_injective(r: Report, k_max: int, n_max: int, **_):
    for site in _eligible_sites(k_max):
        tau, k = site.perm, len(site.perm)
        mu = apply_move(tau, k)
        for n in range(k, n_max + 1):
            images = {}
            for occ in psi_domain(site, n):
                img = psi(occ, site)
                ok = img.pattern == mu and img.values[0] == n and is_132_avoiding(img.host)
                r.check(ok, "psi-valid", {"tau": _p(tau), "n": n, "occurrence": str(occ)},
                        "image is an occurrence of mu starting with n", {"image": str(img)})
                r.check(img not in images, "psi-injective", {"tau": _p(tau), "n": n, "occurrence": str(occ)},
                        "distinct images", {"image": str(img), "also_from": str(images.get(img))})
                images[img] = occ
                back = psi_inverse(img, site)
                r.check(back == occ, "psi-inverse", {"tau": _p(tau), "n": n, "occurrence": str(occ)},
                        "psi_inverse(psi(occ)) == occ", {"got": str(back)})
            r.observations.append({"tau": _p(tau), "mu": _p(mu), "n": n, "domain": len(images),
                                   "codomain": len(psi_codomain(site, n))})


def suite_psi_witness(r: Report, k_max: int, n_max: int, **_):
    for site in _eligible_sites(k_max):
        tau, k = site.perm, len(site.perm)
        for n in range(k + 1, n_max + 1):
            w = nonimage_witness(site, n)
            r.check(w is not None, "nonimage-witness", {"tau": _p(tau), "value": k, "n": n},
                    "a witness-shaped occurrence of mu outside the image of psi",
                    {"right_block": sorted(site.right)})


def _pattern_range(k_max: int):
    return [(k, tau) for k in range(1, k_max + 1) for tau in avoiders(k)]


def suite_equipop(r: Report, k_max: int, n_max: int, **_):
    for k in range(1, k_max + 1):
        by_spine: dict = {}
        for tau in avoiders(k):
            by_spine.setdefault(permutation_spine_structure(tau), []).append(tau)
        for n in range(k, n_max + 1):
            table = popularity_table(k, n)
            for spine, pats in sorted(by_spine.items()):
                for other in pats[1:]:
                    r.check(table[pats[0]] == table[other], "equipopular",
                            {"tau": _p(pats[0]), "mu": _p(other), "n": n, "spine": str(spine)},
                            "A_n(tau) == A_n(mu)", {"A_tau": table[pats[0]], "A_mu": table[other]})


def suite_move_monotone(r: Report, k_max: int, n_max: int, **_):
    for k in range(2, k_max + 1):
        for n in range(k, n_max + 1):
            table = popularity_table(k, n)
            for tau in avoiders(k):
                for s in move_candidates(tau):
                    mu = apply_move(tau, s.value)
                    r.check(table[mu] >= table[tau], "move-monotone",
                            {"tau": _p(tau), "value": s.value, "mu": _p(mu), "n": n},
                            "A_n(mu) >= A_n(tau)", {"A_tau": table[tau], "A_mu": table[mu]})


def suite_refine_monotone(r: Report, k_max: int, n_max: int, **_):
    for k in range(1, k_max + 1):
        pats = avoiders(k)
        spine = {t: permutation_spine_structure(t) for t in pats}
        for n in range(k, n_max + 1):
            table = popularity_table(k, n)
            for tau in pats:
                for mu in pats:
                    if refinement_leq(spine[tau], spine[mu]):
                        r.check(table[tau] <= table[mu], "refine-monotone",
                                {"tau": _p(tau), "mu": _p(mu), "n": n},
                                f"A_n(tau) <= A_n(mu) since {spine[tau]} <=_R {spine[mu]}",
                                {"A_tau": table[tau], "A_mu": table[mu]})


def suite_strict(r: Report, k_max: int, n_max: int, **_):
    for k in range(2, k_max + 1):
        pats = avoiders(k)
        spine = {t: permutation_spine_structure(t) for t in pats}
        for n in range(k + 1, n_max + 1):
            table = popularity_table(k, n)
            for tau in pats:
                for s in move_candidates(tau):
                    mu = apply_move(tau, s.value)
                    r.check(table[mu] > table[tau], "move-strict",
                            {"tau": _p(tau), "value": s.value, "mu": _p(mu), "n": n},
                            "A_n(mu) > A_n(tau)", {"A_tau": table[tau], "A_mu": table[mu]})
                for mu in pats:
                    if spine[tau] != spine[mu] and refinement_leq(spine[tau], spine[mu]):
                        r.check(table[tau] < table[mu], "refine-strict", {"tau": _p(tau), "mu": _p(mu), "n": n},
                                f"A_n(tau) < A_n(mu) since {spine[tau]} <_R {spine[mu]}",
                                {"A_tau": table[tau], "A_mu": table[mu]})


def suite_sandwich(r: Report, k_max: int, n_max: int, **_):
    for k in range(1, k_max + 1):
        for n in range(k, n_max + 1):
            table = popularity_table(k, n)
            low, high = table[increasing(k)], table[decreasing(k)]
            for tau in avoiders(k):
                r.check(low <= table[tau] <= high, "bona-sandwich", {"tau": _p(tau), "n": n},
                        "A_n(12..k) <= A_n(tau) <= A_n(k..1)", {"low": low, "A_tau": table[tau], "high": high})
    if k_max >= 3:
        for n in range(3, n_max + 1):
            table = popularity_table(3, n)
            vals = [table[(2, 1, 3)], table[(2, 3, 1)], table[(3, 1, 2)]]
            r.check(len(set(vals)) == 1, "bona-213-231-312", {"n": n}, "A_n(213) == A_n(231) == A_n(312)",
                    {"values": vals})


def suite_counterexample(r: Report, n_max: int, **_):
    tau, mu = (3, 2, 4, 1), (3, 4, 2, 1)
    s_tau, s_mu = permutation_spine_structure(tau), permutation_spine_structure(mu)
    r.check((s_tau, s_mu) == ((2, 2), (3, 1)), "spine-structures", {}, "<2,2> and <3,1>",
            {"tau": str(s_tau), "mu": str(s_mu)})
    r.check(not refinement_leq(s_tau, s_mu) and not refinement_leq(s_mu, s_tau), "incomparable", {},
            "refinement-incomparable", {})
    for n in range(4, n_max + 1):
        a, b = popularity(tau, n), popularity(mu, n)
        ra, rb = popularity_recurrence("3241", n), popularity_recurrence("3421", n)
        pa, pb = popularity_recurrence("3241", n, printed=True), popularity_recurrence("3421", n, printed=True)
        r.check(ra == a, "recurrence-3241", {"n": n}, "recurrence == brute force", {"brute": a, "recurrence": ra})
        r.check(rb == b, "recurrence-3421", {"n": n}, "recurrence == brute force", {"brute": b, "recurrence": rb})
        if n == 4:
            r.check(a == b == 1, "equality-at-4", {"n": 4}, "A_4(3241) == A_4(3421) == 1", {"A_3241": a, "A_3421": b})
        else:
            r.check(a < b, "strict-after-4", {"n": n}, "A_n(3241) < A_n(3421)", {"A_3241": a, "A_3421": b})
        r.observations.append({"n": n, "A_3241": a, "A_3421": b, "relation": "=" if a == b else ("<" if a < b else ">"),
                               "printed_3241": pa, "printed_3421": pb})


def suite_orders(r: Report, n_max: int, **_):
    for n in range(1, n_max + 1):
        parts = list(partitions(n))
        leq = {(a, b): refinement_leq(a, b) for a in parts for b in parts}
        for a in parts:
            r.check(leq[a, a], "reflexive", {"a": str(a)}, "a <=_R a", {})
        for a in parts:
            for b in parts:
                oracle = refinement_leq_oracle(a, b)
                r.check(leq[a, b] == oracle, "oracle", {"a": str(a), "b": str(b)}, f"oracle says {oracle}",
                        {"got": leq[a, b]})
                if a != b:
                    r.check(not (leq[a, b] and leq[b, a]), "antisymmetric", {"a": str(a), "b": str(b)},
                            "not both directions", {})
                lit, com = rl_compare(a, b, LITERAL), rl_compare(a, b, REFINEMENT_COMPATIBLE)
                flip = {"less": "greater", "greater": "less", "equal": "equal"}
                r.check((lit == "equal") == (a == b) and rl_compare(b, a, LITERAL) == flip[lit], "rl-total-literal",
                        {"a": str(a), "b": str(b)}, "total antisymmetric order", {"got": lit})
                r.check((com == "equal") == (a == b) and rl_compare(b, a) == flip[com], "rl-total-compatible",
                        {"a": str(a), "b": str(b)}, "total antisymmetric order", {"got": com})
                if leq[a, b]:
                    r.check(com != "greater", "rl-extends-refinement", {"a": str(a), "b": str(b)},
                            "a <=_R b implies a <=_RL b", {"got": com})
                    for c in parts:
                        if leq[b, c]:
                            r.check(leq[a, c], "transitive", {"a": str(a), "b": str(b), "c": str(c)},
                                    "a <=_R c", {})
        for a in parts:
            for b in parts:
                for c in parts:
                    x, y = rl_compare(a, b, LITERAL), rl_compare(b, c, LITERAL)
                    if x != "greater" and y != "greater":
                        r.check(rl_compare(a, c, LITERAL) != "greater", "rl-transitive", {"a": str(a), "b": str(b),
                                "c": str(c)}, "literal RL transitive", {})


def suite_rl_explore(r: Report, k: int, n_max: int, convention: str = REFINEMENT_COMPATIBLE, **_):
    """Record, for every pair with ``S(tau) <_RL S(mu)``, whether popularity follows."""
    pats = avoiders(k)
    spine = {t: permutation_spine_structure(t) for t in pats}
    tables = {n: popularity_table(k, n) for n in range(k, n_max + 1)}
    agree = disagree = 0
    for tau in pats:
        for mu in pats:
            if rl_compare(spine[tau], spine[mu], convention) != "less":
                continue
            r.checks_run += 1
            values = [(tables[n][tau], tables[n][mu]) for n in tables]
            le_all = all(x <= y for x, y in values)
            eq_at = [n for n, (x, y) in zip(tables, values) if x == y]
            agree += le_all
            disagree += not le_all
            r.observations.append({
                "tau": _p(tau), "mu": _p(mu), "spine_tau": str(spine[tau]), "spine_mu": str(spine[mu]),
                "le_all_n": le_all, "equal_at": eq_at, "equal_only_at_k": eq_at in ([], [k]),
                "refinement_comparable": refinement_leq(spine[tau], spine[mu]) or refinement_leq(spine[mu], spine[tau]),
            })
    r.observations.append({"summary": True, "pairs": agree + disagree, "consistent": agree, "inconsistent": disagree})


@dataclass(frozen=True)
class Suite:
    run: Callable
    defaults: dict
    observational: bool = False


SUITES: dict[str, Suite] = {
    "catalan": Suite(suite_catalan, {"n_max": 9}),
    "bijection": Suite(suite_bijection, {"n_max": 8}),
    "moves": Suite(suite_moves, {"n_max": 8}),
    "tree-rewrite": Suite(suite_tree_rewrite, {"n_max": 8}),
    "spine-merge": Suite(suite_spine_merge, {"n_max": 8}),
    "psi-injective": Suite(suite_psi_injective, {"k_max": 5, "n_max": 8}),
    "psi-witness": Suite(suite_psi_witness, {"k_max": 5, "n_max": 8}),
    "equipop": Suite(suite_equipop, {"k_max": 5, "n_max": 9}),
    "move-monotone": Suite(suite_move_monotone, {"k_max": 5, "n_max": 9}),
    "refine-monotone": Suite(suite_refine_monotone, {"k_max": 5, "n_max": 9}),
    "strict": Suite(suite_strict, {"k_max": 5, "n_max": 9}),
    "sandwich": Suite(suite_sandwich, {"k_max": 5, "n_max": 9}),
    "counterexample": Suite(suite_counterexample, {"n_max": 9}),
    "orders": Suite(suite_orders, {"n_max": 12}),
    "rl-explore": Suite(suite_rl_explore, {"k": 4, "n_max": 9, "convention": REFINEMENT_COMPATIBLE}, True),
}


def run_suite(name: str, budget: Budget | None = None, **params) -> Report:
    """Run a named suite; unknown or ``None`` params fall back to the suite defaults."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    suite = SUITES[name]
    merged = dict(suite.defaults)
    merged.update({key: val for key, val in params.items() if val is not None and key in suite.defaults})
    if "convention" in merged:
        merged["convention"] = merged["convention"].replace("-", "_")
        if merged["convention"] not in (LITERAL, REFINEMENT_COMPATIBLE):
            raise ValueError(f"unknown convention {merged['convention']!r}")
    b = budget or default_budget()
    if name == "orders":
        b.check_partition_n(merged["n_max"])
    else:
        b.check_n(merged["n_max"])
    for key in ("k_max", "k"):
        if key in merged:
            b.check_k(merged[key])
            if merged[key] > merged["n_max"] and key == "k":
                raise BudgetExceeded(f"k={merged[key]} exceeds n_max={merged['n_max']}")
    report = Report(name, merged)
    start = time.perf_counter()
    suite.run(report, **merged)
    report.elapsed = time.perf_counter() - start
    if suite.observational:
        report.verdict = OBSERVED
    else:
        report.verdict = FAIL if report.violations else PASS
    return report


def replay(violation: dict) -> bool:
    """Re-run a witness through the public operations; True when the
    discrepancy is reproduced."""
    kind, inp = violation["kind"], violation["inputs"]
    if kind == "nonimage-witness":
        site = find_site(parse_perm(inp["tau"]), inp["value"])
        return nonimage_witness(site, inp["n"]) is None
    if kind in ("move-monotone", "move-strict"):
        tau, mu = parse_perm(inp["tau"]), parse_perm(inp["mu"])
        a, b = popularity(tau, inp["n"]), popularity(mu, inp["n"])
        return not (b >= a if kind == "move-monotone" else b > a)
    if kind in ("refine-monotone", "refine-strict", "equipopular"):
        tau, mu = parse_perm(inp["tau"]), parse_perm(inp["mu"])
        a, b = popularity(tau, inp["n"]), popularity(mu, inp["n"])
        return {"refine-monotone": not a <= b, "refine-strict": not a < b, "equipopular": a != b}[kind]
    if kind in ("closure", "commuting-square"):
        sigma = parse_perm(inp["sigma"])
        if kind == "closure":
            return not is_132_avoiding(apply_move(sigma, inp["value"]))
        return tree_of_permutation(apply_move(sigma, inp["value"])) != tree_rewrite(tree_of_permutation(sigma), inp["value"])
    raise KeyError(f"no replay for violation kind {kind!r}")


# --- export ------------------------------------------------------------------

CSV_COLUMNS = ["suite", "params", "checks_run", "verdict", "kind", "inputs", "expected", "observed"]


def _compact(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def export_report(report: Report, fmt: str = "text", include_timing: bool = False) -> bytes:
    """Serialise a report as ``json``, ``csv`` or ``text``; byte-deterministic
    unless ``include_timing`` is set."""
    if fmt == "json":
        return (json.dumps(report.to_dict(include_timing), indent=2, sort_keys=True) + "\n").encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        head = [report.suite, _compact(report.params), report.checks_run, report.verdict]
        rows = [[v["kind"], _compact(v["inputs"]), v["expected"], _compact(v["observed"])] for v in report.violations]
        rows += [["observation", "", "", _compact(o)] for o in report.observations]
        for row in rows or [["", "", "", ""]]:
            w.writerow(head + row)
        return buf.getvalue().encode()
    if fmt == "text":
        lines = [f"suite: {report.suite}", "params: " + " ".join(f"{k}={v}" for k, v in sorted(report.params.items()))]
        for o in report.observations:
            lines.append("  " + " ".join(f"{k}={_fmt(v)}" for k, v in o.items()))
        for v in report.violations:
            lines.append(f"VIOLATION {v['kind']}: {_compact(v['inputs'])} expected {v['expected']}; "
                         f"observed {_compact(v['observed'])}")
        if include_timing:
            lines.append(f"elapsed: {report.elapsed:.3f}s")
        lines.append(f"{report.verdict} (checks={report.checks_run}, violations={len(report.violations)})")
        return ("\n".join(lines) + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}; expected json, csv or text")


def _fmt(v) -> str:
    if isinstance(v, list):
        return "[" + ",".join(map(str, v)) + "]"
    return str(v)


__all__ = ["Report", "SUITES", "run_suite", "export_report", "read_report", "replay", "REPORT_SCHEMA"]
