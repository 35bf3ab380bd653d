"""Command-line entry point: ``patpop <subcommand> ...``.

Exit status: 0 on success or PASS, 1 when a suite finds a violation, 2 for
usage, input or budget errors (with a one-line message on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import moves, orders, perm, trees, verify
from .popularity import (
    RECURRENCE_PATTERNS,
    build_table,
    popularity,
    popularity_recurrence,
    popularity_split,
)
from .budget import Budget, default_budget, set_default_budget
from .errors import PatpopError


def _perm(text: str):
    try:
        return perm.parse_perm(text)
    except PatpopError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _values(text: str) -> list[int]:
    s = text.strip().strip("()")
    if s.isdigit() and "," not in s:
        return [int(c) for c in s]
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse values {text!r}") from None


def _partition(text: str):
    try:
        return trees.parse_partition(text)
    except PatpopError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str | bytes) -> None:
    if isinstance(text, bytes):
        text = text.decode()
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_enumerate(args) -> int:
    perms = perm.avoiders(args.n)
    if args.format == "json":
        _emit(json.dumps([perm.format_perm(p) for p in perms]))
    else:
        _emit("\n".join(perm.format_perm(p) for p in perms) if perms else "")
    return 0


def cmd_count(args) -> int:
    if args.list:
        for occ in perm.list_occurrences(args.sigma, args.tau):
            _emit(f"{occ}  positions=({','.join(map(str, occ.positions))})")
    else:
        _emit(str(perm.count_occurrences(args.sigma, args.tau)))
    return 0


def cmd_popularity(args) -> int:
    tau = args.tau
    ns = [args.n] if args.n_max is None else list(range(max(len(tau), args.n or 0), args.n_max + 1))
    if args.method == "split":
        for n in ns:
            with_n, without_n = popularity_split(tau, n)
            _emit(f"n={n} with_n={with_n} without_n={without_n} total={with_n + without_n}")
        return 0
    if args.method == "recurrence":
        name = perm.format_perm(tau)
        if name not in RECURRENCE_PATTERNS:
            raise PatpopError(f"no recurrence for {name}; available: 3241, 3421")
    if args.format == "text" and len(ns) == 1:
        n = ns[0]
        if args.method == "recurrence":
            _emit(str(popularity_recurrence(perm.format_perm(tau), n)))
        else:
            _emit(str(popularity(tau, n, empty_convention=args.empty_convention)))
        return 0
    table = build_table([tau], ns, (args.method,))
    if args.format == "json":
        _emit(table.to_json())
    elif args.format == "csv":
        _emit(table.to_csv())
    else:
        _emit("\n".join(f"n={n} {v}" for _, n, v, _ in table.sorted_rows()))
    return 0


def cmd_tree(args) -> int:
    t = trees.tree_of_permutation(args.sigma)
    if args.format == "json":
        _emit(trees.to_json(t))
    elif args.format == "dot":
        _emit(trees.to_dot(t))
    else:
        _emit(trees.render_text(t))
    return 0


def cmd_spine(args) -> int:
    t = trees.tree_of_permutation(args.sigma)
    _emit(str(trees.spine_structure(t)))
    return 0


def _site_dict(s: moves.MoveSite) -> dict:
    return {"value": s.value, "i": s.i, "j": s.j, "L": sorted(s.left), "M": sorted(s.middle), "R": sorted(s.right)}


def cmd_move(args) -> int:
    if args.value is None:
        sites = moves.move_candidates(args.sigma)
        if args.format == "json":
            _emit(json.dumps([_site_dict(s) for s in sites]))
        else:
            for s in sites:
                d = _site_dict(s)
                _emit(f"value={s.value} i={s.i} j={s.j} L={d['L']} M={d['M']} R={d['R']} "
                      f"-> {perm.format_perm(moves.apply_move(args.sigma, s.value))}")
        return 0
    result = moves.apply_move(args.sigma, args.value)
    if args.format == "json":
        site = moves.find_site(args.sigma, args.value)
        _emit(json.dumps({"result": perm.format_perm(result), "site": _site_dict(site)}))
    else:
        _emit(perm.format_perm(result))
    return 0


def cmd_psi(args) -> int:
    occ = perm.Occurrence.from_values(args.sigma, args.values)
    if args.inverse:
        if args.tau is None:
            raise PatpopError("--inverse needs --tau (the pattern before the move)")
        tau = args.tau
    else:
        tau = occ.pattern
    site = moves.find_site(tau, len(tau))
    out = moves.psi_inverse(occ, site) if args.inverse else moves.psi(occ, site)
    _emit(str(out))
    return 0


def cmd_order(args) -> int:
    if args.hasse is not None:
        _emit(orders.hasse_json(args.hasse) if args.format == "json" else orders.hasse_dot(args.hasse))
        return 0
    if args.a is None or args.b is None:
        raise PatpopError("order needs --a and --b, or --hasse N")
    a, b = args.a, args.b
    leq, geq = orders.refinement_leq(a, b), orders.refinement_leq(b, a)
    rel = "equal" if leq and geq else "less" if leq else "greater" if geq else "incomparable"
    rl = orders.rl_compare(a, b, args.convention)
    if args.format == "json":
        _emit(json.dumps({"a": str(a), "b": str(b), "refinement": rel, "rl": rl, "convention": args.convention}))
    else:
        _emit(f"{a} vs {b}: refinement={rel} rl[{args.convention}]={rl}")
    return 0


def _report(report: verify.Report, fmt: str) -> int:
    _emit(verify.export_report(report, fmt))
    return 1 if report.verdict == verify.FAIL else 0


def cmd_verify(args) -> int:
    report = verify.run_suite(args.suite, k_max=args.k_max, n_max=args.n_max, convention=args.convention)
    return _report(report, args.format)


def cmd_counterexample(args) -> int:
    return _report(verify.run_suite("counterexample", n_max=args.n_max), args.format)


def cmd_rl_explore(args) -> int:
    return _report(verify.run_suite("rl-explore", k=args.k, n_max=args.n_max, convention=args.convention), args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-n", type=int, help="largest host length allowed")
    common.add_argument("--budget-k", type=int, help="largest pattern length allowed")
    common.add_argument("--budget-cells", type=int, help="cap on host x index-set pairs per popularity call")

    parser = argparse.ArgumentParser(prog="patpop", description="Pattern popularity in 132-avoiding permutations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("enumerate", cmd_enumerate, "list S_n(132) in lexicographic order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("count", cmd_count, "count occurrences of a pattern")
    p.add_argument("--sigma", type=_perm, required=True)
    p.add_argument("--tau", type=_perm, required=True)
    p.add_argument("--list", action="store_true", help="list the occurrences instead")

    p = add("popularity", cmd_popularity, "A_n(tau)")
    p.add_argument("--tau", type=_perm, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--n-max", type=int, help="tabulate for n = |tau|..n_max")
    p.add_argument("--method", choices=["brute", "recurrence", "split"], default="brute")
    p.add_argument("--empty-convention", action="store_true", help="A_n(empty) = 1 instead of C_n")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("tree", cmd_tree, "the binary tree T(sigma)")
    p.add_argument("--sigma", type=_perm, required=True)
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")

    p = add("spine", cmd_spine, "spine structure of T(sigma)")
    p.add_argument("--sigma", type=_perm, required=True)

    p = add("move", cmd_move, "apply a move, or list the move sites")
    p.add_argument("--sigma", type=_perm, required=True)
    p.add_argument("--value", type=int)
    p.add_argument("--format", choices=["text", "json"], default="text")

    p = add("psi", cmd_psi, "map an occurrence through psi or its inverse")
    p.add_argument("--sigma", type=_perm, required=True)
    p.add_argument("--values", type=_values, required=True, help="occurrence values in host order, e.g. (12,7,9)")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--tau", type=_perm, help="pattern before the move (needed with --inverse)")

    p = add("order", cmd_order, "compare spine structures or print a Hasse diagram")
    p.add_argument("--a", type=_partition)
    p.add_argument("--b", type=_partition)
    p.add_argument("--hasse", type=int, metavar="N")
    p.add_argument("--convention", choices=["literal", "refinement-compatible"], default="refinement-compatible")
    p.add_argument("--format", choices=["text", "json", "dot"], default="text")

    p = add("verify", cmd_verify, "run a verification suite")
    p.add_argument("--suite", choices=sorted(verify.SUITES), required=True)
    p.add_argument("--k-max", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--convention", choices=["literal", "refinement-compatible"])
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("counterexample", cmd_counterexample, "A_n(3241) vs A_n(3421)")
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")

    p = add("rl-explore", cmd_rl_explore, "reverse-lexicographic order vs popularity")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n-max", type=int, default=9)
    p.add_argument("--convention", choices=["literal", "refinement-compatible"], default="refinement-compatible")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    previous = default_budget()
    try:
        overrides = {k: v for k, v in (("n_max", args.budget_n), ("k_max", args.budget_k),
                                       ("cells", args.budget_cells)) if v is not None}
        if overrides:
            set_default_budget(Budget(**{**previous.__dict__, **overrides}))
        return args.func(args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"patpop: error: {msg}", file=sys.stderr)
        return 2
    finally:
        set_default_budget(previous)


if __name__ == "__main__":
    sys.exit(main())
