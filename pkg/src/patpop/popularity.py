"""Pattern popularity ``A_n(τ)`` over S_n(132).

Two brute-force routes are kept deliberately separate: :func:`popularity`
sums the pruned matcher over every host, while :func:`popularity_table`
tallies every index set of every host at once.  The recurrences for 3241 and
3421 are a third, recursive route.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .budget import Budget, default_budget
from .errors import BudgetExceeded
from .perm import (
    Perm,
    avoiders,
    catalan,
    count_occurrences,
    format_perm,
    list_occurrences,
    pattern_profile,
    require_avoiding,
)
from .trees import SpineStructure, permutation_spine_structure

_cache: dict[tuple[Perm, int], int] = {}
_tables: dict[tuple[int, int], dict[Perm, int]] = {}


def clear_cache() -> None:
    _cache.clear()
    _tables.clear()


def _check(pattern: Sequence[int], n: int, budget: Budget | None) -> tuple[Perm, Budget]:
    tau = require_avoiding(pattern)
    b = budget or default_budget()
    b.check_n(n)
    b.check_k(len(tau))
    if len(tau) <= n:
        b.check_cells(n, len(tau))
    return tau, b


def popularity(pattern: Sequence[int], n: int, budget: Budget | None = None,
               empty_convention: bool = False) -> int:
    """Total number of occurrences of ``pattern`` over all of S_n(132).

    For the empty pattern every host contributes one occurrence, so the sum
    is the Catalan number; ``empty_convention=True`` returns 1 instead.
    """
    tau, b = _check(pattern, n, budget)
    if not tau and empty_convention:
        return 1
    if len(tau) > n:
        return 0
    key = (tau, n)
    if key not in _cache:
        _cache[key] = sum(count_occurrences(sigma, tau) for sigma in avoiders(n, b))
    return _cache[key]


def popularity_table(k: int, n: int, budget: Budget | None = None) -> dict[Perm, int]:
    """``{τ: A_n(τ)}`` for every τ in S_k(132), from one pass over S_n(132)."""
    b = budget or default_budget()
    b.check_n(n)
    b.check_k(k)
    if k > n:
        return {tau: 0 for tau in avoiders(k, b)}
    b.check_cells(n, k)
    key = (k, n)
    if key not in _tables:
        totals = {tau: 0 for tau in avoiders(k, b)}
        for sigma in avoiders(n, b):
            for pat, c in pattern_profile(sigma, k).items():
                totals[pat] += c
        _tables[key] = totals
    return dict(_tables[key])


def popularity_split(pattern: Sequence[int], n: int, budget: Budget | None = None) -> tuple[int, int]:
    """``(with_n, without_n)``: occurrences that use the value ``n`` and those that do not."""
    tau, b = _check(pattern, n, budget)
    with_n = without_n = 0
    if len(tau) > n:
        return 0, 0
    for sigma in avoiders(n, b):
        for occ in list_occurrences(sigma, tau):
            if n in occ.values:
                with_n += 1
            else:
                without_n += 1
    return with_n, without_n


# Flattened prefixes used by the two recurrences: "324" stands for the
# pattern its letters form, and so on.
SUBPATTERNS = {
    "3241": {"324": (2, 1, 3), "32": (2, 1), "1": (1,)},
    "3421": {"342": (2, 3, 1), "34": (1, 2), "3": (1,), "21": (2, 1), "1": (1,)},
}

RECURRENCE_PATTERNS = {"3241": (3, 2, 4, 1), "3421": (3, 4, 2, 1)}

_rec_cache: dict[tuple[str, int, bool], int] = {}


def popularity_recurrence(which: str, n: int, budget: Budget | None = None, printed: bool = False) -> int:
    """``A_n(3241)`` or ``A_n(3421)`` by splitting each host around its maximum.

    Terms, with ``i`` the size of the block holding the relevant part:

    * the whole occurrence left of ``n`` and, symmetrically, right of ``n``;
    * ``n`` between the last two letters (324|1, resp. 342|1);
    * for 3421 only, ``n`` between the "4" and the "2" (34|21);
    * ``n`` playing the "4".

    ``printed=True`` drops the "right of ``n``" term and evaluates the
    remaining sums with brute-force values, which undercounts for ``n >= 5``.
    """
    if which not in RECURRENCE_PATTERNS:
        raise ValueError(f"unknown recurrence {which!r}; expected one of {sorted(RECURRENCE_PATTERNS)}")
    if n < 4:
        raise ValueError(f"recurrence needs n >= 4, got {n}")
    b = budget or default_budget()
    b.check_n(n)
    key = (which, n, printed)
    if key in _rec_cache:
        return _rec_cache[key]
    sub = SUBPATTERNS[which]
    tau = RECURRENCE_PATTERNS[which]

    def A(pat, i):
        return popularity(pat, i, b)

    def self_term(i):
        return A(tau, i) if printed else popularity_recurrence(which, i, b)

    whole = sum(self_term(i) * catalan(n - 1 - i) for i in range(4, n))
    total = whole if printed else 2 * whole
    if which == "3241":
        total += sum(A(sub["324"], i) * A(sub["1"], n - 1 - i) for i in range(3, n - 1))
        total += sum(A(sub["32"], i) * A(sub["1"], n - 1 - i) for i in range(2, n - 1))
    else:
        total += sum(A(sub["342"], i) * A(sub["1"], n - 1 - i) for i in range(3, n - 1))
        total += sum(A(sub["34"], i) * A(sub["21"], n - 1 - i) for i in range(2, n - 2))
        total += sum(A(sub["3"], i) * A(sub["21"], n - 1 - i) for i in range(1, n - 2))
    _rec_cache[key] = total
    return total


@dataclass
class EquipopClass:
    value: int
    patterns: list[Perm]
    spines: list[SpineStructure]


def equipopularity_classes(k: int, n: int, budget: Budget | None = None) -> list[EquipopClass]:
    """Group S_k(132) by ``A_n``, smallest value first."""
    if k > n:
        raise BudgetExceeded(f"pattern length k={k} exceeds host length n={n}", k=k, n=n)
    table = popularity_table(k, n, budget)
    groups: dict[int, list[Perm]] = {}
    for tau in sorted(table):
        groups.setdefault(table[tau], []).append(tau)
    return [
        EquipopClass(value, pats, sorted({permutation_spine_structure(t) for t in pats}, reverse=True))
        for value, pats in sorted(groups.items())
    ]


@dataclass
class PopularityTable:
    rows: list[tuple[Perm, int, int, str]] = field(default_factory=list)

    def add(self, pattern: Sequence[int], n: int, value: int, method: str) -> None:
        if method not in ("brute", "recurrence"):
            raise ValueError(f"unknown method {method!r}")
        if value < 0:
            raise ValueError("popularity values are nonnegative")
        row = (tuple(pattern), n, value, method)
        if any(r[:2] == row[:2] and r[3] == method for r in self.rows):
            raise ValueError(f"duplicate row for {format_perm(pattern)}, n={n}, {method}")
        self.rows.append(row)

    def sorted_rows(self) -> list[tuple[Perm, int, int, str]]:
        return sorted(self.rows, key=lambda r: (r[0], r[1], r[3]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["pattern", "n", "value", "method"])
        for pat, n, value, method in self.sorted_rows():
            writer.writerow([format_perm(pat), n, value, method])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [
            {"pattern": format_perm(p), "n": n, "value": v, "method": m}
            for p, n, v, m in self.sorted_rows()
        ]
        return json.dumps({"rows": rows}, indent=2, sort_keys=True) + "\n"


def build_table(patterns: Iterable[Sequence[int]], ns: Iterable[int], methods: Sequence[str] = ("brute",),
                budget: Budget | None = None) -> PopularityTable:
    table = PopularityTable()
    ns = list(ns)
    for pat in patterns:
        tau = require_avoiding(pat)
        for n in ns:
            for method in methods:
                if method == "recurrence":
                    name = format_perm(tau)
                    if name not in RECURRENCE_PATTERNS:
                        raise ValueError(f"no recurrence for {name}")
                    value = popularity_recurrence(name, n, budget)
                else:
                    value = popularity(tau, n, budget)
                table.add(tau, n, value, method)
    return table
