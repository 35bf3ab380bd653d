"""Orders on spine structures (integer partitions of ``n``).

``a ≤_R b`` means ``b`` arises from ``a`` by merging groups of parts, so the
all-ones partition is the bottom and ``<n>`` the top.  The reverse
lexicographic order comes in two directions, see :func:`rl_compare`.
"""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterator, Sequence

from .budget import Budget, default_budget
from .errors import InvalidPartition
from .trees import SpineStructure

LITERAL = "literal"
REFINEMENT_COMPATIBLE = "refinement_compatible"


def _as_partition(x) -> SpineStructure:
    return x if isinstance(x, SpineStructure) else SpineStructure(x)


def _same_total(a: SpineStructure, b: SpineStructure) -> None:
    if sum(a) != sum(b):
        raise InvalidPartition(f"{a} and {b} have different totals", a=tuple(a), b=tuple(b))


def partitions(n: int) -> Iterator[SpineStructure]:
    """Partitions of ``n`` from ``<n>`` down to ``<1,...,1>``."""

    def rec(rest: int, cap: int):
        if rest == 0:
            yield ()
            return
        for x in range(min(rest, cap), 0, -1):
            for tail in rec(rest - x, x):
                yield (x,) + tail

    for p in rec(n, n):
        yield SpineStructure(p)


def refinement_leq(a: Sequence[int], b: Sequence[int]) -> bool:
    """True iff the parts of ``a`` can be grouped so the group sums are the parts of ``b``."""
    a, b = _as_partition(a), _as_partition(b)
    _same_total(a, b)
    if len(a) < len(b):
        return False
    bins = list(b)

    def place(t: int) -> bool:
        if t == len(a):
            return True
        x = a[t]
        tried = set()
        for slot, room in enumerate(bins):
            # bins with equal remaining room are interchangeable
            if room < x or room in tried:
                continue
            tried.add(room)
            bins[slot] -= x
            if place(t + 1):
                return True
            bins[slot] += x
        return False

    return place(0)


def refinement_geq(a: Sequence[int], b: Sequence[int]) -> bool:
    return refinement_leq(b, a)


@lru_cache(maxsize=None)
def coarsenings(parts: tuple[int, ...]) -> frozenset:
    """Every partition obtained by splitting the multiset ``parts`` into
    blocks and summing each block (set partitions up to equal parts)."""
    if not parts:
        return frozenset({()})
    first, rest = parts[0], parts[1:]
    out = set()
    for chosen in _sub_multisets(rest):
        remaining = list(rest)
        for x in chosen:
            remaining.remove(x)
        block = first + sum(chosen)
        for tail in coarsenings(tuple(remaining)):
            out.add(tuple(sorted((block,) + tail, reverse=True)))
    return frozenset(out)


def _sub_multisets(parts: tuple[int, ...]) -> set[tuple[int, ...]]:
    subs = {()}
    for x in parts:
        subs |= {tuple(sorted(s + (x,), reverse=True)) for s in subs}
    return subs


def refinement_leq_oracle(a: Sequence[int], b: Sequence[int]) -> bool:
    """Independent check of :func:`refinement_leq` by listing all coarsenings of ``a``."""
    a, b = _as_partition(a), _as_partition(b)
    _same_total(a, b)
    return tuple(b) in coarsenings(tuple(a))


def merge_parts(a: Sequence[int], groups: Sequence[Sequence[int]]) -> SpineStructure:
    """Sum the parts of ``a`` over ``groups`` (1-based part indices partitioning ``1..len(a)``)."""
    a = _as_partition(a)
    flat = sorted(i for g in groups for i in g)
    if flat != list(range(1, len(a) + 1)) or any(len(g) == 0 for g in groups):
        raise InvalidPartition(f"groups {groups} do not partition the indices 1..{len(a)}", groups=groups)
    return SpineStructure(sum(a[i - 1] for i in g) for g in groups)


def rl_compare(a: Sequence[int], b: Sequence[int], convention: str = REFINEMENT_COMPATIBLE) -> str:
    """Compare by the first differing part: ``"less"``, ``"equal"`` or ``"greater"``.

    Under ``literal`` the partition with the *larger* first differing part is
    the smaller one, so ``<n>`` is the minimum.  ``refinement_compatible``
    flips that, making the order a linear extension of ``≤_R``.
    """
    a, b = _as_partition(a), _as_partition(b)
    _same_total(a, b)
    convention = convention.replace("-", "_")
    if convention not in (LITERAL, REFINEMENT_COMPATIBLE):
        raise ValueError(f"unknown convention {convention!r}")
    for x, y in zip(a, b):
        if x != y:
            a_smaller = x > y if convention == LITERAL else x < y
            return "less" if a_smaller else "greater"
    return "equal"


def rl_leq(a: Sequence[int], b: Sequence[int], convention: str = REFINEMENT_COMPATIBLE) -> bool:
    return rl_compare(a, b, convention) != "greater"


def hasse_edges(n: int, budget: Budget | None = None) -> list[tuple[SpineStructure, SpineStructure]]:
    """Covering pairs ``(finer, coarser)`` of ``≤_R`` on partitions of ``n``.

    A cover is exactly one merge of two parts.
    """
    (budget or default_budget()).check_partition_n(n)
    if n < 1:
        raise InvalidPartition(f"need n >= 1, got {n}")
    edges = set()
    for p in partitions(n):
        for x in range(len(p)):
            for y in range(x + 1, len(p)):
                rest = [q for t, q in enumerate(p) if t not in (x, y)]
                edges.add((p, SpineStructure(rest + [p[x] + p[y]])))
    return sorted(edges, key=lambda e: (len(e[0]), tuple(e[0]), tuple(e[1])), reverse=True)


def hasse_json(n: int, budget: Budget | None = None) -> str:
    nodes = [str(p) for p in partitions(n)]
    edges = [[str(a), str(b)] for a, b in hasse_edges(n, budget)]
    return json.dumps({"n": n, "nodes": nodes, "edges": edges}, indent=2) + "\n"


def hasse_dot(n: int, budget: Budget | None = None) -> str:
    lines = [f"digraph refinement_{n} {{", "  rankdir=BT;"]
    for p in partitions(n):
        lines.append(f'  "{p}";')
    for a, b in hasse_edges(n, budget):
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
