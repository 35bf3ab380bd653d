"""Permutations in one-line notation, 132-avoidance and occurrence counting.

A permutation is a plain ``tuple`` of the integers ``1..n``; the empty tuple
is the length-0 permutation.  Positions are 1-based wherever they cross the
public API (``Occurrence.positions``, :func:`pattern_of`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .budget import Budget, default_budget
from .errors import InvalidPermutation, InvalidPositions, NotAvoiding

Perm = tuple[int, ...]

_PAREN = re.compile(r"^\(\s*(\d+(\s*,\s*\d+)*)?\s*\)$")


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def validate(perm: Sequence[int]) -> Perm:
    """Return ``perm`` as a tuple, raising if it is not a bijection onto 1..n."""
    p = tuple(int(x) for x in perm)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise InvalidPermutation(f"{p} is not a permutation of 1..{len(p)}", perm=p)
    return p


def parse_perm(text: str) -> Perm:
    """Parse ``"53421"``, ``"(11,12,8)"`` or ``"e"``/``""`` (the empty permutation)."""
    s = text.strip()
    if s in ("", "e", "()", "ε"):
        return ()
    if s.isdigit():
        return validate(int(c) for c in s)
    m = _PAREN.match(s)
    if m is None:
        # bare comma form is accepted too
        if re.fullmatch(r"\d+(\s*,\s*\d+)+", s):
            return validate(int(x) for x in s.split(","))
        raise InvalidPermutation(f"cannot parse permutation {text!r}", text=text)
    return validate(int(x) for x in s.strip("()").split(",") if x.strip())


def format_perm(perm: Sequence[int]) -> str:
    """Digit string when every value is a single digit, else ``(a,b,...)``."""
    p = tuple(perm)
    if not p:
        return "e"
    if max(p) <= 9:
        return "".join(map(str, p))
    return "(" + ",".join(map(str, p)) + ")"


def flatten(values: Sequence[int]) -> Perm:
    """Replace each value by its rank among ``values`` (1-based)."""
    rank = {v: r for r, v in enumerate(sorted(values), 1)}
    return tuple(rank[v] for v in values)


def is_132_avoiding(perm: Sequence[int]) -> bool:
    # Scan right to left keeping the stack of candidates for the "2";
    # a 132 exists iff some entry is smaller than a popped "2".
    two = 0
    stack: list[int] = []
    for x in reversed(perm):
        if x < two:
            return False
        while stack and stack[-1] < x:
            two = stack.pop()
        stack.append(x)
    return True


def require_avoiding(perm: Sequence[int]) -> Perm:
    p = validate(perm)
    if not is_132_avoiding(p):
        raise NotAvoiding(f"{format_perm(p)} contains 132", perm=p)
    return p


@lru_cache(maxsize=None)
def _avoiders(n: int) -> tuple[Perm, ...]:
    return tuple(sorted(_build(1, n)))


@lru_cache(maxsize=None)
def _build(lo: int, hi: int) -> tuple[Perm, ...]:
    """All 132-avoiding arrangements of the values lo..hi."""
    if lo > hi:
        return ((),)
    out = []
    size = hi - lo + 1
    # the maximum sits after `a` entries, which are the a largest remaining values
    for a in range(size):
        for left in _build(hi - a, hi - 1):
            for right in _build(lo, hi - a - 1):
                out.append(left + (hi,) + right)
    return tuple(out)


def enumerate_avoiders(n: int, budget: Budget | None = None) -> Iterator[Perm]:
    """Yield S_n(132) in ascending lexicographic order."""
    (budget or default_budget()).check_n(n)
    yield from _avoiders(n)


def avoiders(n: int, budget: Budget | None = None) -> tuple[Perm, ...]:
    """Materialised :func:`enumerate_avoiders` (cached per ``n``)."""
    (budget or default_budget()).check_n(n)
    return _avoiders(n)


def _bounds(pattern: Perm) -> tuple[list[int], list[int]]:
    # for each pattern slot t, the earlier slot holding the next-smaller and
    # next-larger value (-1 when absent); matching only needs these two checks
    lo, hi = [], []
    for t, x in enumerate(pattern):
        below = [s for s in range(t) if pattern[s] < x]
        above = [s for s in range(t) if pattern[s] > x]
        lo.append(max(below, key=pattern.__getitem__) if below else -1)
        hi.append(min(above, key=pattern.__getitem__) if above else -1)
    return lo, hi


def _match(perm: Perm, pattern: Perm) -> Iterator[tuple[int, ...]]:
    n, k = len(perm), len(pattern)
    if k == 0:
        yield ()
        return
    if k > n:
        return
    lo, hi = _bounds(pattern)
    chosen = [0] * k
    idx = [0] * k

    def rec(t: int, start: int):
        last = n - (k - t)
        for p in range(start, last + 1):
            v = perm[p]
            if lo[t] >= 0 and v < chosen[lo[t]]:
                continue
            if hi[t] >= 0 and v > chosen[hi[t]]:
                continue
            chosen[t] = v
            idx[t] = p
            if t + 1 == k:
                yield tuple(idx)
            else:
                yield from rec(t + 1, p + 1)

    yield from rec(0, 0)


def count_occurrences(perm: Sequence[int], pattern: Sequence[int]) -> int:
    """Number of index sets of ``perm`` whose flattening is ``pattern``.

    The empty pattern occurs exactly once; a pattern longer than the host
    occurs zero times.
    """
    return sum(1 for _ in _match(validate(perm), validate(pattern)))


@dataclass(frozen=True)
class Occurrence:
    """An occurrence of a pattern: a host plus 1-based increasing positions."""

    host: Perm
    positions: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "host", validate(self.host))
        object.__setattr__(self, "positions", _check_positions(self.host, self.positions))

    @classmethod
    def from_values(cls, host: Sequence[int], values: Sequence[int]) -> "Occurrence":
        """Build from the occurrence's values; they must appear in host order."""
        host = validate(host)
        where = {v: i for i, v in enumerate(host, 1)}
        try:
            pos = tuple(where[v] for v in values)
        except KeyError as exc:
            raise InvalidPositions(f"value {exc.args[0]} not in host", host=host, values=tuple(values)) from None
        return cls(host, pos)

    @property
    def values(self) -> tuple[int, ...]:
        return tuple(self.host[p - 1] for p in self.positions)

    @property
    def pattern(self) -> Perm:
        return flatten(self.values)

    def __str__(self) -> str:
        return f"sigma={format_perm(self.host)} values=({','.join(map(str, self.values))})"


def parse_occurrence(text: str) -> Occurrence:
    """Inverse of ``str(Occurrence)``: ``"sigma=53421 values=(5,3,2)"``."""
    m = re.fullmatch(r"\s*sigma=(\S+)\s+values=\(([\d,\s]*)\)\s*", text)
    if m is None:
        raise InvalidPositions(f"cannot parse occurrence {text!r}", text=text)
    values = [int(x) for x in m.group(2).split(",") if x.strip()]
    return Occurrence.from_values(parse_perm(m.group(1)), values)


def _check_positions(host: Perm, positions: Sequence[int]) -> tuple[int, ...]:
    pos = tuple(int(p) for p in positions)
    for a, b in zip(pos, pos[1:]):
        if a >= b:
            raise InvalidPositions(f"positions {pos} are not strictly increasing", positions=pos)
    if pos and (pos[0] < 1 or pos[-1] > len(host)):
        raise InvalidPositions(f"positions {pos} out of range 1..{len(host)}", positions=pos)
    return pos


def list_occurrences(perm: Sequence[int], pattern: Sequence[int]) -> list[Occurrence]:
    """All occurrences of ``pattern`` in ``perm``, lexicographic in positions."""
    p, t = validate(perm), validate(pattern)
    return [Occurrence(p, tuple(i + 1 for i in idx)) for idx in _match(p, t)]


def pattern_of(perm: Sequence[int], positions: Sequence[int]) -> Perm:
    """Flatten the subsequence of ``perm`` at the given 1-based positions."""
    p = validate(perm)
    pos = _check_positions(p, positions)
    return flatten([p[i - 1] for i in pos])


def direct_sum(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a ⊕ b``: ``b`` placed after ``a`` and shifted above it."""
    a, b = validate(a), validate(b)
    return a + tuple(x + len(a) for x in b)


def skew_sum(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a ⊖ b``: ``b`` placed after ``a``, with ``a`` shifted above it."""
    a, b = validate(a), validate(b)
    return tuple(x + len(b) for x in a) + b


def decreasing(n: int) -> Perm:
    return tuple(range(n, 0, -1))


def increasing(n: int) -> Perm:
    return tuple(range(1, n + 1))


def pattern_profile(perm: Perm, k: int) -> dict[Perm, int]:
    """Counts of every length-``k`` pattern in ``perm``, by brute force over index sets."""
    counts: dict[Perm, int] = {}
    for idx in combinations(perm, k):
        pat = flatten(idx)
        counts[pat] = counts.get(pat, 0) + 1
    return counts
