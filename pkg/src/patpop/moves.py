"""The popularity-increasing move and the constructions built on it.

For σ ∈ S_n(132) a move at value ``v`` takes ``v`` out of σ and reinserts it
immediately before ``v - 1``.  It is defined when ``v - 1`` sits to the left
of ``v``, every entry before ``v - 1`` exceeds ``v`` and every entry between
them is below ``v - 1``.  Moves are addressed by the moved value.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .budget import Budget
from .errors import IneligiblePattern, InvalidPartition, NoMove, NotInDomain, NotInImage, NotRealizable
from .perm import (
    Occurrence,
    Perm,
    avoiders,
    direct_sum,
    flatten,
    format_perm,
    is_132_avoiding,
    list_occurrences,
    require_avoiding,
    skew_sum,
)
from .trees import (
    Node,
    SpineStructure,
    chain_shape,
    label_shape,
    left_justified_shape,
    permutation_of_tree,
    spines,
    tree_of_permutation,
)


@dataclass(frozen=True)
class MoveSite:
    """Anatomy of a move: ``σ = L σ_i M σ_j R`` with ``σ_j = value``.

    ``i`` and ``j`` are 1-based positions; ``left``, ``middle`` and ``right``
    are the value sets of the three blocks.
    """

    perm: Perm
    value: int
    i: int
    j: int
    left: frozenset
    middle: frozenset
    right: frozenset

    @property
    def lower(self) -> int:
        return self.value - 1

    def holds(self) -> bool:
        """Re-check the defining conditions from scratch."""
        v, lo = self.value, self.lower
        return (
            self.i < self.j
            and self.perm[self.i - 1] == lo
            and self.perm[self.j - 1] == v
            and all(x > v for x in self.left)
            and all(x < lo for x in self.middle)
            and all(x < min(self.middle | {lo}) or x > v for x in self.right)
        )


def find_site(perm: Sequence[int], value: int) -> MoveSite:
    """The move site at ``value``, or :class:`NoMove` naming the failed condition."""
    p = require_avoiding(perm)
    n = len(p)
    if not 2 <= value <= n:
        raise NoMove(f"no move at {value} in {format_perm(p)}: value out of 2..{n}",
                     perm=p, value=value, condition="value-range", position=None)
    i = p.index(value - 1) + 1
    j = p.index(value) + 1
    if i > j:
        raise NoMove(f"no move at {value} in {format_perm(p)}: {value - 1} is right of {value}",
                     perm=p, value=value, condition="order", position=i)
    for a in range(1, i):
        if p[a - 1] < value:
            raise NoMove(f"no move at {value} in {format_perm(p)}: left entry {p[a - 1]} below {value}",
                         perm=p, value=value, condition="left-greater", position=a)
    for b in range(i + 1, j):
        if p[b - 1] > value - 1:
            raise NoMove(f"no move at {value} in {format_perm(p)}: middle entry {p[b - 1]} above {value - 1}",
                         perm=p, value=value, condition="middle-smaller", position=b)
    return MoveSite(p, value, i, j, frozenset(p[:i - 1]), frozenset(p[i:j - 1]), frozenset(p[j:]))


decompose_lmr = find_site


def has_move(perm: Sequence[int], value: int) -> bool:
    try:
        find_site(perm, value)
    except NoMove:
        return False
    return True


def move_candidates(perm: Sequence[int]) -> list[MoveSite]:
    """Every move site of ``perm``, by ascending value."""
    p = require_avoiding(perm)
    sites = []
    for v in range(2, len(p) + 1):
        try:
            sites.append(find_site(p, v))
        except NoMove:
            pass
    return sites


def apply_move(perm: Sequence[int], value: int) -> Perm:
    s = find_site(perm, value)
    p = s.perm
    return p[:s.i - 1] + (value,) + p[s.i - 1:s.j - 1] + p[s.j:]


def _attach_rightmost(tree: Node | None, sub: Node | None) -> Node | None:
    if tree is None:
        return sub
    return Node(tree.label, tree.left, _attach_rightmost(tree.right, sub))


def _replace(tree: Node | None, label: int, new: Node) -> Node | None:
    if tree is None:
        return None
    if tree.label == label:
        return new
    return Node(tree.label, _replace(tree.left, label, new), _replace(tree.right, label, new))


def tree_rewrite(tree: Node, value: int) -> Node:
    """Apply the move at ``value`` directly on the tree.

    The vertex ``value - 1`` is detached from its place as left child of
    ``value`` and becomes its right child; the old right subtree of
    ``value - 1`` stays under it and the old right subtree of ``value`` is
    hung at the bottom of that subtree's right chain.
    """
    find_site(permutation_of_tree(tree), value)
    top = tree.find(value)
    lower = top.left
    if lower is None or lower.label != value - 1 or lower.left is not None:
        raise NoMove(f"vertex {value - 1} is not a leftless left child of {value}",
                     value=value, condition="tree-shape", position=None)
    middle = _attach_rightmost(lower.right, top.right)
    return _replace(tree, value, Node(value, None, Node(value - 1, None, middle)))


# --- the occurrence map ------------------------------------------------------

def check_eligible(site: MoveSite) -> None:
    """The host maximum can play the moved entry only when ``L`` is empty and
    ``R`` lies below ``M ∪ {σ_i}``."""
    if site.left:
        raise IneligiblePattern(f"{format_perm(site.perm)} has nonempty L at {site.value}",
                                pattern=site.perm, value=site.value, condition="left-empty")
    floor = min(site.middle | {site.lower})
    if any(x > floor for x in site.right):
        raise IneligiblePattern(f"{format_perm(site.perm)} has R above M at {site.value}",
                                pattern=site.perm, value=site.value, condition="right-below")


def _first_split(perm: Perm, must_include: Sequence[int], must_exclude: Sequence[int],
                 ignore: int | None, upto: int) -> int | None:
    """Least ``a`` in ``1..upto`` such that the positions in ``must_include``
    are ``<= a``, those in ``must_exclude`` are ``> a`` and every entry up to
    ``a`` beats every later entry (skipping ``ignore``)."""
    lo = max(must_include, default=0)
    hi = min(must_exclude, default=len(perm) + 1)
    for a in range(max(lo, 1), min(upto, hi - 1) + 1):
        later = [x for x in perm[a:] if x != ignore]
        if not later or min(perm[:a]) > max(later):
            return a
    return None


def psi(occ: Occurrence, site: MoveSite) -> Occurrence:
    """Map an occurrence of τ whose entry ``τ_j`` is the host maximum to an
    occurrence of ``μ = τ^{τ_j}`` starting with the host maximum.

    ``site`` is the move site of the pattern τ (not of the host).
    """
    tau, j = site.perm, site.j
    if occ.pattern != tau:
        raise NotInDomain(f"occurrence has pattern {format_perm(occ.pattern)}, expected {format_perm(tau)}",
                          occurrence=str(occ))
    check_eligible(site)
    sigma = occ.host
    n = len(sigma)
    if occ.values[j - 1] != n:
        raise NotInDomain(f"{n} does not occur as entry {j} of the pattern", occurrence=str(occ))
    pos = occ.positions
    m = pos[j - 1]
    alpha = _first_split(sigma, pos[:j - 1], (), n, m - 1)
    u = flatten(sigma[:alpha])
    v = flatten(sigma[alpha:m - 1])
    w = flatten(sigma[m:])
    bar = skew_sum(skew_sum(direct_sum(v, (1,)), u), w)
    shift = len(v) + 1
    image = (shift,) + tuple(shift + p for p in pos[:j - 1]) + pos[j:]
    return Occurrence(bar, image)


def psi_inverse(occ: Occurrence, site: MoveSite) -> Occurrence:
    """Recover the preimage under :func:`psi`, or raise :class:`NotInImage`."""
    check_eligible(site)
    tau, j = site.perm, site.j
    mu = apply_move(tau, site.value)
    if occ.pattern != mu:
        raise NotInImage(f"occurrence pattern {format_perm(occ.pattern)} is not {format_perm(mu)}",
                         occurrence=str(occ), condition="pattern")
    bar = occ.host
    n = len(bar)
    pos = occ.positions
    if occ.values[0] != n:
        raise NotInImage(f"{n} is not the first entry of the occurrence", occurrence=str(occ), condition="max-first")
    ell = pos[0]
    beta = _first_split(bar, pos[1:j], pos[j:], None, n)
    if beta is None:
        raise NotInImage(f"no block boundary separates M from R in {format_perm(bar)}",
                         occurrence=str(occ), condition="split")
    u = flatten(bar[ell:beta])
    v = flatten(bar[:ell - 1])
    w = flatten(bar[beta:])
    sigma = skew_sum(direct_sum(skew_sum(u, v), (1,)), w)
    pre_pos = tuple(p - ell for p in pos[1:j]) + (beta,) + pos[j:]
    try:
        pre = Occurrence(sigma, pre_pos)
        ok = is_132_avoiding(sigma) and pre.pattern == tau and psi(pre, site) == occ
    except (NotInDomain, ValueError):
        ok = False
    if not ok:
        raise NotInImage(f"recovered candidate for {occ} does not map back", occurrence=str(occ), condition="roundtrip")
    return pre


def psi_domain(site: MoveSite, n: int, budget: Budget | None = None) -> list[Occurrence]:
    """Occurrences of τ in S_n(132) in which ``n`` plays the moved entry."""
    tau = site.perm
    out = []
    for sigma in avoiders(n, budget):
        for occ in list_occurrences(sigma, tau):
            if occ.values[site.j - 1] == n:
                out.append(occ)
    return out


def psi_codomain(site: MoveSite, n: int, budget: Budget | None = None) -> list[Occurrence]:
    """Occurrences of μ in S_n(132) in which ``n`` is the first entry."""
    mu = apply_move(site.perm, site.value)
    out = []
    for sigma in avoiders(n, budget):
        for occ in list_occurrences(sigma, mu):
            if occ.values[0] == n:
                out.append(occ)
    return out


def witness_shape_occurrences(site: MoveSite, n: int, budget: Budget | None = None) -> list[Occurrence]:
    """Occurrences of μ with the host maximum first, in hosts that start with
    ``n`` and end with ``n - 1``, the final entry left out of the occurrence."""
    return [
        occ for occ in psi_codomain(site, n, budget)
        if occ.host[0] == n and occ.host[-1] == n - 1 and occ.positions[-1] != n
    ]


def nonimage_witness(site: MoveSite, n: int, budget: Budget | None = None) -> Occurrence | None:
    """First witness-shaped occurrence that :func:`psi` does not reach, if any."""
    for occ in witness_shape_occurrences(site, n, budget):
        try:
            psi_inverse(occ, site)
        except NotInImage:
            return occ
    return None


# --- constructions on spine structures ---------------------------------------

def realize_spine_merge(spine: Sequence[int], part_a: int, part_b: int) -> tuple[Perm, int]:
    """A permutation with spine structure ``spine`` and a move merging two given parts.

    ``part_a`` and ``part_b`` are 1-based indices into the descending parts.
    The result is read off a left-justified tree whose two lowest path
    vertices carry parts ``a`` and ``b``; the move is at label ``n - s + 2``.
    """
    parts = list(SpineStructure(spine))
    s = len(parts)
    if s < 2:
        raise InvalidPartition(f"need at least two parts to merge, got {SpineStructure(parts)}", parts=parts)
    if part_a == part_b or not (1 <= part_a <= s and 1 <= part_b <= s):
        raise InvalidPartition(f"bad part indices {part_a}, {part_b} for {s} parts", parts=parts)
    rest = [x for t, x in enumerate(parts, 1) if t not in (part_a, part_b)]
    ordered = [parts[part_a - 1], parts[part_b - 1]] + sorted(rest, reverse=True)
    n = sum(parts)
    perm = permutation_of_tree(label_shape(left_justified_shape(ordered)))
    return perm, n - s + 2


def canonicalize_mover(tau: Sequence[int], value: int) -> Perm:
    """A pattern with the same spine structure as ``tau`` whose move at its
    maximum yields the same spine structure as the move of ``tau`` at ``value``.

    The moved spine keeps the root, the spine of ``value - 1`` hangs as the
    root's left child, and the remaining spines form a left-justified block
    hung under the second vertex of the root spine (or of the other spine when
    the root spine is a single vertex).  Raises :class:`NotRealizable` when
    both merged spines are single vertices and other spines remain, since no
    vertex is left to hang them from.
    """
    site = find_site(tau, value)
    chains = spines(tree_of_permutation(site.perm))
    top = next(c for c in chains if value in c)
    low = next(c for c in chains if value - 1 in c)
    others = sorted(len(c) for c in chains if c is not top and c is not low)
    block = left_justified_shape(others) if others else None
    root = chain_shape(len(top))
    lower = chain_shape(len(low))
    if block is not None:
        if len(top) >= 2:
            root[1][0] = block
        elif len(low) >= 2:
            lower[1][0] = block
        else:
            raise NotRealizable(
                f"cannot canonicalize {format_perm(site.perm)} at {value}: both merged spines are single vertices",
                pattern=site.perm, value=value,
            )
    root[0] = lower
    return permutation_of_tree(label_shape(root))
