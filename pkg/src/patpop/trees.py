"""Binary trees of 132-avoiding permutations and their spine structures.

``T(σ)`` puts the maximum of σ at the root, builds the left subtree from the
entries before it and the right subtree from the entries after it.  Labels
then read ``n, n-1, ..., 1`` in pre-order and σ in in-order.  Deleting every
left-child edge splits a tree into *spines* (maximal right chains); their
sizes, sorted descending, form the spine structure.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidPartition, InvalidPermutation, InvalidTree
from .perm import Perm, require_avoiding


@dataclass(frozen=True)
class Node:
    label: int
    left: "Node | None" = None
    right: "Node | None" = None

    def preorder(self) -> Iterator["Node"]:
        yield self
        if self.left is not None:
            yield from self.left.preorder()
        if self.right is not None:
            yield from self.right.preorder()

    def inorder(self) -> Iterator["Node"]:
        if self.left is not None:
            yield from self.left.inorder()
        yield self
        if self.right is not None:
            yield from self.right.inorder()

    @property
    def size(self) -> int:
        return sum(1 for _ in self.preorder())

    def find(self, label: int) -> "Node | None":
        for node in self.preorder():
            if node.label == label:
                return node
        return None


class SpineStructure(tuple):
    """Positive parts in weakly descending order; prints as ``<3,1>``."""

    def __new__(cls, parts: Sequence[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p < 1 for p in parts):
            raise InvalidPartition(f"parts must be positive, got {parts}", parts=parts)
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def total(self) -> int:
        return sum(self)

    def __str__(self) -> str:
        return "<" + ",".join(map(str, self)) + ">"

    def __repr__(self) -> str:
        return f"SpineStructure({str(self)})"


def parse_partition(text: str) -> SpineStructure:
    s = text.strip().strip("<>⟨⟩()[] ")
    if not re.fullmatch(r"\d+(\s*,\s*\d+)*", s):
        raise InvalidPartition(f"cannot parse partition {text!r}", text=text)
    return SpineStructure(int(x) for x in s.split(","))


def tree_of_permutation(perm: Sequence[int]) -> Node | None:
    """``T(σ)`` for a 132-avoiding σ; ``None`` for the empty permutation."""
    p = require_avoiding(perm)

    def build(lo: int, hi: int) -> Node | None:
        if lo >= hi:
            return None
        m = max(range(lo, hi), key=p.__getitem__)
        return Node(p[m], build(lo, m), build(m + 1, hi))

    return build(0, len(p))


def check_labels(tree: Node | None) -> int:
    """Return the size of ``tree`` after checking the pre-order labelling rule."""
    if tree is None:
        return 0
    labels = [node.label for node in tree.preorder()]
    n = len(labels)
    if labels != list(range(n, 0, -1)):
        raise InvalidTree(f"pre-order labels {labels} are not {n}..1", labels=labels)
    return n


def permutation_of_tree(tree: Node | None) -> Perm:
    """In-order reading of a correctly labelled tree."""
    check_labels(tree)
    if tree is None:
        return ()
    return tuple(node.label for node in tree.inorder())


def spines(tree: Node | None) -> list[list[int]]:
    """Spines as label lists, top-down, listed in pre-order of their tops."""
    out: list[list[int]] = []
    if tree is None:
        return out
    stack = [tree]
    while stack:
        top = stack.pop()
        chain = []
        node = top
        lefts = []
        while node is not None:
            chain.append(node.label)
            if node.left is not None:
                lefts.append(node.left)
            node = node.right
        out.append(chain)
        stack.extend(reversed(lefts))
    return sorted(out, key=lambda c: -c[0])


def spine_structure(tree: Node | None) -> SpineStructure:
    return SpineStructure(len(c) for c in spines(tree))


def spine_of(tree: Node | None, label: int) -> list[int]:
    for chain in spines(tree):
        if label in chain:
            return chain
    raise InvalidTree(f"label {label} not in tree", label=label)


def permutation_spine_structure(perm: Sequence[int]) -> SpineStructure:
    """Shorthand for ``spine_structure(tree_of_permutation(perm))``."""
    return spine_structure(tree_of_permutation(perm))


def parent_of(perm: Sequence[int], value: int) -> int | None:
    """Parent of ``value`` in ``T(σ)``, read off σ directly.

    Walking outward from ``value`` in each direction, the first entry larger
    than it is a candidate; the parent is the smaller candidate.  The root
    ``n`` has no parent.
    """
    p = require_avoiding(perm)
    n = len(p)
    if not 1 <= value <= n:
        raise InvalidPermutation(f"value {value} not in 1..{n}", value=value)
    if value == n:
        return None
    a = p.index(value)
    candidates = []
    for step in (-1, 1):
        b = a + step
        while 0 <= b < n and p[b] < value:
            b += step
        if 0 <= b < n:
            candidates.append(p[b])
    return min(candidates)


def child_of(perm: Sequence[int], value: int) -> int | None:
    """Some child of ``value`` in ``T(σ)``: the largest smaller entry that is
    visible from ``value`` over entries below it.  ``None`` for leaves."""
    p = require_avoiding(perm)
    n = len(p)
    if not 1 <= value <= n:
        raise InvalidPermutation(f"value {value} not in 1..{n}", value=value)
    a = p.index(value)
    best = None
    for b in range(n):
        x = p[b]
        if x >= value:
            continue
        between = p[min(a, b) + 1:max(a, b)]
        if all(y < x for y in between) and (best is None or x > best):
            best = x
    return best


def is_left_justified(tree: Node | None) -> bool:
    if tree is None:
        return True
    for node in tree.preorder():
        if node.right is not None and node.right.left is not None:
            return False
    return True


def label_shape(shape) -> Node | None:
    """Turn an unlabelled shape into a labelled tree.

    A shape is ``None`` or a two-item list ``[left, right]`` of shapes; labels
    are assigned ``n, n-1, ...`` in pre-order.
    """
    n = _shape_size(shape)
    counter = iter(range(n, 0, -1))

    def rec(s):
        if s is None:
            return None
        label = next(counter)
        left = rec(s[0])
        return Node(label, left, rec(s[1]))

    return rec(shape)


def _shape_size(shape) -> int:
    if shape is None:
        return 0
    return 1 + _shape_size(shape[0]) + _shape_size(shape[1])


def chain_shape(length: int, tail=None):
    """A right chain of ``length`` vertices whose last vertex's right child is ``tail``."""
    shape = tail
    for _ in range(length):
        shape = [None, shape]
    return shape


def left_justified_shape(ordered_parts: Sequence[int]):
    """Shape of :func:`build_left_justified`; parts are listed bottom-up."""
    parts = [int(p) for p in ordered_parts]
    if not parts:
        raise InvalidPartition("need at least one part")
    if any(p < 1 for p in parts):
        raise InvalidPartition(f"parts must be positive, got {parts}", parts=parts)
    shape = None
    for size in parts:
        # the previous (lower) spine hangs as the left child of this spine's top
        chain = chain_shape(size)
        chain[0] = shape
        shape = chain
    return shape


def build_left_justified(ordered_parts: Sequence[int]) -> Node:
    """Left-justified tree whose spine tops form the left path ``n, n-1, ..., n-s+1``.

    The spine topped by label ``n-s+i`` gets ``ordered_parts[i-1]`` vertices,
    so the first part is the bottom of the path and the last part holds the root.
    """
    return label_shape(left_justified_shape(ordered_parts))


def shape_of(tree: Node | None):
    if tree is None:
        return None
    return [shape_of(tree.left), shape_of(tree.right)]


def to_dict(tree: Node | None):
    if tree is None:
        return None
    return {"label": tree.label, "left": to_dict(tree.left), "right": to_dict(tree.right)}


def from_dict(data) -> Node | None:
    if data is None:
        return None
    try:
        return Node(int(data["label"]), from_dict(data.get("left")), from_dict(data.get("right")))
    except (KeyError, TypeError) as exc:
        raise InvalidTree(f"malformed tree object: {exc}") from None


def to_json(tree: Node | None) -> str:
    return json.dumps(to_dict(tree), sort_keys=True, separators=(",", ":"))


def to_dot(tree: Node | None, name: str = "T") -> str:
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    if tree is not None:
        for node in tree.preorder():
            lines.append(f"  {node.label};")
        for node in tree.preorder():
            if node.left is not None:
                lines.append(f"  {node.label} -> {node.left.label} [side=left];")
            if node.right is not None:
                lines.append(f"  {node.label} -> {node.right.label} [side=right];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_text(tree: Node | None) -> str:
    """Indented outline, one vertex per line, ``L``/``R`` marking the side."""
    if tree is None:
        return "(empty)\n"
    lines: list[str] = []

    def rec(node: Node, depth: int, side: str):
        lines.append("  " * depth + f"{side}{node.label}")
        if node.left is not None:
            rec(node.left, depth + 1, "L:")
        if node.right is not None:
            rec(node.right, depth + 1, "R:")

    rec(tree, 0, "")
    return "\n".join(lines) + "\n"


__all__ = [
    "Node", "SpineStructure", "parse_partition", "tree_of_permutation", "permutation_of_tree",
    "check_labels", "spines", "spine_structure", "spine_of", "permutation_spine_structure",
    "parent_of", "child_of", "is_left_justified", "build_left_justified", "label_shape",
    "left_justified_shape", "chain_shape", "shape_of", "to_dict", "from_dict", "to_json",
    "to_dot", "render_text",
]
