"""
Binary plane trees of 132-avoiding permutations, and two occurrence-moving
bijections on trees with three colored vertices:

* ``rho``: 213-colored chain trees (S_n(132,231)) -> 123-colored chain trees
* ``varrho``: 231-colored right-bare trees (S_n(132,312)) -> 123-colored ones

Vertices carry stable integer ids (the positions in the permutation the tree
was built from), so colors follow vertices through the surgery.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .classes import ClassId, generate_canonical
from .perm import Occurrence, Perm, check_perm, contains, iter_occurrences, standardize

__all__ = [
    "BinaryPlaneTree", "tree_of", "perm_of", "layout", "occurrence_vertices",
    "is_left_descendant", "is_right_descendant", "is_chain_tree", "is_right_bare",
    "rho", "rho_inv", "varrho", "varrho_inv", "colored_trees", "colored_key", "to_dot",
]

NO_CHILD = 0
Colors = tuple[int, int, int]


@dataclass(frozen=True)
class BinaryPlaneTree:
    """
    ``children[v - 1] == (left, right)`` for vertex ids ``v = 1..n``; 0 marks an
    empty slot. ``root`` is 0 only for the empty tree.
    """
    root: int
    children: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.children)

    def left(self, v: int) -> int:
        return self.children[v - 1][0]

    def right(self, v: int) -> int:
        return self.children[v - 1][1]

    def parent_map(self) -> dict[int, tuple[int, str]]:
        out = {}
        for v, (lc, rc) in enumerate(self.children, 1):
            if lc:
                out[lc] = (v, "L")
            if rc:
                out[rc] = (v, "R")
        return out

    def subtree(self, v: int) -> set[int]:
        out, stack = set(), [v]
        while stack:
            u = stack.pop()
            if u:
                out.add(u)
                stack.extend(self.children[u - 1])
        return out

    def inorder(self) -> list[int]:
        out: list[int] = []
        stack: list[int] = []
        v = self.root
        while stack or v:
            while v:
                stack.append(v)
                v = self.left(v)
            v = stack.pop()
            out.append(v)
            v = self.right(v)
        return out


def _freeze(root: int, kids: list[list[int]]) -> BinaryPlaneTree:
    return BinaryPlaneTree(root, tuple((lc, rc) for lc, rc in kids))


def tree_of(sigma: Sequence[int]) -> BinaryPlaneTree:
    """Split at the maximum; the prefix becomes the left subtree, the suffix the right."""
    sigma = check_perm(sigma)
    if contains(sigma, (1, 3, 2)):
        raise ValueError(f"{sigma} contains 132")
    kids = [[NO_CHILD, NO_CHILD] for _ in sigma]

    def build(lo: int, hi: int) -> int:
        # positions lo..hi, 1-based inclusive
        if lo > hi:
            return NO_CHILD
        top = max(range(lo, hi + 1), key=lambda i: sigma[i - 1])
        kids[top - 1][0] = build(lo, top - 1)
        kids[top - 1][1] = build(top + 1, hi)
        return top

    return _freeze(build(1, len(sigma)), kids)


def layout(t: BinaryPlaneTree) -> tuple[Perm, dict[int, int]]:
    """
    The 132-avoiding permutation of ``t`` and each vertex's 1-based position.

    A vertex takes the largest value of its subtree; its right subtree takes the
    smallest values and its left subtree the ones in between.
    """
    value: dict[int, int] = {}

    def assign(v: int, lo: int) -> int:
        # fills subtree of v with lo..lo+size-1, returns size
        if not v:
            return 0
        r = assign(t.right(v), lo)
        l = assign(t.left(v), lo + r)
        value[v] = lo + r + l
        return r + l + 1

    assign(t.root, 1)
    order = t.inorder()
    return tuple(value[v] for v in order), {v: i for i, v in enumerate(order, 1)}


def perm_of(t: BinaryPlaneTree) -> Perm:
    return layout(t)[0]


def is_left_descendant(t: BinaryPlaneTree, u: int, v: int) -> bool:
    """True if ``u`` lies in the left subtree of ``v``."""
    return bool(t.left(v)) and u in t.subtree(t.left(v))


def is_right_descendant(t: BinaryPlaneTree, u: int, v: int) -> bool:
    return bool(t.right(v)) and u in t.subtree(t.right(v))


def is_chain_tree(t: BinaryPlaneTree) -> bool:
    """Every vertex has at most one child."""
    return all(not (lc and rc) for lc, rc in t.children)


def is_right_bare(t: BinaryPlaneTree) -> bool:
    """No vertex lying in some right subtree has a left child."""
    right_desc: set[int] = set()
    for _, rc in t.children:
        if rc:
            right_desc |= t.subtree(rc)
    return all(not t.left(v) for v in right_desc)


def occurrence_vertices(t: BinaryPlaneTree, occ: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    """Vertices of ``t`` at the positions of ``occ``, left to right."""
    sigma, _ = layout(t)
    occ = tuple(occ)
    if (list(occ) != sorted(set(occ)) or not all(1 <= i <= len(sigma) for i in occ)
            or standardize([sigma[i - 1] for i in occ]) != tuple(q)):
        raise ValueError(f"{occ} is not an occurrence of {tuple(q)} in {sigma}")
    order = t.inorder()
    return tuple(order[i - 1] for i in occ)


def colored_key(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[Perm, Occurrence]:
    """Shape-level identity of a colored tree: its permutation and the colored positions."""
    sigma, pos = layout(t)
    return sigma, tuple(sorted(pos[v] for v in colors))


def _colored_pattern(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[int, ...]:
    sigma, pos = layout(t)
    idx = [pos[v] for v in colors]
    if idx != sorted(idx):
        raise ValueError("colored vertices must be listed left to right")
    return standardize([sigma[i - 1] for i in idx])


def _thaw(t: BinaryPlaneTree) -> list[list[int]]:
    return [list(c) for c in t.children]


def rho(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[BinaryPlaneTree, Colors]:
    """
    ``colors = (Q2, Q1, Q3)`` colors a 213 occurrence of a chain tree; the right
    subtree of ``Q2`` becomes its left subtree. Returns ``(tree, (Q1, Q2, Q3))``.
    """
    if not is_chain_tree(t):
        raise ValueError("rho needs a tree in which every vertex has at most one child")
    if _colored_pattern(t, colors) != (2, 1, 3):
        raise ValueError("colored vertices do not form a 213 occurrence")
    q2, q1, q3 = colors
    kids = _thaw(t)
    kids[q2 - 1] = [kids[q2 - 1][1], NO_CHILD]
    return _freeze(t.root, kids), (q1, q2, q3)


def rho_inv(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[BinaryPlaneTree, Colors]:
    """``colors = (R1, R2, R3)`` colors a 123 occurrence; returns ``(tree, (R2, R1, R3))``."""
    if not is_chain_tree(t):
        raise ValueError("rho_inv needs a chain tree")
    if _colored_pattern(t, colors) != (1, 2, 3):
        raise ValueError("colored vertices do not form a 123 occurrence")
    r1, r2, r3 = colors
    kids = _thaw(t)
    kids[r2 - 1] = [NO_CHILD, kids[r2 - 1][0]]
    return _freeze(t.root, kids), (r2, r1, r3)


def varrho(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[BinaryPlaneTree, Colors]:
    """
    ``colors = (Q2, Q3, Q1)`` colors a 231 occurrence of a right-bare tree.

    With ``x`` the lowest of ``Q3`` and its ancestors having ``Q1`` as a right
    descendant and ``y`` the parent of ``x``: cut ``T_{Q1}`` out of ``T_x``, put
    ``Q1`` where ``x`` was, and hang the rest of ``T_x`` as ``Q1``'s left subtree.
    Colors are kept; the result colors a 123 occurrence ``(Q2, Q3, Q1)``.
    """
    if not is_right_bare(t):
        raise ValueError("varrho needs a right-bare tree")
    if _colored_pattern(t, colors) != (2, 3, 1):
        raise ValueError("colored vertices do not form a 231 occurrence")
    q2, q3, q1 = colors
    parents = t.parent_map()
    x = q3
    while not is_right_descendant(t, q1, x):
        x = parents[x][0]
    kids = _thaw(t)
    p, side = parents[q1]
    assert side == "R" and not kids[q1 - 1][0]
    kids[p - 1][1] = NO_CHILD
    root = t.root
    if x in parents:
        y, side = parents[x]
        assert side == "L"
        kids[y - 1][0] = q1
    else:
        root = q1
    kids[q1 - 1][0] = x
    return _freeze(root, kids), (q2, q3, q1)


def varrho_inv(t: BinaryPlaneTree, colors: Sequence[int]) -> tuple[BinaryPlaneTree, Colors]:
    """
    Undo :func:`varrho` on a 123-colored right-bare tree ``(R1, R2, R3)``: the
    left subtree of ``R3`` goes back into ``R3``'s slot and ``R3`` (with its right
    chain) is re-attached at the end of that subtree's right spine.
    """
    if not is_right_bare(t):
        raise ValueError("varrho_inv needs a right-bare tree")
    if _colored_pattern(t, colors) != (1, 2, 3):
        raise ValueError("colored vertices do not form a 123 occurrence")
    r1, r2, q1 = colors
    parents = t.parent_map()
    kids = _thaw(t)
    x = kids[q1 - 1][0]
    kids[q1 - 1][0] = NO_CHILD
    root = t.root
    if q1 in parents:
        y, side = parents[q1]
        assert side == "L"
        kids[y - 1][0] = x
    else:
        root = x
    s = x
    while kids[s - 1][1]:
        s = kids[s - 1][1]
    kids[s - 1][1] = q1
    return _freeze(root, kids), (r1, r2, q1)


def colored_trees(cid: ClassId | str, q: Sequence[int], n: int) -> Iterator[tuple[BinaryPlaneTree, Colors]]:
    """Every tree of class ``cid`` (D3 or D4) with one ``q`` occurrence colored."""
    cid = ClassId(cid)
    if cid not in (ClassId.D3, ClassId.D4):
        raise ValueError("colored tree families exist for D3 and D4 only")
    for sigma in generate_canonical(cid, n):
        t = tree_of(sigma)
        order = t.inorder()
        for occ in iter_occurrences(sigma, q):
            yield t, tuple(order[i - 1] for i in occ)


def to_dot(t: BinaryPlaneTree, colors: Sequence[int] = (), name: str = "T") -> str:
    """Graphviz source; colored vertices are filled black, labels are values."""
    sigma, pos = layout(t)
    lines = [f"digraph {name} {{", "  node [shape=circle];"]
    for v in t.inorder():
        style = ' style=filled fillcolor=black fontcolor=white' if v in colors else ""
        lines.append(f'  v{v} [label="{sigma[pos[v] - 1]}"{style}];')
    for v, (lc, rc) in enumerate(t.children, 1):
        if lc:
            lines.append(f'  v{v} -> v{lc} [label="L"];')
        if rc:
            lines.append(f'  v{v} -> v{rc} [label="R"];')
    lines.append("}")
    return "\n".join(lines)
