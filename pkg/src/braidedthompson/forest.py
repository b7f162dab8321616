"""Finite binary trees and forests, addressed by binary strings.

A tree is stored by its set of leaf addresses: strings over {0,1}, where ""
is the root, "0" the left child, "1" the right child, and so on.  A tuple of
addresses is a valid leaf set when it is an antichain under the prefix order
and covers the whole tree (Kraft equality).  Leaves are kept sorted; for an
antichain, lexicographic order coincides with left-to-right planar order.

A forest is a nonempty tuple of trees.  Its leaves are numbered globally,
1-based, tree by tree and left to right, which is the numbering used to
attach braid strands in the diagram layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ShapeError(ValueError):
    """Raised when trees or forests are combined along mismatched shapes."""


class SupportOverlapError(ShapeError):
    """Raised when elementary forests that must act on disjoint carets overlap."""


def _check_address(addr: str) -> None:
    if any(c not in "01" for c in addr):
        raise ShapeError(f"address {addr!r} is not a binary string")


def sibling(addr: str) -> str:
    """The other child of the same parent."""
    if not addr:
        raise ShapeError("the root has no sibling")
    return addr[:-1] + ("1" if addr[-1] == "0" else "0")


@dataclass(frozen=True)
class Tree:
    """A finite rooted binary tree, stored as its sorted tuple of leaf addresses."""

    leaves: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "leaves", tuple(sorted(self.leaves)))
        if not self.leaves:
            raise ShapeError("a tree has at least one leaf")
        for a in self.leaves:
            _check_address(a)
        for a, b in zip(self.leaves, self.leaves[1:]):
            if b.startswith(a):
                raise ShapeError(f"leaf {a!r} is an ancestor of leaf {b!r}")
        # Kraft equality, in integers: the leaves cover the whole tree.
        depth = max(len(a) for a in self.leaves)
        if sum(1 << (depth - len(a)) for a in self.leaves) != 1 << depth:
            raise ShapeError(f"leaf set {self.leaves} does not cover the tree")

    @staticmethod
    def leaf() -> Tree:
        return Tree(("",))

    @property
    def num_leaves(self) -> int:
        return len(self.leaves)

    @property
    def num_carets(self) -> int:
        return self.num_leaves - 1

    def is_leaf(self) -> bool:
        return self.leaves == ("",)

    def leaf_index(self, addr: str) -> int:
        """1-based position of a leaf in left-to-right order."""
        lo = 0
        for i, a in enumerate(self.leaves):
            if a == addr:
                return i + 1
        raise ShapeError(f"{addr!r} is not a leaf of {self}")

    def internal_nodes(self) -> set[str]:
        nodes: set[str] = set()
        for a in self.leaves:
            for k in range(len(a)):
                nodes.add(a[:k])
        return nodes

    def split_leaf(self, i: int) -> Tree:
        """Attach a caret under the i-th leaf (1-based)."""
        if not 1 <= i <= self.num_leaves:
            raise ShapeError(f"leaf index {i} out of range")
        a = self.leaves[i - 1]
        return Tree(self.leaves[: i - 1] + (a + "0", a + "1") + self.leaves[i:])

    def caret_leaf_pairs(self) -> list[int]:
        """Left leaf indices i such that leaves i, i+1 form a caret."""
        out = []
        for i, (a, b) in enumerate(zip(self.leaves, self.leaves[1:]), start=1):
            if a[:-1] == b[:-1] and a.endswith("0") and b.endswith("1"):
                out.append(i)
        return out

    def remove_caret(self, i: int) -> Tree:
        """Inverse of split_leaf: merge the caret whose left leaf is i."""
        if i not in self.caret_leaf_pairs():
            raise ShapeError(f"leaves {i}, {i + 1} do not form a caret")
        a = self.leaves[i - 1]
        return Tree(self.leaves[: i - 1] + (a[:-1],) + self.leaves[i + 1 :])

    # -- relative structure ------------------------------------------

    def is_deferred(self, w: str) -> bool:
        """Every leaf lies below w or on the vine of w (off-spine siblings)."""
        _check_address(w)
        off_spine = vine(w).leaves
        return all(a.startswith(w) or a in off_spine for a in self.leaves)

    def left_depth(self, w: str = "") -> int:
        """The unique m >= 0 with w 0^m a leaf; defined when the tree splits down to w."""
        for a in self.leaves:
            if a.startswith(w) and set(a[len(w) :]) <= {"0"}:
                return len(a) - len(w)
        raise ShapeError(f"no leaf of the form {w!r} 0^m")

    def right_depth(self, w: str = "") -> int:
        for a in self.leaves:
            if a.startswith(w) and set(a[len(w) :]) <= {"1"}:
                return len(a) - len(w)
        raise ShapeError(f"no leaf of the form {w!r} 1^m")

    def common_refinement(self, other: Tree) -> Tree:
        """The smallest tree refining both (union of internal nodes)."""
        out: list[str] = []
        other_internal = other.internal_nodes()
        for a in self.leaves:
            if a in other_internal:
                out.extend(b for b in other.leaves if b.startswith(a))
            else:
                out.append(a)
        return Tree(tuple(out))

    def to_json(self) -> list[str]:
        return list(self.leaves)

    @staticmethod
    def from_json(data: object) -> Tree:
        if not isinstance(data, list) or not all(isinstance(a, str) for a in data):
            raise ShapeError(f"not a tree object: {data!r}")
        return Tree(tuple(data))

    def __repr__(self) -> str:
        return f"Tree({list(self.leaves)})"


def vine(w: str) -> Tree:
    """The smallest tree with w as a leaf: the path to w plus its off-spine siblings.

    vine("") is the trivial tree, and vine(w0) == vine(w1) for every w.
    """
    _check_address(w)
    leaves = [w]
    for k in range(len(w)):
        leaves.append(w[:k] + ("1" if w[k] == "0" else "0"))
    return Tree(tuple(leaves))


def right_vine(n: int) -> Tree:
    """All-right vine with n carets: the standard shape with leaves 0, 10, ..., 1^n."""
    return vine("1" * n)


@dataclass(frozen=True)
class Forest:
    """A nonempty ordered tuple of trees with global 1-based leaf numbering."""

    trees: tuple[Tree, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "trees", tuple(self.trees))
        if not self.trees:
            raise ShapeError("a forest has at least one tree")
        for t in self.trees:
            if not isinstance(t, Tree):
                raise ShapeError(f"not a tree: {t!r}")

    @staticmethod
    def trivial(n: int) -> Forest:
        if n < 1:
            raise ShapeError("a forest has at least one tree")
        return Forest((Tree.leaf(),) * n)

    @staticmethod
    def of_tree(tree: Tree) -> Forest:
        return Forest((tree,))

    @property
    def num_roots(self) -> int:
        return len(self.trees)

    @property
    def num_leaves(self) -> int:
        return sum(t.num_leaves for t in self.trees)

    @property
    def num_carets(self) -> int:
        return self.num_leaves - self.num_roots

    def is_trivial(self) -> bool:
        return all(t.is_leaf() for t in self.trees)

    def global_leaves(self) -> list[tuple[int, str]]:
        """(tree index 0-based, address) for each leaf, in global order."""
        return [(ti, a) for ti, t in enumerate(self.trees) for a in t.leaves]

    def locate_leaf(self, i: int) -> tuple[int, str]:
        if not 1 <= i <= self.num_leaves:
            raise ShapeError(f"leaf index {i} out of range 1..{self.num_leaves}")
        for ti, t in enumerate(self.trees):
            if i <= t.num_leaves:
                return ti, t.leaves[i - 1]
            i -= t.num_leaves
        raise AssertionError("unreachable")

    def leaf_offset(self, ti: int) -> int:
        """Number of leaves in trees before index ti."""
        return sum(t.num_leaves for t in self.trees[:ti])

    def split_leaf(self, i: int) -> Forest:
        ti, _ = self.locate_leaf(i)
        local = i - self.leaf_offset(ti)
        return self.replace_tree(ti, self.trees[ti].split_leaf(local))

    def caret_leaf_pairs(self) -> list[int]:
        """Global left-leaf indices of carets (both children are leaves)."""
        out = []
        for ti, t in enumerate(self.trees):
            off = self.leaf_offset(ti)
            out.extend(off + i for i in t.caret_leaf_pairs())
        return out

    def remove_caret(self, i: int) -> Forest:
        ti, _ = self.locate_leaf(i)
        local = i - self.leaf_offset(ti)
        return self.replace_tree(ti, self.trees[ti].remove_caret(local))

    def replace_tree(self, ti: int, tree: Tree) -> Forest:
        return Forest(self.trees[:ti] + (tree,) + self.trees[ti + 1 :])

    def graft(self, lower: Forest) -> Forest:
        """Attach lower's trees to this forest's leaves, in global order."""
        if lower.num_roots != self.num_leaves:
            raise ShapeError(
                f"graft needs {self.num_leaves} trees, got {lower.num_roots}"
            )
        out: list[Tree] = []
        k = 0
        for t in self.trees:
            leaves: list[str] = []
            for a in t.leaves:
                leaves.extend(a + b for b in lower.trees[k].leaves)
                k += 1
            out.append(Tree(tuple(leaves)))
        return Forest(tuple(out))

    # -- elementary forests, used for cube moves ------------------------

    def is_elementary(self) -> bool:
        return all(t.num_leaves <= 2 for t in self.trees)

    def root_support(self) -> frozenset[int]:
        """1-based root indices that carry a caret (elementary forests only)."""
        if not self.is_elementary():
            raise ShapeError("root_support is defined for elementary forests")
        return frozenset(i for i, t in enumerate(self.trees, start=1) if not t.is_leaf())

    def leaf_support(self) -> frozenset[int]:
        """Global leaf indices covered by carets (elementary forests only)."""
        out: set[int] = set()
        for ti in self.root_support():
            off = self.leaf_offset(ti - 1)
            out.update((off + 1, off + 2))
        return frozenset(out)

    def to_json(self) -> list[list[str]]:
        return [t.to_json() for t in self.trees]

    @staticmethod
    def from_json(data: object) -> Forest:
        if not isinstance(data, list):
            raise ShapeError(f"not a forest object: {data!r}")
        return Forest(tuple(Tree.from_json(t) for t in data))

    def __repr__(self) -> str:
        return f"Forest({[list(t.leaves) for t in self.trees]})"


def elementary_forest(num_roots: int, caret_roots: Iterable[int]) -> Forest:
    """The elementary forest with one caret at each listed root (1-based)."""
    roots = set(caret_roots)
    if not roots <= set(range(1, num_roots + 1)):
        raise ShapeError(f"caret roots {sorted(roots)} out of range 1..{num_roots}")
    caret = Tree(("0", "1"))
    return Forest(
        tuple(caret if i in roots else Tree.leaf() for i in range(1, num_roots + 1))
    )


def elementary_union(forests: Sequence[Forest]) -> Forest:
    """Overlay elementary forests with the same roots and disjoint supports."""
    if not forests:
        raise ShapeError("nothing to combine")
    n = forests[0].num_roots
    supports: list[frozenset[int]] = []
    roots: set[int] = set()
    for f in forests:
        if f.num_roots != n:
            raise ShapeError("elementary forests have different root counts")
        s = f.root_support()
        supports.append(s)
        if roots & s:
            raise SupportOverlapError(f"carets collide at roots {sorted(roots & s)}")
        roots.update(s)
    return elementary_forest(n, roots)


def all_trees(num_leaves: int) -> Iterator[Tree]:
    """Every tree with the given number of leaves (Catalan many)."""
    if num_leaves == 1:
        yield Tree.leaf()
        return
    for k in range(1, num_leaves):
        for left in all_trees(k):
            for right in all_trees(num_leaves - k):
                yield Tree(
                    tuple("0" + a for a in left.leaves)
                    + tuple("1" + a for a in right.leaves)
                )
