"""Tree-braid-tree diagrams: the groupoid behind the braided Thompson groups.

A diagram is a triple (neg, braid, pos) of a forest, a braid word and a
forest, with one braid strand per leaf.  Strands are numbered at the bottom,
which is the pos side: pos-leaf i is joined to neg-leaf permutation(braid)(i).

Diagrams are considered up to expansion: splitting pos-leaf k, doubling
strand k, and splitting neg-leaf permutation(k).  Reduction is the inverse
move, and every class has a unique reduced representative (empirically
confluent; the test suite exercises this).  Group elements are diagrams whose
two forests are single trees.

Products glue the pos forest of the left factor to the neg forest of the
right factor after expanding both to the componentwise common refinement.
The product braid concatenates the left factor's word before the right
factor's.  On pure-braid diagrams (the BF/Fbr world, where all the subgroup
machinery below lives) this operation is a group product and the
strand-deletion maps distribute over it in the same left-to-right order; for
non-pure braids the expansion bookkeeping does not commute with this braid
order, so the groupoid product is only used on shape-compatible operands as
given.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .braid import BraidWord, Permutation, random_pure_word
from .forest import Forest, ShapeError, Tree, vine


class DiagramError(ValueError):
    """Raised when a diagram operation is applied outside its domain."""


@dataclass(frozen=True)
class Diagram:
    neg: Forest
    braid: BraidWord
    pos: Forest

    def __post_init__(self) -> None:
        if not (self.neg.num_leaves == self.braid.strands == self.pos.num_leaves):
            raise DiagramError(
                f"leaf/strand mismatch: neg {self.neg.num_leaves}, "
                f"braid {self.braid.strands}, pos {self.pos.num_leaves}"
            )

    # -- basics --------------------------------------------------------

    @staticmethod
    def identity(n: int = 1) -> Diagram:
        return Diagram(Forest.trivial(n), BraidWord.identity(n), Forest.trivial(n))

    @property
    def strands(self) -> int:
        return self.braid.strands

    def is_element(self) -> bool:
        """Single tree on both sides: an element of the braided Thompson group."""
        return self.neg.num_roots == 1 and self.pos.num_roots == 1

    def permutation(self) -> Permutation:
        return self.braid.permutation()

    def invert(self) -> Diagram:
        return Diagram(self.pos, self.braid.inverse(), self.neg)

    def __repr__(self) -> str:
        return f"Diagram({self.neg!r}, {self.braid!r}, {self.pos!r})"

    # -- expansion and reduction ----------------------------------------

    def expand(self, k: int) -> Diagram:
        """Split pos-leaf k, double strand k, split the matching neg-leaf."""
        if not 1 <= k <= self.pos.num_leaves:
            raise DiagramError(f"leaf index {k} out of range 1..{self.pos.num_leaves}")
        j = self.permutation()(k)
        return Diagram(
            self.neg.split_leaf(j), self.braid.double_strand(k), self.pos.split_leaf(k)
        )

    def expand_neg(self, j: int) -> Diagram:
        """Split neg-leaf j (realized as the expansion at the matching pos-leaf)."""
        if not 1 <= j <= self.neg.num_leaves:
            raise DiagramError(f"leaf index {j} out of range 1..{self.neg.num_leaves}")
        return self.expand(self.permutation().inverse()(j))

    def reduced(self) -> Diagram:
        return _reduced(self)

    def is_reduced(self) -> bool:
        return _reduced(self) == self

    # -- class equality ---------------------------------------------------

    def equals(self, other: Diagram) -> bool:
        """Equality of expansion classes (structural forests, braid up to relations)."""
        a, b = _reduced(self), _reduced(other)
        return a.neg == b.neg and a.pos == b.pos and a.braid.equals(b.braid)

    def classify(self) -> dict[str, bool]:
        """Membership flags for the unbraided and the pure-braid subgroups."""
        return {
            "in_F": self.braid.is_trivial(),
            "in_Fbr": self.braid.is_pure(),
        }

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "neg": self.neg.to_json(),
            "braid": self.braid.to_json(),
            "pos": self.pos.to_json(),
        }

    @staticmethod
    def from_json(data: object) -> Diagram:
        if not isinstance(data, dict) or set(data) != {"neg", "braid", "pos"}:
            raise DiagramError(f"not a diagram object: {data!r}")
        return Diagram(
            Forest.from_json(data["neg"]),
            BraidWord.from_json(data["braid"]),
            Forest.from_json(data["pos"]),
        )


@functools.lru_cache(maxsize=50_000)
def _reduced(d: Diagram) -> Diagram:
    neg, braid, pos = d.neg, d.braid, d.pos
    while True:
        perm = braid.permutation()
        neg_carets = set(neg.caret_leaf_pairs())
        for i in pos.caret_leaf_pairs():
            j = perm(i)
            if j not in neg_carets or perm(i + 1) != j + 1:
                continue
            shrunk = braid.delete_strand(i + 1)
            if not shrunk.double_strand(i).equals(braid):
                continue
            neg = neg.remove_caret(j)
            pos = pos.remove_caret(i)
            braid = shrunk
            break
        else:
            return Diagram(neg, braid, pos)


def _expand_pos_to(d: Diagram, target: Forest) -> Diagram:
    """Expand until the pos forest equals target, lowest leaf first."""
    internal = [t.internal_nodes() for t in target.trees]
    while d.pos != target:
        for k, (ti, a) in enumerate(d.pos.global_leaves(), start=1):
            if a in internal[ti]:
                d = d.expand(k)
                break
        else:
            raise ShapeError("target does not refine the pos forest")
    return d


def _expand_neg_to(d: Diagram, target: Forest) -> Diagram:
    internal = [t.internal_nodes() for t in target.trees]
    while d.neg != target:
        for j, (ti, a) in enumerate(d.neg.global_leaves(), start=1):
            if a in internal[ti]:
                d = d.expand_neg(j)
                break
        else:
            raise ShapeError("target does not refine the neg forest")
    return d


def multiply(g: Diagram, h: Diagram) -> Diagram:
    """The groupoid product: glue pos(g) to neg(h) along the common refinement."""
    if g.pos.num_roots != h.neg.num_roots:
        raise DiagramError(
            f"cannot glue {g.pos.num_roots} roots to {h.neg.num_roots} roots"
        )
    target = Forest(
        tuple(
            gt.common_refinement(ht) for gt, ht in zip(g.pos.trees, h.neg.trees)
        )
    )
    g2 = _expand_pos_to(g, target)
    h2 = _expand_neg_to(h, target)
    return _reduced(Diagram(g2.neg, g2.braid.compose(h2.braid), h2.pos))


def power(g: Diagram, k: int) -> Diagram:
    if k < 0:
        return power(g.invert(), -k)
    out = Diagram.identity(g.neg.num_roots)
    for _ in range(k):
        out = multiply(out, g)
    return out


def x_gen(w: str) -> Diagram:
    """The standard generator attached to a tree address.

    Its negative tree is the vine of w01 and its positive tree the vine of
    w10; the braid is trivial, so these elements generate the unbraided
    subgroup.
    """
    neg = vine(w + "01")
    pos = vine(w + "10")
    return Diagram(
        Forest.of_tree(neg), BraidWord.identity(neg.num_leaves), Forest.of_tree(pos)
    )


# -- deferred subgroups ----------------------------------------------------


def deferred_representative(g: Diagram, w: str) -> Diagram | None:
    """A representative with both trees deferred to w, or None.

    Starting from the reduced form, any leaf whose address is a proper
    prefix of w is expanded (neg-leaves via the matching pos-leaf) until no
    such leaf remains.  Expansions only lengthen addresses, so a leaf that is
    independent of w and not on the vine of w can never be repaired; failure
    after saturation is therefore definitive.
    """
    if not g.is_element():
        raise DiagramError("deferred membership applies to single-tree diagrams")
    if not g.braid.is_pure():
        raise DiagramError("deferred membership applies to pure-braid elements")
    d = g.reduced()
    while True:
        for k, (_, a) in enumerate(d.pos.global_leaves(), start=1):
            if len(a) < len(w) and w.startswith(a):
                d = d.expand(k)
                break
        else:
            for j, (_, a) in enumerate(d.neg.global_leaves(), start=1):
                if len(a) < len(w) and w.startswith(a):
                    d = d.expand_neg(j)
                    break
            else:
                break
    if d.neg.trees[0].is_deferred(w) and d.pos.trees[0].is_deferred(w):
        return d
    return None


def in_deferred_subgroup(g: Diagram, w: str) -> bool:
    return deferred_representative(g, w) is not None


def hnn_rewrite(g: Diagram, w: str, side: str = "left") -> tuple[int, Diagram, int]:
    """Strip powers of x_w off an element of the w-deferred subgroup.

    For side="left" the exponents come from left depths below w and the core
    h lands in the subgroup deferred to w1, with g = x_w^{k-} h x_w^{-k+};
    for side="right" the mirror holds with right depths, h deferred to w0,
    and g = x_w^{-k-} h x_w^{k+}.
    """
    if side not in ("left", "right"):
        raise DiagramError(f"side must be left or right, not {side!r}")
    rep = deferred_representative(g, w)
    if rep is None:
        raise DiagramError(f"element is not deferred to {w!r}")
    tneg, tpos = rep.neg.trees[0], rep.pos.trees[0]
    if side == "left":
        k_minus = max(tneg.left_depth(w) - 1, 0)
        k_plus = max(tpos.left_depth(w) - 1, 0)
        x = x_gen(w)
        h = multiply(multiply(power(x, -k_minus), g), power(x, k_plus))
        child = w + "1"
    else:
        k_minus = max(tneg.right_depth(w) - 1, 0)
        k_plus = max(tpos.right_depth(w) - 1, 0)
        x = x_gen(w)
        h = multiply(multiply(power(x, k_minus), g), power(x, -k_plus))
        child = w + "0"
    if not in_deferred_subgroup(h, child):
        raise DiagramError(f"descent failed: core is not deferred to {child!r}")
    return k_minus, h, k_plus


def conjugation_check(g: Diagram, w: str, direction: str = "right") -> bool:
    """Conjugating the w1-deferred subgroup by x_w lands it in the w11 one.

    direction="right" checks x_w^{-1} g x_w against w11 for g deferred to w1;
    direction="left" checks x_w g x_w^{-1} against w00 for g deferred to w0.
    """
    x = x_gen(w)
    if direction == "right":
        if not in_deferred_subgroup(g, w + "1"):
            raise DiagramError(f"element is not deferred to {w + '1'!r}")
        conj = multiply(multiply(x.invert(), g), x)
        return in_deferred_subgroup(conj, w + "11")
    if direction == "left":
        if not in_deferred_subgroup(g, w + "0"):
            raise DiagramError(f"element is not deferred to {w + '0'!r}")
        conj = multiply(multiply(x, g), x.invert())
        return in_deferred_subgroup(conj, w + "00")
    raise DiagramError(f"direction must be left or right, not {direction!r}")


def psi(g: Diagram, n: int) -> BraidWord:
    """Project an element deferred to 1^n onto its first n braid strands.

    Strand deletion ignores any cabling that happens past position n, so the
    result does not depend on the chosen deferred representative, and it
    distributes over products.
    """
    if n < 1:
        raise DiagramError("need n >= 1")
    rep = deferred_representative(g, "1" * n)
    if rep is None:
        raise DiagramError(f"element is not deferred to {'1' * n!r}")
    b = rep.braid
    for k in range(b.strands, n, -1):
        b = b.delete_strand(k)
    return b


def forget_braid(g: Diagram) -> Diagram:
    """Untangle the braid; the section of the inclusion of the unbraided group."""
    if not g.braid.is_pure():
        raise DiagramError("forgetting the braid needs a pure braid")
    return _reduced(Diagram(g.neg, BraidWord.identity(g.strands), g.pos))


def tail_conjugator(w: str) -> Diagram:
    """A diagram conjugating the w-deferred subgroup onto the 1^n-deferred one.

    The braid is the palindromic word whose permutation is the transposition
    moving the leaf of w in its vine to the last position (empty when w is
    already all ones).
    """
    n = len(w)
    v = vine(w)
    k = v.leaf_index(w)
    if k == n + 1:
        letters: tuple[int, ...] = ()
    else:
        letters = tuple(range(k, n + 1)) + tuple(range(n - 1, k - 1, -1))
    return Diagram(
        Forest.of_tree(v), BraidWord(n + 1, letters), Forest.of_tree(vine("1" * n))
    )


def tail_conjugate(g: Diagram, w: str) -> Diagram:
    """Conjugate an element of the w-deferred subgroup into the 1^n-deferred one."""
    c = tail_conjugator(w)
    return multiply(multiply(c.invert(), g), c)


# -- sampling ---------------------------------------------------------------


def random_tree(rng, leaves: int) -> Tree:
    t = Tree.leaf()
    for _ in range(leaves - 1):
        t = t.split_leaf(rng.randint(1, t.num_leaves))
    return t


def random_deferred_tree(rng, w: str, below: int) -> Tree:
    """A random tree deferred to w with the given number of leaves below w."""
    sub = random_tree(rng, below)
    off_spine = tuple(a for a in vine(w).leaves if a != w)
    return Tree(off_spine + tuple(w + a for a in sub.leaves))


def random_pure_element(rng, leaves: int, braid_length: int, w: str = "") -> Diagram:
    """A random reduced pure-braid element; trees deferred to w when given."""
    if w:
        tneg = random_deferred_tree(rng, w, leaves)
        tpos = random_deferred_tree(rng, w, leaves)
    else:
        tneg = random_tree(rng, leaves)
        tpos = random_tree(rng, leaves)
    b = random_pure_word(rng, tneg.num_leaves, braid_length)
    return _reduced(Diagram(Forest.of_tree(tneg), b, Forest.of_tree(tpos)))


def random_f_element(rng, leaves: int) -> Diagram:
    tneg = random_tree(rng, leaves)
    tpos = random_tree(rng, leaves)
    return _reduced(
        Diagram(
            Forest.of_tree(tneg),
            BraidWord.identity(leaves),
            Forest.of_tree(tpos),
        )
    )
