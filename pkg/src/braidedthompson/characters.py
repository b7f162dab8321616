"""Characters of the braided diagram group and finiteness decisions.

The abelianization of the pure-braided group is free of rank four.  An
element's image is read off any representative: the change in depth of the
leftmost and rightmost leaves, the winding number of the first strand around
the last, and the total winding between neighbouring strands.  Characters are
rational functionals in the dual basis, in that order.

The BNSR invariants of the group are known in closed form, so membership of
a character ray in each invariant is a sign check on the coefficients, and
the finiteness properties of a normal subgroup above the commutator subgroup
reduce to exact cone tests on the annihilator of its abelianized image.
"""

from __future__ import annotations

import dataclasses
from fractions import Fraction
from typing import Iterable, Sequence

from .braid import full_twist
from .diagram import Diagram, DiagramError
from .forest import Forest, Tree

__all__ = [
    "AbelianImage",
    "Character",
    "CharacterError",
    "FinitenessReport",
    "abelian_image",
    "center_character_value",
    "evaluate",
    "full_twist_element",
    "sigma_membership",
    "subgroup_finiteness",
]


class CharacterError(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class AbelianImage:
    """Value of the four defining characters on a group element."""

    left_depth: int
    right_depth: int
    end_winding: int
    adjacent_winding: int

    def __add__(self, other: AbelianImage) -> AbelianImage:
        return AbelianImage(
            self.left_depth + other.left_depth,
            self.right_depth + other.right_depth,
            self.end_winding + other.end_winding,
            self.adjacent_winding + other.adjacent_winding,
        )

    def __neg__(self) -> AbelianImage:
        return AbelianImage(
            -self.left_depth,
            -self.right_depth,
            -self.end_winding,
            -self.adjacent_winding,
        )

    def __iter__(self):
        return iter(
            (self.left_depth, self.right_depth, self.end_winding, self.adjacent_winding)
        )

    def is_zero(self) -> bool:
        return not any(self)


@dataclasses.dataclass(frozen=True)
class Character:
    """Rational coefficients against the four defining characters.

    The field names say which observable each coefficient multiplies.
    """

    left_depth: Fraction
    right_depth: Fraction
    end_winding: Fraction
    adjacent_winding: Fraction

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            object.__setattr__(self, f.name, Fraction(getattr(self, f.name)))

    def __iter__(self):
        return iter(
            (self.left_depth, self.right_depth, self.end_winding, self.adjacent_winding)
        )

    def is_zero(self) -> bool:
        return not any(self)

    def scaled(self, t) -> Character:
        t = Fraction(t)
        return Character(*(t * coeff for coeff in self))

    def to_json(self) -> dict:
        return {
            "left_depth": str(self.left_depth),
            "right_depth": str(self.right_depth),
            "end_winding": str(self.end_winding),
            "adjacent_winding": str(self.adjacent_winding),
        }

    @staticmethod
    def from_json(data: object) -> Character:
        if not isinstance(data, dict):
            raise CharacterError(f"not a character object: {data!r}")
        try:
            return Character(*(Fraction(data[f.name]) for f in dataclasses.fields(Character)))
        except (KeyError, ValueError) as exc:
            raise CharacterError(f"not a character object: {data!r}") from exc


@dataclasses.dataclass(frozen=True)
class FinitenessReport:
    """Outcome of the finiteness classification for a normal subgroup."""

    verdict: str
    witness: Character | None = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def abelian_image(g: Diagram) -> AbelianImage:
    """Image of a pure-braid element in the abelianization.

    Computed on the reduced representative; the value is the same on every
    representative because expanding a leaf deepens both trees in lockstep
    and cabling a strand changes no winding number that survives.
    """
    if not g.is_element():
        raise DiagramError("abelianization applies to single-tree diagrams")
    if not g.braid.is_pure():
        raise DiagramError("abelianization applies to pure-braid elements")
    d = g.reduced()
    tneg, tpos = d.neg.trees[0], d.pos.trees[0]
    b = d.braid
    n = b.strands
    end = b.winding_number(1, n) if n >= 2 else 0
    adjacent = sum(b.winding_number(i, i + 1) for i in range(1, n))
    return AbelianImage(
        len(tpos.leaves[0]) - len(tneg.leaves[0]),
        len(tpos.leaves[-1]) - len(tneg.leaves[-1]),
        end,
        adjacent,
    )


def evaluate(chi: Character, g: Diagram) -> Fraction:
    """Pair a character with an element."""
    image = abelian_image(g)
    return sum((c * v for c, v in zip(chi, image)), Fraction(0))


def sigma_membership(chi: Character, m: int) -> bool:
    """Whether the ray of a nonzero character lies in the m-th BNSR invariant.

    The first invariant omits exactly the rays of the two leaf-depth
    characters; every higher invariant omits the whole closed cone they span.
    Winding coefficients rescue a character at every level.
    """
    if chi.is_zero():
        raise CharacterError("the zero character has no ray")
    if m < 1:
        raise CharacterError(f"need m >= 1, got {m}")
    a, b, c, d = chi
    if c != 0 or d != 0:
        return True
    if m == 1:
        return not ((a > 0 and b == 0) or (b > 0 and a == 0))
    return not (a >= 0 and b >= 0)


def _nullspace(rows: Sequence[Sequence[Fraction]]) -> list[tuple[Fraction, ...]]:
    """Basis of the right nullspace of a matrix with four columns."""
    mat = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(4):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        lead = mat[r][col]
        mat[r] = [v / lead for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [v - f * w for v, w in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    basis = []
    for free in range(4):
        if free in pivots:
            continue
        vec = [Fraction(0)] * 4
        vec[free] = Fraction(1)
        for row, col in zip(mat, pivots):
            vec[col] = -row[free]
        basis.append(tuple(vec))
    return basis


def subgroup_finiteness(gens: Iterable) -> FinitenessReport:
    """Finiteness type of the normal subgroup with the given abelianized image.

    Only the lattice spanned by the images matters.  The subgroup fails to be
    finitely generated exactly when a leaf-depth character annihilates the
    lattice; it is finitely generated but not finitely presented exactly when
    some annihilating character lies strictly inside the cone of the two
    leaf-depth characters; otherwise it has every finiteness property.
    """
    rows = [tuple(Fraction(v) for v in g) for g in gens]
    if any(len(r) != 4 for r in rows):
        raise CharacterError("generator images must have four components")
    if all(r[0] == 0 for r in rows):
        return FinitenessReport("not_F1", Character(1, 0, 0, 0))
    if all(r[1] == 0 for r in rows):
        return FinitenessReport("not_F1", Character(0, 1, 0, 0))
    plane = _nullspace(rows + [(0, 0, 1, 0), (0, 0, 0, 1)])
    # two dimensions would put a lone depth character in the annihilator,
    # which the checks above already caught
    assert len(plane) <= 1
    if plane:
        a0, b0 = plane[0][0], plane[0][1]
        assert a0 != 0 and b0 != 0
        if a0 * b0 > 0:
            if a0 < 0:
                a0, b0 = -a0, -b0
            return FinitenessReport("F1_not_F2", Character(a0, b0, 0, 0))
    return FinitenessReport("F_infinity")


def center_character_value(chi: Character, n: int) -> Fraction:
    """Value of a character on the full-twist central element at n strands."""
    if n < 2:
        raise CharacterError(f"need n >= 2, got {n}")
    return chi.end_winding + (n - 1) * chi.adjacent_winding


def full_twist_element(tree: Tree, n: int) -> Diagram:
    """The element fixing a tree shape and fully twisting its leaf strands."""
    f = Forest.of_tree(tree)
    if f.num_leaves != n:
        raise DiagramError(f"tree has {f.num_leaves} leaves, expected {n}")
    return Diagram(f, full_twist(n), f)
