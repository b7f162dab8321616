"""Braid words on a fixed number of strands, with exact decision procedures.

A braid on n strands is stored as a word in the Artin generators: a tuple of
nonzero integers, where the letter +i stands for the positive crossing of the
strands in positions i and i+1 (the strand in position i passes under the
strand in position i+1) and -i for its inverse.  Words are read left to right
as the picture is scanned bottom to top, and strands are numbered by their
position at the bottom.

Consequences of that convention:

* ``compose(u, v)`` is plain concatenation (u happens first, below v).
* ``permutation(compose(u, v)) == permutation(v) * permutation(u)`` where
  ``*`` is the usual composition of maps.

Two independent solutions of the word problem are provided.  The first lets
the braid act on a free group of rank n (a faithful action, used as the
correctness baseline).  The second is a handle-rewriting procedure that is
much faster on long words.  ``BraidWord.is_trivial`` screens with cheap
invariants (underlying permutation, pairwise winding numbers) before running
an engine; the raw engines stay available for cross-validation.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class BraidError(ValueError):
    """Raised when a braid operation is applied outside its domain."""


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    """Cancel adjacent inverse pairs until none remain (stack scan)."""
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}, stored by its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @staticmethod
    def identity(n: int) -> Permutation:
        return Permutation(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        """Standard composition: (p * q)(i) = p(q(i))."""
        if self.degree != other.degree:
            raise BraidError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(j == i for i, j in enumerate(self.images, start=1))


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands`` strands."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise BraidError(f"need at least one strand, got {self.strands}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"letter {x} invalid on {self.strands} strands")

    # -- construction ------------------------------------------------

    @staticmethod
    def identity(n: int) -> BraidWord:
        return BraidWord(n, ())

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"BraidWord({self.strands}, {list(self.letters)})"

    # -- basic algebra -----------------------------------------------

    def compose(self, other: BraidWord) -> BraidWord:
        """The product self followed by other (concatenate, then cancel)."""
        if self.strands != other.strands:
            raise BraidError("cannot compose braids on different strand counts")
        return BraidWord(self.strands, free_reduce(self.letters + other.letters))

    __mul__ = compose

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple(-x for x in reversed(self.letters)))

    def free_reduced(self) -> BraidWord:
        return BraidWord(self.strands, free_reduce(self.letters))

    def permutation(self) -> Permutation:
        """Underlying permutation: strand starting in position i ends in position images[i-1]."""
        at = list(range(self.strands + 1))  # at[p] = strand currently in position p
        for x in self.letters:
            k = abs(x)
            at[k], at[k + 1] = at[k + 1], at[k]
        images = [0] * self.strands
        for p in range(1, self.strands + 1):
            images[at[p] - 1] = p
        return Permutation(tuple(images))

    def is_pure(self) -> bool:
        return self.permutation().is_identity()

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    # -- word problem --------------------------------------------------

    def is_trivial(self, engine: str = "auto") -> bool:
        """Decide whether the word represents the identity braid.

        ``engine`` is one of ``auto`` (cheap invariant screens, then handle
        rewriting), ``handle`` or ``action``.
        """
        if engine == "action":
            return trivial_by_action(self.strands, self.letters)
        if engine == "handle":
            return trivial_by_handle_reduction(self.strands, self.letters)
        if engine != "auto":
            raise BraidError(f"unknown engine {engine!r}")
        return _is_trivial_screened(self.strands, free_reduce(self.letters))

    def equals(self, other: BraidWord) -> bool:
        """Group-element equality (not word identity)."""
        if self.strands != other.strands:
            return False
        return self.compose(other.inverse()).is_trivial()

    # -- strand surgery ------------------------------------------------

    def delete_strand(self, i: int) -> BraidWord:
        """Remove the strand that starts in position i, renumbering the rest.

        Crossings involving the removed strand are dropped; its position is
        tracked through the word, so the operation is defined for arbitrary
        braids.
        """
        n = self.strands
        if n < 2:
            raise BraidError("cannot delete a strand of a one-strand braid")
        if not 1 <= i <= n:
            raise BraidError(f"strand index {i} out of range 1..{n}")
        pos = i
        out: list[int] = []
        for x in self.letters:
            k = abs(x)
            if k == pos:
                pos = k + 1
            elif k + 1 == pos:
                pos = k
            elif k > pos:
                out.append(x - 1 if x > 0 else x + 1)
            else:
                out.append(x)
        return BraidWord(n - 1, free_reduce(out))

    def double_strand(self, i: int) -> BraidWord:
        """Replace the strand starting in position i by two parallel copies.

        Every crossing involving that strand becomes two crossings of the
        same sign; the copies never cross each other.
        """
        n = self.strands
        if not 1 <= i <= n:
            raise BraidError(f"strand index {i} out of range 1..{n}")
        pos = i  # current position of the doubled strand in the original braid
        out: list[int] = []
        for x in self.letters:
            k = abs(x)
            s = 1 if x > 0 else -1
            if k == pos:
                # cable at (pos, pos+1) crosses the strand above it
                out.extend((s * (k + 1), s * k))
                pos = k + 1
            elif k + 1 == pos:
                # strand below crosses the cable at (pos, pos+1)
                out.extend((s * k, s * (k + 1)))
                pos = k
            elif k > pos:
                out.append(s * (k + 1))
            else:
                out.append(x)
        return BraidWord(n + 1, free_reduce(out))

    def winding_number(self, i: int, j: int) -> int:
        """Pairwise winding number of a pure braid: half the exponent sum
        after deleting every strand except i and j.  Normalised so that the
        square of a positive crossing has winding number 1."""
        n = self.strands
        if not (1 <= i < j <= n):
            raise BraidError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
        if not self.is_pure():
            raise BraidError("winding numbers are defined for pure braids only")
        w = self
        for k in range(n, 0, -1):
            if k != i and k != j:
                w = w.delete_strand(k)
        e = w.exponent_sum()
        assert e % 2 == 0, "pure two-strand braid must have even exponent sum"
        return e // 2

    def winding_matrix(self) -> dict[tuple[int, int], int]:
        return {
            (i, j): self.winding_number(i, j)
            for i in range(1, self.strands)
            for j in range(i + 1, self.strands + 1)
        }

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> dict:
        return {"strands": self.strands, "letters": list(self.letters)}

    @staticmethod
    def from_json(data: dict) -> BraidWord:
        if not isinstance(data, dict) or set(data) != {"strands", "letters"}:
            raise BraidError(f"not a braid object: {data!r}")
        strands = data["strands"]
        letters = data["letters"]
        if not isinstance(strands, int) or not isinstance(letters, list):
            raise BraidError("braid object fields have wrong types")
        return BraidWord(strands, tuple(int(x) for x in letters))


def half_twist(n: int) -> BraidWord:
    """The positive half twist: s_1..s_{n-1} s_1..s_{n-2} ... s_1 s_2 s_1."""
    if n < 1:
        raise BraidError("need at least one strand")
    letters: list[int] = []
    for top in range(n - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return BraidWord(n, tuple(letters))


def full_twist(n: int) -> BraidWord:
    """Square of the half twist; generates the center of the pure braid group."""
    d = half_twist(n)
    return d.compose(d)


# ---------------------------------------------------------------------------
# Engine A: the action on a free group of rank n.
#
# The positive crossing +i acts by x_i -> x_i x_{i+1} x_i^{-1}, x_{i+1} -> x_i
# and fixes the other generators.  The action is faithful, so a word is
# trivial exactly when every generator is sent to itself.  Images are built by
# substituting letter by letter, which computes the action of the reversed
# word; reversal preserves triviality, so the test is unaffected.
# ---------------------------------------------------------------------------


def _substitute(word: Sequence[int], table: dict[int, tuple[int, ...]]) -> tuple[int, ...]:
    out: list[int] = []
    for g in word:
        if g > 0:
            image = table.get(g, (g,))
        else:
            base = table.get(-g)
            image = (g,) if base is None else tuple(-h for h in reversed(base))
        for h in image:
            if out and out[-1] == -h:
                out.pop()
            else:
                out.append(h)
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _letter_table(letter: int) -> dict[int, tuple[int, ...]]:
    i = abs(letter)
    if letter > 0:
        return {i: (i, i + 1, -i), i + 1: (i,)}
    return {i: (i + 1,), i + 1: (-(i + 1), i, i + 1)}


def trivial_by_action(strands: int, letters: Sequence[int]) -> bool:
    """Word problem via the faithful action on a rank-n free group."""
    images: list[tuple[int, ...]] = [(g,) for g in range(1, strands + 1)]
    for letter in letters:
        table = _letter_table(letter)
        images = [_substitute(img, table) for img in images]
    return all(img == (g,) for g, img in enumerate(images, start=1))


# ---------------------------------------------------------------------------
# Engine B: handle rewriting.
#
# A handle is a factor  s_i^e v s_i^{-e}  whose interior v only uses
# generators of index > i.  Removing the outer pair and conjugating the
# interior occurrences of s_{i+1} by s_{i+1}^{-e} rewrites the word to an
# equivalent one; every maximal sequence of such rewrites terminates, and the
# terminal word is empty exactly for trivial braids (a nonempty terminal word
# uses its lowest generator with only one sign, and such words are never
# trivial).
# ---------------------------------------------------------------------------


def _find_handle(word: Sequence[int]) -> tuple[int, int] | None:
    """Leftmost-ending handle (a, b) with interior strictly above index |w[a]|."""
    for b, x in enumerate(word):
        j = abs(x)
        for a in range(b - 1, -1, -1):
            k = abs(word[a])
            if k > j:
                continue
            if word[a] == -x:
                return a, b
            break
    return None


def handle_reduced_word(letters: Sequence[int]) -> tuple[int, ...]:
    """Rewrite until no handle remains."""
    word = list(free_reduce(letters))
    while True:
        h = _find_handle(word)
        if h is None:
            return tuple(word)
        a, b = h
        i = abs(word[a])
        e = 1 if word[a] > 0 else -1
        mid: list[int] = []
        for x in word[a + 1 : b]:
            if abs(x) == i + 1:
                s = 1 if x > 0 else -1
                mid.extend((-e * (i + 1), s * i, e * (i + 1)))
            else:
                mid.append(x)
        word = list(free_reduce(word[:a] + mid + word[b + 1 :]))


def trivial_by_handle_reduction(strands: int, letters: Sequence[int]) -> bool:
    return handle_reduced_word(letters) == ()


@functools.lru_cache(maxsize=100_000)
def _is_trivial_screened(strands: int, letters: tuple[int, ...]) -> bool:
    if not letters:
        return True
    word = BraidWord(strands, letters)
    if not word.is_pure():
        return False
    # Pairwise windings are homomorphisms on pure braids, so any nonzero
    # value certifies nontriviality without running an engine.
    if any(v != 0 for v in word.winding_matrix().values()):
        return False
    return trivial_by_handle_reduction(strands, letters)


def random_word(rng, strands: int, length: int) -> BraidWord:
    """Uniform random letters; handy for sampling-based checks."""
    if strands < 2:
        return BraidWord.identity(strands)
    letters = []
    for _ in range(length):
        k = rng.randint(1, strands - 1)
        letters.append(k if rng.random() < 0.5 else -k)
    return BraidWord(strands, tuple(letters))


def lift_permutation(p: Permutation) -> BraidWord:
    """A positive braid word whose underlying permutation is p."""
    n = p.degree
    target = [p.inverse()(q) for q in range(1, n + 1)]  # strand wanted in position q
    arr = list(range(1, n + 1))
    letters: list[int] = []
    for q in range(n):
        j = arr.index(target[q])
        while j > q:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            letters.append(j)  # positions j, j+1 in 1-based terms
            j -= 1
    return BraidWord(n, tuple(letters))


def random_pure_word(rng, strands: int, length: int) -> BraidWord:
    """A random pure braid: a random word times a lift of its inverse permutation."""
    w = random_word(rng, strands, length)
    fix = lift_permutation(w.permutation().inverse())
    word = w.compose(fix)
    assert word.is_pure()
    return word


def all_words(strands: int, max_length: int) -> Iterator[BraidWord]:
    """Every word of length at most max_length (including the empty word)."""
    alphabet = [s * k for k in range(1, strands) for s in (1, -1)]
    stack: list[tuple[int, ...]] = [()]
    yield BraidWord(strands, ())
    while stack:
        prefix = stack.pop()
        if len(prefix) >= max_length:
            continue
        for a in alphabet:
            word = prefix + (a,)
            yield BraidWord(strands, word)
            stack.append(word)
