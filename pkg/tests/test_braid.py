import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidedthompson.braid import (
    BraidError,
    BraidWord,
    Permutation,
    all_words,
    free_reduce,
    full_twist,
    half_twist,
    handle_reduced_word,
    random_word,
    trivial_by_action,
    trivial_by_handle_reduction,
)


def words(max_strands=5, max_len=12):
    return st.integers(2, max_strands).flatmap(
        lambda n: st.lists(
            st.integers(1, n - 1).flatmap(lambda k: st.sampled_from([k, -k])),
            max_size=max_len,
        ).map(lambda ls: BraidWord(n, tuple(ls)))
    )


class TestBasics:
    def test_validation(self):
        with pytest.raises(BraidError):
            BraidWord(2, (2,))
        with pytest.raises(BraidError):
            BraidWord(3, (0,))
        with pytest.raises(BraidError):
            BraidWord(0, ())

    def test_free_reduce(self):
        assert free_reduce([1, -1]) == ()
        assert free_reduce([1, 2, -2, -1]) == ()
        assert free_reduce([1, 2, -2, 1]) == (1, 1)

    def test_permutation_convention(self):
        # strand 1 crosses under into position 2, then under into position 3
        assert BraidWord(3, (1, 2)).permutation().images == (3, 1, 2)

    def test_permutation_antihomomorphism(self):
        u = BraidWord(4, (1, 2))
        v = BraidWord(4, (3, 1))
        lhs = u.compose(v).permutation()
        rhs = v.permutation() * u.permutation()
        assert lhs == rhs

    def test_inverse(self):
        w = BraidWord(3, (1, -2, 1))
        assert w.inverse().letters == (-1, 2, -1)
        assert w.compose(w.inverse()).letters == ()

    def test_half_twist(self):
        assert half_twist(2).letters == (1,)
        assert half_twist(3).letters == (1, 2, 1)
        assert half_twist(4).letters == (1, 2, 3, 1, 2, 1)

    def test_full_twist_is_pure(self):
        for n in range(2, 6):
            assert full_twist(n).is_pure()
        assert not half_twist(3).is_pure()

    def test_json_roundtrip(self):
        w = BraidWord(4, (1, -3, 2))
        assert BraidWord.from_json(w.to_json()) == w
        with pytest.raises(BraidError):
            BraidWord.from_json({"strands": 3})


class TestWordProblem:
    def test_braid_relation(self):
        w = BraidWord(3, (1, 2, 1, -2, -1, -2))
        assert trivial_by_action(3, w.letters)
        assert trivial_by_handle_reduction(3, w.letters)
        assert w.is_trivial()

    def test_far_commutation(self):
        w = BraidWord(4, (1, 3, -1, -3))
        assert trivial_by_action(4, w.letters)
        assert trivial_by_handle_reduction(4, w.letters)

    def test_nontrivial(self):
        assert not BraidWord(2, (1, 1)).is_trivial()
        assert not BraidWord(3, (1,)).is_trivial()
        assert not full_twist(3).is_trivial()

    def test_equals(self):
        assert BraidWord(3, (1, 2, 1)).equals(BraidWord(3, (2, 1, 2)))
        assert not BraidWord(3, (1,)).equals(BraidWord(3, (2,)))
        assert not BraidWord(3, ()).equals(BraidWord(2, ()))

    def test_handle_reduction_terminal_words(self):
        assert handle_reduced_word((1, 2, 1, -2, -1, -2)) == ()
        # terminal words of nontrivial braids are nonempty
        assert handle_reduced_word((1, 1)) != ()

    def test_engines_agree_exhaustively(self):
        for w in all_words(3, 4):
            assert trivial_by_action(3, w.letters) == trivial_by_handle_reduction(
                3, w.letters
            )

    @settings(max_examples=200, deadline=None)
    @given(words())
    def test_engines_agree_random(self, w):
        a = trivial_by_action(w.strands, w.letters)
        b = trivial_by_handle_reduction(w.strands, w.letters)
        assert a == b
        assert w.is_trivial() == a

    @settings(max_examples=100, deadline=None)
    @given(words(max_len=8))
    def test_conjugate_of_identity_is_trivial(self, g):
        raw = g.letters + tuple(-x for x in reversed(g.letters))
        assert trivial_by_action(g.strands, raw)
        assert trivial_by_handle_reduction(g.strands, raw)

    @settings(max_examples=100, deadline=None)
    @given(words(max_len=8), words(max_len=8))
    def test_equals_invariant_under_relation_padding(self, g, h):
        if g.strands < 3 or h.strands != g.strands:
            return
        rel = (1, 2, 1, -2, -1, -2)
        padded = BraidWord(g.strands, g.letters + rel + h.letters)
        assert padded.equals(g.compose(h))


class TestStrandSurgery:
    def test_delete_examples(self):
        assert BraidWord(3, (1, 2, 1)).delete_strand(2).letters == (1,)
        assert BraidWord(2, (1, 1)).delete_strand(1).letters == ()
        # crossing not involving the deleted strand shifts down
        assert BraidWord(3, (2,)).delete_strand(1).letters == (1,)

    def test_double_examples(self):
        assert BraidWord(2, (1,)).double_strand(1).letters == (2, 1)
        assert BraidWord(2, (1,)).double_strand(2).letters == (1, 2)
        assert BraidWord(2, (1, 1)).double_strand(2).letters == (1, 2, 2, 1)

    def test_double_preserves_sign(self):
        assert BraidWord(2, (-1,)).double_strand(1).letters == (-2, -1)

    @settings(max_examples=150, deadline=None)
    @given(words(max_strands=4, max_len=8), st.integers(1, 4))
    def test_double_then_delete_roundtrip(self, g, i):
        if i > g.strands:
            return
        d = g.double_strand(i)
        assert d.delete_strand(i).equals(g)
        assert d.delete_strand(i + 1).equals(g)

    @settings(max_examples=100, deadline=None)
    @given(words(max_strands=4, max_len=8), st.integers(1, 4))
    def test_double_cable_never_self_crosses(self, g, i):
        if i > g.strands:
            return
        d = g.double_strand(i)
        if d.is_pure():
            assert d.winding_number(*sorted((i, i + 1))) in range(-len(g), len(g) + 1)

    def test_delete_is_homomorphism_on_pures(self):
        rng = random.Random(7)
        for _ in range(30):
            g = random_word(rng, 4, 6)
            h = random_word(rng, 4, 6)
            gh = g.compose(h)
            if not (g.is_pure() and h.is_pure()):
                continue
            for i in range(1, 5):
                assert gh.delete_strand(i).equals(
                    g.delete_strand(i).compose(h.delete_strand(i))
                )


class TestWinding:
    def test_full_twist_table(self):
        for n in range(2, 6):
            ft = full_twist(n)
            for (i, j), v in ft.winding_matrix().items():
                assert v == 1, (n, i, j)

    def test_generator_square(self):
        assert BraidWord(2, (1, 1)).winding_number(1, 2) == 1
        assert BraidWord(2, (-1, -1)).winding_number(1, 2) == -1

    def test_requires_pure(self):
        with pytest.raises(BraidError):
            BraidWord(2, (1,)).winding_number(1, 2)

    def test_distant_strands_unlinked(self):
        w = BraidWord(4, (1, 1))
        assert w.winding_number(3, 4) == 0
        assert w.winding_number(1, 2) == 1

    def test_additivity(self):
        rng = random.Random(3)
        found = 0
        while found < 20:
            g = random_word(rng, 4, 8)
            h = random_word(rng, 4, 8)
            if not (g.is_pure() and h.is_pure()):
                continue
            found += 1
            gh = g.compose(h)
            for key, v in gh.winding_matrix().items():
                assert v == g.winding_number(*key) + h.winding_number(*key)


class TestPermutation:
    def test_compose_and_invert(self):
        p = Permutation((2, 3, 1))
        assert (p * p.inverse()).is_identity()
        assert p.inverse().images == (3, 1, 2)

    def test_validation(self):
        with pytest.raises(BraidError):
            Permutation((1, 1))

    def test_call(self):
        p = Permutation((3, 1, 2))
        assert [p(i) for i in (1, 2, 3)] == [3, 1, 2]
