import random

import pytest

from braidedthompson.braid import BraidWord, full_twist
from braidedthompson.diagram import (
    Diagram,
    DiagramError,
    conjugation_check,
    deferred_representative,
    forget_braid,
    hnn_rewrite,
    in_deferred_subgroup,
    multiply,
    power,
    psi,
    random_f_element,
    random_pure_element,
    tail_conjugate,
    tail_conjugator,
    x_gen,
)
from braidedthompson.forest import Forest, Tree, vine


def caret_diagram(letters):
    """Two-leaf trees joined by the given braid word."""
    t = Forest.of_tree(Tree(("0", "1")))
    return Diagram(t, BraidWord(2, letters), t)


class TestBasics:
    def test_invariant(self):
        with pytest.raises(DiagramError):
            Diagram(Forest.trivial(2), BraidWord.identity(3), Forest.trivial(3))

    def test_identity(self):
        idm = Diagram.identity()
        assert idm.is_element()
        assert idm.reduced() == idm

    def test_x_gen_shapes(self):
        x = x_gen("")
        assert x.neg.trees[0].leaves == ("00", "01", "1")
        assert x.pos.trees[0].leaves == ("0", "10", "11")
        assert x.braid.letters == ()
        assert x.is_element() and x.is_reduced()
        assert x_gen("1").neg.trees[0] == vine("101")

    def test_invert_formula(self):
        ix = x_gen("").invert()
        assert ix.neg.trees[0] == vine("10")
        assert ix.pos.trees[0] == vine("01")

    def test_classify(self):
        assert x_gen("").classify() == {"in_F": True, "in_Fbr": True}
        assert caret_diagram((1,)).classify() == {"in_F": False, "in_Fbr": False}
        assert caret_diagram((1, 1)).classify() == {"in_F": False, "in_Fbr": True}

    def test_json_roundtrip(self):
        d = caret_diagram((1, 1))
        assert Diagram.from_json(d.to_json()) == d
        with pytest.raises(DiagramError):
            Diagram.from_json({"neg": []})


class TestExpandReduce:
    def test_expand_identity(self):
        d = Diagram.identity().expand(1)
        assert d.pos.trees[0].leaves == ("0", "1")
        assert d.neg.trees[0].leaves == ("0", "1")

    def test_expand_cables_the_braid(self):
        d = caret_diagram((1, 1)).expand(1)
        assert d.pos.trees[0].leaves == ("00", "01", "1")
        assert d.neg.trees[0].leaves == ("00", "01", "1")
        wm = d.braid.winding_matrix()
        assert wm[(1, 2)] == 0
        assert wm[(1, 3)] == 1
        assert wm[(2, 3)] == 1

    def test_single_crossing_is_irreducible(self):
        d = caret_diagram((1,))
        assert d.reduced() == d

    def test_trivial_caret_pair_reduces(self):
        d = caret_diagram(())
        assert d.reduced() == Diagram.identity()

    def test_expand_then_reduce(self):
        rng = random.Random(11)
        for _ in range(25):
            g = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 6))
            d = g
            for _ in range(3):
                d = d.expand(rng.randint(1, d.pos.num_leaves))
            assert d.reduced() == g

    def test_confluence(self):
        rng = random.Random(12)
        for _ in range(30):
            g = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 6))
            seen = set()
            for _ in range(3):
                d = g
                for _ in range(5):
                    d = d.expand(rng.randint(1, d.pos.num_leaves))
                seen.add(d.reduced())
            assert seen == {g}


class TestGroupStructure:
    def test_inverse_law(self):
        rng = random.Random(13)
        for _ in range(15):
            g = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 6))
            assert multiply(g, g.invert()).equals(Diagram.identity())
            assert multiply(g.invert(), g).equals(Diagram.identity())

    def test_identity_law(self):
        rng = random.Random(14)
        for _ in range(10):
            g = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 6))
            assert multiply(g, Diagram.identity()).equals(g)
            assert multiply(Diagram.identity(), g).equals(g)

    def test_associativity_on_pure_elements(self):
        rng = random.Random(15)
        for _ in range(12):
            a = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 5))
            b = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 5))
            c = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 5))
            assert multiply(multiply(a, b), c).equals(multiply(a, multiply(b, c)))

    def test_purity_closure(self):
        rng = random.Random(16)
        for _ in range(10):
            a = random_pure_element(rng, 3, 4)
            b = random_pure_element(rng, 3, 4)
            assert multiply(a, b).braid.is_pure()

    def test_f_relation(self):
        assert multiply(x_gen("1"), x_gen("")).equals(
            multiply(x_gen(""), x_gen("11"))
        )

    def test_equals_is_class_equality(self):
        g = x_gen("0")
        assert g.equals(g.expand(2))
        assert not g.equals(x_gen("1"))
        t = Forest.of_tree(Tree(("0", "1")))
        tw = Diagram(t, full_twist(2), t)
        assert not tw.equals(caret_diagram(()))

    def test_power(self):
        x = x_gen("")
        assert power(x, 0).equals(Diagram.identity())
        assert power(x, 2).equals(multiply(x, x))
        assert power(x, -1).equals(x.invert())


class TestDeferred:
    def test_examples(self):
        assert in_deferred_subgroup(x_gen("1"), "1")
        assert not in_deferred_subgroup(x_gen(""), "1")
        assert not in_deferred_subgroup(x_gen(""), "0")
        assert in_deferred_subgroup(Diagram.identity(), "0110")

    def test_nested(self):
        assert in_deferred_subgroup(x_gen("10"), "10")
        assert in_deferred_subgroup(x_gen("10"), "1")
        assert in_deferred_subgroup(x_gen("10"), "")

    def test_requires_pure(self):
        with pytest.raises(DiagramError):
            in_deferred_subgroup(caret_diagram((1,)), "1")

    def test_class_invariance(self):
        rng = random.Random(17)
        for _ in range(10):
            g = random_pure_element(rng, rng.randint(1, 3), rng.randint(0, 4), w="1")
            d = g
            for _ in range(3):
                d = d.expand(rng.randint(1, d.pos.num_leaves))
            assert in_deferred_subgroup(d, "1")

    def test_representative_is_deferred(self):
        rep = deferred_representative(x_gen("1"), "1")
        assert rep is not None
        assert rep.neg.trees[0].is_deferred("1")
        assert rep.pos.trees[0].is_deferred("1")

    def test_subgroup_closure(self):
        rng = random.Random(18)
        for _ in range(8):
            g = random_pure_element(rng, rng.randint(1, 3), rng.randint(0, 4), w="10")
            h = random_pure_element(rng, rng.randint(1, 3), rng.randint(0, 4), w="10")
            assert in_deferred_subgroup(multiply(g, h), "10")
            assert in_deferred_subgroup(g.invert(), "10")


class TestHnn:
    def test_stable_letter_powers(self):
        x = x_gen("")
        assert hnn_rewrite(x, "", "left")[0::2] == (1, 0)
        assert hnn_rewrite(x, "", "left")[1].equals(Diagram.identity())
        x2 = multiply(x, x)
        k_minus, h, k_plus = hnn_rewrite(x2, "", "left")
        assert (k_minus, k_plus) == (2, 0)
        assert h.equals(Diagram.identity())

    def test_already_deferred_deeper(self):
        g = x_gen("1")
        k_minus, h, k_plus = hnn_rewrite(g, "", "left")
        assert (k_minus, k_plus) == (0, 0)
        assert h.equals(g)

    def test_reconstruction(self):
        rng = random.Random(19)
        for w in ["", "0", "1", "10"]:
            xw = x_gen(w)
            for _ in range(4):
                g = random_pure_element(rng, rng.randint(1, 3), rng.randint(0, 4), w=w)
                for side in ("left", "right"):
                    k_minus, h, k_plus = hnn_rewrite(g, w, side)
                    target = w + ("1" if side == "left" else "0")
                    assert in_deferred_subgroup(h, target)
                    if side == "left":
                        back = multiply(
                            multiply(power(xw, k_minus), h), power(xw, -k_plus)
                        )
                    else:
                        back = multiply(
                            multiply(power(xw, -k_minus), h), power(xw, k_plus)
                        )
                    assert back.equals(g)

    def test_rejects_non_members(self):
        with pytest.raises(DiagramError):
            hnn_rewrite(x_gen(""), "0", "left")


class TestConjugation:
    def test_random_deferred_conjugates(self):
        rng = random.Random(20)
        for w in ["", "0"]:
            for _ in range(4):
                g = random_pure_element(
                    rng, rng.randint(1, 3), rng.randint(0, 4), w=w + "1"
                )
                assert conjugation_check(g, w, "right")
            for _ in range(4):
                g = random_pure_element(
                    rng, rng.randint(1, 3), rng.randint(0, 4), w=w + "0"
                )
                assert conjugation_check(g, w, "left")

    def test_identity(self):
        assert conjugation_check(Diagram.identity(), "", "right")

    def test_generator(self):
        assert conjugation_check(x_gen("1"), "", "right")
        assert conjugation_check(x_gen("0"), "", "left")


class TestPsi:
    def test_trivial_on_generators(self):
        for n in (1, 2, 3):
            assert psi(x_gen("1" * n), n).letters == ()

    def test_full_twist_passthrough(self):
        # cable a full twist on the first two strands under a deferred tree
        t = Forest.of_tree(Tree(("0", "10", "11")))
        w = full_twist(2).double_strand(2)  # strands 1,2 twist; strand 3 inert
        g = Diagram(t, BraidWord(3, w.letters), t)
        assert psi(g, 2).equals(full_twist(2))

    def test_homomorphism(self):
        rng = random.Random(21)
        for n in (2, 3):
            for _ in range(8):
                g = random_pure_element(
                    rng, rng.randint(1, 3), rng.randint(0, 5), w="1" * n
                )
                h = random_pure_element(
                    rng, rng.randint(1, 3), rng.randint(0, 5), w="1" * n
                )
                lhs = psi(multiply(g, h), n)
                rhs = psi(g, n).compose(psi(h, n))
                assert lhs.equals(rhs)

    def test_well_defined(self):
        rng = random.Random(22)
        g = random_pure_element(rng, 3, 5, w="11")
        base = psi(g, 2)
        d = deferred_representative(g, "11")
        for _ in range(5):
            # any expansion stays in the same class, so the projection agrees
            k = rng.randint(1, d.pos.num_leaves)
            d = d.expand(k)
            assert psi(d, 2).equals(base)


class TestForgetBraid:
    def test_kills_pure_twist(self):
        assert forget_braid(caret_diagram((1, 1))).equals(Diagram.identity())

    def test_section(self):
        assert forget_braid(x_gen("10")).equals(x_gen("10"))

    def test_homomorphism(self):
        rng = random.Random(23)
        for _ in range(8):
            g = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 5))
            h = random_pure_element(rng, rng.randint(1, 4), rng.randint(0, 5))
            assert forget_braid(multiply(g, h)).equals(
                multiply(forget_braid(g), forget_braid(h))
            )

    def test_rejects_non_pure(self):
        with pytest.raises(DiagramError):
            forget_braid(caret_diagram((1,)))


class TestTailConjugator:
    def test_all_ones_is_braidless(self):
        c = tail_conjugator("11")
        assert c.braid.letters == ()

    def test_single_zero(self):
        c = tail_conjugator("0")
        assert c.neg.trees[0].leaves == ("0", "1")
        assert c.braid.letters == (1,)
        assert c.pos.trees[0].leaves == ("0", "1")

    def test_permutation_is_transposition(self):
        for w in ["0", "00", "01", "10", "010"]:
            c = tail_conjugator(w)
            n = len(w)
            k = vine(w).leaf_index(w)
            images = c.braid.permutation().images
            expected = list(range(1, n + 2))
            expected[k - 1], expected[n] = expected[n], expected[k - 1]
            assert images == tuple(expected)

    def test_conjugation_lands_in_tail_subgroup(self):
        rng = random.Random(24)
        for w in ["0", "10", "00"]:
            for _ in range(3):
                g = random_pure_element(rng, rng.randint(1, 3), rng.randint(0, 4), w=w)
                assert in_deferred_subgroup(tail_conjugate(g, w), "1" * len(w))


class TestFElements:
    def test_sampler_is_braidless(self):
        rng = random.Random(25)
        g = random_f_element(rng, 5)
        assert g.classify()["in_F"]
