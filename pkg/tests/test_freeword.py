import random

import pytest
from hypothesis import given, strategies as st

from nctoric.errors import ParseError, RankMismatch
from nctoric.freeword import (ReducedWord, abelianize, canonical_lift,
                              compile_submonoid, format_word, identity_word,
                              is_unit_in, member, parse_word, word_inv,
                              word_mul, words_up_to)
from oracles import dyck_membership, enumerate_products, random_reduced_word


def W(text, rank=2):
    return parse_word(text, rank)


@st.composite
def words(draw, rank=2, max_len=6):
    alphabet = [s * i for i in range(1, rank + 1) for s in (1, -1)]
    letters = []
    for _ in range(draw(st.integers(0, max_len))):
        choices = [a for a in alphabet if not letters or a != -letters[-1]]
        letters.append(draw(st.sampled_from(choices)))
    return ReducedWord(letters, rank)


class TestWords:
    @given(words(), words(), words())
    def test_associative(self, a, b, c):
        assert word_mul(word_mul(a, b), c) == word_mul(a, word_mul(b, c))

    @given(words())
    def test_identity_and_inverse(self, a):
        e = identity_word(2)
        assert word_mul(a, e) == a == word_mul(e, a)
        assert word_mul(a, word_inv(a)) == e
        assert word_mul(word_inv(a), a) == e

    @given(words(), words())
    def test_abelianize_homomorphism(self, a, b):
        va = abelianize(a)
        vb = abelianize(b)
        assert abelianize(word_mul(a, b)) == tuple(x + y for x, y in zip(va, vb))

    def test_junction_cancellation(self):
        assert word_mul(W("z1 z2"), W("z2^-1 z1")) == W("z1 z1")
        assert word_mul(W("z1 z2 z2"), W("z2^-2 z1^-1")) == identity_word(2)

    def test_reduction_invariant(self):
        with pytest.raises(ValueError):
            ReducedWord((1, -1), 2)
        with pytest.raises(ValueError):
            ReducedWord((3,), 2)

    def test_rank_mismatch(self):
        with pytest.raises(RankMismatch):
            word_mul(W("z1", 1), W("z1", 2))

    def test_figure_values(self):
        g1 = W("z1 z2^3 z1^2 z2^-2 z1^-1 z2 z1^2 z2^-2 z1^-1 z2^-1 z1 z2^-1 z1^-3")
        g2 = W("z2^-2 z1^-1 z2 z1^-1 z2 z1^-1 z2^3 z1 z2^-2 z1^2 z2^-1")
        assert abelianize(g1) == (1, -2)
        assert abelianize(g2) == (0, 0)

    @given(st.lists(st.integers(-4, 4), min_size=1, max_size=4))
    def test_canonical_lift_section(self, vec):
        assert abelianize(canonical_lift(tuple(vec))) == tuple(vec)

    def test_lift_example(self):
        assert canonical_lift((2, -1)) == W("z1 z1 z2^-1")
        assert canonical_lift((0, 0)) == identity_word(2)


class TestLiterals:
    def test_round_trip(self):
        for text in ["e", "z1", "z1 z2^-1", "z1^3 z2^-2 z1^-1"]:
            w = parse_word(text, 2)
            assert parse_word(format_word(w), 2) == w

    def test_bad_index(self):
        with pytest.raises(ParseError):
            parse_word("z1 z3", 2)
        with pytest.raises(ParseError):
            parse_word("z0", 2)
        with pytest.raises(ParseError):
            parse_word("w1", 2)


class TestSubmonoids:
    def test_subgroup_of_one_letter(self):
        s = compile_submonoid([W("z1"), W("z1^-1")], 2)
        assert s.member(W("z1^-3"))
        assert not s.member(W("z2"))
        assert is_unit_in(s, W("z1"))

    def test_strict_monoid(self):
        s = compile_submonoid([W("z1 z2")], 2)
        assert not s.member(W("z1"))
        assert s.member(W("z1 z2 z1 z2"))
        assert not is_unit_in(s, W("z1 z2"))

    def test_hidden_member(self):
        s = compile_submonoid([W("z1"), W("z1^-1 z2")], 2)
        assert s.member(W("z2"))
        fact = s.factorization(W("z2"))
        assert fact is not None
        prod = identity_word(2)
        for gi in fact:
            prod = word_mul(prod, s.generators[gi])
        assert prod == W("z2")

    def test_parity(self):
        s = compile_submonoid([W("z1^2")], 2)
        assert not s.member(W("z1^3"))
        assert s.member(W("z1^4"))

    def test_identity_always_member(self):
        for gens in ([], [W("z1 z2")], [W("z2^-1")]):
            assert compile_submonoid(gens, 2).member(identity_word(2))

    def test_unit_with_explicit_inverse(self):
        s = compile_submonoid([W("z1 z2"), W("z2^-1 z1^-1")], 2)
        assert is_unit_in(s, W("z1 z2"))

    def test_cancellation_only_through_products(self):
        s = compile_submonoid([W("z1 z2"), W("z2^-1")], 2)
        assert s.member(W("z1"))

    def test_member_wrapper(self):
        s = compile_submonoid([W("z1 z2")], 2)
        ok, fact = member(s, W("z1 z2 z1 z2"), factorize=True)
        assert ok and fact == [0, 0]

    def test_oracle_agreement(self):
        rng = random.Random(97)
        for _ in range(25):
            gens = [random_reduced_word(rng, 2, 3) for _ in range(3)]
            s = compile_submonoid(gens, 2)
            oracle = dyck_membership(gens, 2)
            for w in words_up_to(2, 5):
                assert s.member(w) == oracle(w), (gens, w)

    def test_products_always_accepted(self):
        rng = random.Random(13)
        for _ in range(10):
            gens = [random_reduced_word(rng, 2, 3) for _ in range(3)]
            s = compile_submonoid(gens, 2)
            for p in enumerate_products(gens, 2, 5):
                assert s.member(p)
