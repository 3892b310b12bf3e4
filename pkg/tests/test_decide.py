import itertools
import random

import pytest

from shufflekit.automata import compile_regex, from_finite_lang, minimize
from shufflekit.core import Alphabet, Lang
from shufflekit.decide import (
    Verdict,
    Witness,
    member_general_shuffle,
    member_iterated,
    member_shuffle1,
    member_shuffle2,
    replay,
    shuffle2_intersect_regular,
    shuffle2_words_intersect_regular,
)
from shufflekit.errors import AlphabetMismatch, EmptyArity, NodeBudgetExceeded
from shufflekit.shuffle import general_shuffle_n, iterated_shuffle, shuffle2_n_def

ABC = Alphabet("abc")
L3 = Lang(ABC, frozenset(["a", "bb", "c"]))


def brute_least_offsets(w, us):
    # smallest offset tuple in lexicographic order whose replay is w
    bound = sum(map(len, us))
    for ks in itertools.product(range(bound + 1), repeat=len(us)):
        if replay(us, ks) == w:
            return ks
    return None


class TestMemberShuffle2:
    def test_example_words(self):
        v = member_shuffle2("bacb", "bb", "a", "c")
        assert v and v.witness.replay() == "bacb"
        assert v.witness.mode == "shuffle2"
        assert not member_shuffle2("bacb", "a", "bb", "c")

    def test_length_and_letters_prefilter(self):
        v = member_shuffle2("abcbb", "a", "bb", "c")
        assert not v and v.nodes_explored == 0
        assert not member_shuffle2("aacb", "a", "bb", "c").nodes_explored

    @pytest.mark.parametrize("seed", range(6))
    def test_witness_is_least_offset_tuple(self, seed):
        rng = random.Random(seed)
        t = tuple("".join(rng.choice("ab") for _ in range(rng.randint(0, 3))) for _ in range(3))
        for w in shuffle2_n_def(*t):
            v = member_shuffle2(w, *t)
            assert v.witness.offsets == brute_least_offsets(w, t)

    def test_empty_arguments(self):
        assert member_shuffle2("", "", "")
        assert member_shuffle2("ab", "", "ab").witness.offsets == (0, 0)
        with pytest.raises(EmptyArity):
            member_shuffle2("a")

    def test_budget_is_inconclusive(self):
        us = ["ab" * 3, "ba" * 3, "ab" * 3]
        w = "a" * 9 + "b" * 9
        with pytest.raises(NodeBudgetExceeded) as info:
            member_shuffle2(w, *us, node_budget=3)
        verdict = info.value.verdict
        assert verdict.timed_out and verdict.answer is False
        assert info.value.nodes_explored > 3


class TestOtherDeciders:
    def test_shuffle1(self):
        assert member_shuffle1("abcb", "a", "bb", "c")
        assert not member_shuffle1("abbc", "a", "bb", "c")
        with pytest.raises(EmptyArity):
            member_shuffle1("a")

    def test_general(self):
        words = ("ab", "ba", "a")
        every = general_shuffle_n(*words)
        for cand in map("".join, itertools.product("ab", repeat=5)):
            assert member_general_shuffle(cand, *words) == (cand in every)

    def test_iterated(self):
        lang = Lang(ABC, frozenset(["abc"]))
        v = member_iterated("aabbcc", lang, 1)
        assert v and v.witness.arguments == ("abc", "abc") and v.witness.mode == "iterated1"
        assert not member_iterated("abcabc", lang, 1)
        v = member_iterated("abcabc", lang, 2)
        assert v and v.witness.replay() == "abcabc"
        assert member_iterated("", lang, 1).witness.arguments == ()

    def test_iterated_matches_enumeration(self):
        lang = Lang(Alphabet("ab"), frozenset(["a", "ab", "bb"]))
        for variant in (1, 2, "general"):
            every = iterated_shuffle(lang, variant, 5)
            for w in Alphabet("ab").words_upto(5):
                assert bool(member_iterated(w, lang, variant)) == (w in every), (variant, w)


class TestIntersection:
    def test_bacb_needs_a_rotation(self):
        v = shuffle2_intersect_regular(L3, 3, "bacb")
        assert v
        args = v.witness.arguments
        assert args in [("bb", "a", "c"), ("a", "c", "bb"), ("c", "bb", "a")]
        assert v.witness.replay() == v.witness.word == "bacb"

    def test_a_star(self):
        # (a, a, a) is a tuple over L, so a* is met
        v = shuffle2_intersect_regular(L3, 3, "a*")
        assert v and v.witness.arguments == ("a", "a", "a") and v.witness.word == "aaa"
        assert not shuffle2_words_intersect_regular(("a", "bb", "c"), "a*", ABC)

    def test_empty_language(self):
        v = shuffle2_intersect_regular(Lang(ABC), 3, "a*")
        assert v == Verdict(False)

    def test_automaton_inputs(self):
        lang_dfa = from_finite_lang(L3)
        regular = minimize(compile_regex("b(a|b|c)*", ABC))
        v = shuffle2_intersect_regular(lang_dfa, 2, regular)
        assert v and regular.accepts(v.witness.word)
        assert v.witness.arguments == ("a", "bb")

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            shuffle2_intersect_regular(L3, 2, compile_regex("a", Alphabet("ab")))

    def test_arity(self):
        with pytest.raises(EmptyArity):
            shuffle2_intersect_regular(L3, 0, "a")

    def test_budget(self):
        lang = Lang(Alphabet("ab"), frozenset(["ab", "ba", "aab"]))
        with pytest.raises(NodeBudgetExceeded):
            shuffle2_intersect_regular(lang, 3, "@empty|bbbbbbbbb", node_budget=5)


def test_witness_replay_helper():
    w = Witness(("bb", "a", "c"), (0, 0, 0), "bacb", "shuffle2")
    assert w.replay() == w.word
    assert replay(("a", "bb", "c"), (1, 0, 0)) == "bcab"
    assert replay(("a", "bb", "c"), (0, 0, 0)) == "abcb"
