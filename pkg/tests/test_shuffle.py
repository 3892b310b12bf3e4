import itertools
import random

import pytest

from shufflekit.core import Alphabet, Lang, pad_left
from shufflekit.errors import EmptyArity, NodeBudgetExceeded
from shufflekit.shuffle import (
    IterBudget,
    Shuffle2Algo,
    ShuffleVariant,
    general_shuffle,
    general_shuffle_n,
    init_literal_shuffle_binary,
    iterated_shuffle,
    shuffle1_n,
    shuffle1_n_lang,
    shuffle2_n,
    shuffle2_n_columns,
    shuffle2_n_def,
    shuffle2_n_factor,
    shuffle2_n_lang,
    shuffle2_n_offsets,
    shuffle_words,
)

ABBC = {"bbac", "babc", "abcb", "acbb", "abbc", "bbca", "bcba", "bcab", "cbab", "cabb", "cbba"}
BABC = {"bbac", "babc", "bacb", "abcb", "abbc", "acbb", "cbab", "cbba", "cabb", "bcba", "bbca"}


# Independent oracles: plain strings with "$" as the pad, no shared helpers.

def oracle_shuffle1(*us):
    width = max(len(u) for u in us)
    rows = [u + "$" * (width - len(u)) for u in us]
    return "".join(row[j] for j in range(width) for row in rows).replace("$", "")


def oracle_shuffle2(*us):
    """Try every start offset up to the total length."""
    bound = sum(len(u) for u in us)
    out = set()
    for ks in itertools.product(range(bound + 1), repeat=len(us)):
        out.add(oracle_shuffle1(*("$" * k + u for k, u in zip(ks, us))))
    return out


def oracle_general(u, v):
    out = set()
    n = len(u) + len(v)
    for spots in itertools.combinations(range(n), len(u)):
        iu, iv, w = iter(u), iter(v), []
        for j in range(n):
            w.append(next(iu) if j in spots else next(iv))
        out.add("".join(w))
    return out


def random_tuples(seed, count, sigma="abc", max_n=3, max_word=3):
    rng = random.Random(seed)
    return [tuple("".join(rng.choice(sigma) for _ in range(rng.randint(0, max_word)))
                  for _ in range(rng.randint(1, max_n)))
            for _ in range(count)]


class TestGolden:
    def test_initial_literal(self):
        assert shuffle1_n("a", "bb", "c") == "abcb"

    def test_literal_sets(self):
        assert shuffle2_n_def("a", "bb", "c") == ABBC
        assert shuffle2_n_def("bb", "a", "c") == BABC

    def test_non_commutative_word(self):
        assert "bacb" in shuffle2_n_def("bb", "a", "c")
        assert "bacb" not in shuffle2_n_def("a", "bb", "c")

    @pytest.mark.parametrize("fn", [shuffle2_n_offsets, shuffle2_n_columns])
    def test_other_algorithms(self, fn):
        assert fn("a", "bb", "c") == ABBC
        assert fn("bb", "a", "c") == BABC

    def test_factor_algorithm_example(self):
        # the two-phase factor formula loses abbc and several other words here
        assert shuffle2_n_factor("a", "bb", "c") == ABBC

    def test_padded_arguments(self):
        assert shuffle1_n(pad_left("ab", 1), "c") == "cab"


class TestAgainstOracle:
    @pytest.mark.parametrize("t", random_tuples(1, 120))
    def test_shuffle1(self, t):
        assert shuffle1_n(*t) == oracle_shuffle1(*t)

    @pytest.mark.parametrize("t", random_tuples(2, 120))
    def test_shuffle2_all_exact_algorithms(self, t):
        expected = oracle_shuffle2(*t)
        assert shuffle2_n_def(*t) == expected
        assert shuffle2_n_offsets(*t) == expected
        assert shuffle2_n_columns(*t) == expected

    @pytest.mark.parametrize("t", random_tuples(3, 120))
    def test_factor_output_shape(self, t):
        # whatever else it gets wrong, every factor word is a general interleaving
        total = sum(map(len, t))
        for w in shuffle2_n_factor(*t):
            assert len(w) == total and sorted(w) == sorted("".join(t))

    def test_factor_on_one_argument(self):
        assert shuffle2_n_factor("abc") == {"abc"}

    @pytest.mark.parametrize("u,v", [("", ""), ("a", ""), ("ab", "c"), ("abc", "ab"), ("aab", "ba")])
    def test_general_binary(self, u, v):
        assert general_shuffle(u, v) == oracle_general(u, v)

    def test_general_ternary(self):
        got = general_shuffle_n("ab", "c", "d")
        expected = set()
        for w in oracle_general("ab", "c"):
            expected |= oracle_general(w, "d")
        assert got == expected
        assert len(got) == 12


class TestStructure:
    def test_empty_arguments_are_ignored(self):
        assert shuffle2_n_def("a", "", "bb", "c") == ABBC
        assert shuffle1_n("", "a", "bb", "", "c") == "abcb"
        assert shuffle2_n_def("", "") == {""}

    def test_arity_one(self):
        assert shuffle2_n_def("abc") == {"abc"}
        assert shuffle1_n("abc") == "abc"

    def test_needs_an_argument(self):
        for fn in (shuffle1_n, shuffle2_n_def, shuffle2_n_offsets, shuffle2_n_factor, shuffle2_n_columns):
            with pytest.raises(EmptyArity):
                fn()

    def test_node_limit(self):
        with pytest.raises(NodeBudgetExceeded):
            shuffle2_n_def("aaaa", "bbbb", "cccc", node_limit=100)

    def test_dispatch(self):
        assert shuffle_words("1", "a", "bb", "c") == {"abcb"}
        assert shuffle_words(ShuffleVariant.LITERAL, "a", "bb", "c") == ABBC
        assert shuffle2_n("a", "bb", "c", algo=Shuffle2Algo.DEF) == ABBC
        assert shuffle_words("general", "a", "b") == {"ab", "ba"}

    def test_binary_literal_is_commutative(self):
        for u, v in itertools.product(["", "a", "ab", "ba", "abb"], repeat=2):
            assert shuffle2_n_def(u, v) == shuffle2_n_def(v, u)


class TestLanguages:
    def test_lang_shuffles(self):
        sigma = Alphabet("abc")
        x = Lang(sigma, frozenset(["a", "bb"]))
        y = Lang(sigma, frozenset(["c"]))
        assert shuffle1_n_lang(x, y).words == {"ac", "bcb"}
        assert shuffle2_n_lang(x, y).words == {"ac", "ca", "bcb", "bbc", "cbb"}

    def test_binary_initial_literal(self):
        sigma = Alphabet("abc")
        u = Lang(sigma, frozenset(["abc", "a"]))
        v = Lang(sigma, frozenset(["bb", ""]))
        assert init_literal_shuffle_binary(u, v) == shuffle1_n_lang(u, v)
        assert init_literal_shuffle_binary(u, v).words == {"abbbc", "abb", "abc", "a"}


class TestIterated:
    def test_abc_initial(self):
        lang = Lang(Alphabet("abc"), frozenset(["abc"]))
        got = iterated_shuffle(lang, 1, 9)
        assert got.words == {"", "abc", "aabbcc", "aaabbbccc"}

    def test_max_n(self):
        lang = Lang(Alphabet("a"), frozenset(["a"]))
        assert iterated_shuffle(lang, 2, IterBudget(5, max_n=2)).words == {"", "a", "aa"}

    def test_empty_word_in_language(self):
        lang = Lang(Alphabet("ab"), frozenset(["", "ab"]))
        assert iterated_shuffle(lang, 2, 4).words == {"", "ab", "aabb", "abab"}

    def test_tuple_budget(self):
        lang = Lang(Alphabet("ab"), frozenset(["a", "b"]))
        with pytest.raises(NodeBudgetExceeded):
            iterated_shuffle(lang, 1, IterBudget(10, node_limit=50))
