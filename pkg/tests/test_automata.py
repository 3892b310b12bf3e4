import random
import re

import pytest

from shufflekit.automata import (
    EPS,
    Dfa,
    Nfa,
    compile_regex,
    determinize,
    enumerate_upto,
    finite_language,
    from_finite_lang,
    intersect,
    is_empty,
    minimize,
    parse_automaton,
    regex_parse,
    remove_epsilon,
    render_automaton,
    shortest_word,
)
from shufflekit.core import Alphabet, Lang
from shufflekit.errors import AlphabetMismatch, RegexSyntaxError, ShuffleError, StateBlowupLimit, UnknownSymbol

AB = Alphabet("ab")
WORDS6 = list(AB.words_upto(6))

PATTERNS = ["a", "ab|b", "(ab)*", "a*b*", "(a|b)*abb", "@eps", "@empty", "a(@eps|b)a", "((a|b)(a|b))*",
            "b**", "(a*|b)(ba)*", ""]


def python_regex(pattern):
    # stdlib re as the reference matcher
    text = pattern.replace("@empty", "(?!)").replace("@eps", "(?:)").replace(" ", "")
    text = re.sub(r"\*+", "*", text)
    return re.compile(text if pattern.strip() else "(?!)")


@pytest.mark.parametrize("pattern", PATTERNS)
def test_regex_matches_reference(pattern):
    nfa = compile_regex(pattern, AB)
    dfa = determinize(nfa)
    small = minimize(dfa)
    ref = python_regex(pattern)
    for w in WORDS6:
        expected = ref.fullmatch(w) is not None
        assert nfa.accepts(w) == expected, w
        assert dfa.accepts(w) == expected, w
        assert small.accepts(w) == expected, w
        assert remove_epsilon(nfa).accepts(w) == expected, w


def test_thompson_sizes():
    assert compile_regex("a", AB).state_count == 2
    assert compile_regex("ab", AB).state_count == 4


@pytest.mark.parametrize("pattern,where", [("(a", 2), ("a|", 2), ("*a", 0), ("a)", 1), ("@x", 0)])
def test_syntax_errors_carry_position(pattern, where):
    with pytest.raises(RegexSyntaxError) as info:
        regex_parse(pattern, AB)
    assert info.value.position == where


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol):
        regex_parse("ac", AB)


def test_minimize_is_canonical():
    assert minimize(compile_regex("(a|b)*abb", AB)).state_count == 4
    assert minimize(compile_regex("a*", AB)).state_count == 2
    x = minimize(compile_regex("(ab)*", AB))
    y = minimize(compile_regex("@eps|ab(ab)*", AB))
    assert (x.state_count, x.accepting, x.delta) == (y.state_count, y.accepting, y.delta)


def test_intersection_and_witness():
    both = intersect(compile_regex("(a|b)*b", AB), compile_regex("a*b*", AB))
    ref = re.compile("a*b+")
    for w in WORDS6:
        assert both.accepts(w) == (ref.fullmatch(w) is not None)
    assert shortest_word(both) == "b"
    assert is_empty(intersect(compile_regex("a*", AB), compile_regex("b(a|b)*", AB)))
    with pytest.raises(AlphabetMismatch):
        intersect(compile_regex("a", AB), compile_regex("a", Alphabet("abc")))


def test_shortest_word_is_length_lex_least():
    assert shortest_word(compile_regex("bb|ab|ba", AB)) == "ab"
    assert shortest_word(compile_regex("@eps|a", AB)) == ""
    assert shortest_word(compile_regex("@empty", AB)) is None


def test_trie_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        lang = Lang(AB, frozenset(rng.sample(WORDS6, rng.randint(0, 6))))
        trie = from_finite_lang(lang)
        assert enumerate_upto(trie, 6) == lang
        assert finite_language(trie) == lang
        for w in WORDS6:
            assert trie.accepts(w) == (w in lang)


def test_finite_language_rejects_cycles():
    with pytest.raises(ShuffleError, match="infinite"):
        finite_language(compile_regex("ab*", AB))
    # a cycle on a dead branch does not matter
    assert finite_language(compile_regex("a|@empty b*", AB)).words == {"a"}


def test_enumerate_upto():
    got = enumerate_upto(compile_regex("a*b", AB), 3)
    assert got.ordered == ("b", "ab", "aab")


def test_determinize_limit():
    # the k-th letter from the end is a: 2**k subsets
    with pytest.raises(StateBlowupLimit):
        determinize(compile_regex("(a|b)*a(a|b)(a|b)(a|b)(a|b)", AB), limit=10)


def test_dfa_validation():
    with pytest.raises(ShuffleError):
        Dfa(AB, 1, 0, frozenset(), {(0, "a"): 0})
    with pytest.raises(ShuffleError):
        Nfa(AB, 1, frozenset([3]), frozenset(), frozenset())
    with pytest.raises(AlphabetMismatch):
        Nfa(AB, 1, frozenset([0]), frozenset(), frozenset([(0, "c", 0)]))


AUTOMATON = """\
# words ending in b
alphabet ab
states 3
initial 0
accept 2
trans 0 a 0
trans 0 b 0
trans 0 @eps 1
trans 1 b 2
"""


def test_automaton_file_round_trip():
    nfa = parse_automaton(AUTOMATON)
    assert (0, EPS, 1) in nfa.transitions
    for w in WORDS6:
        assert nfa.accepts(w) == w.endswith("b")
    again = parse_automaton(render_automaton(nfa))
    assert again == nfa


@pytest.mark.parametrize("text,message", [
    ("alphabet ab\ninitial 0\n", "states"),
    ("states 2\n", "alphabet"),
    ("alphabet ab\nstates x\n", "malformed"),
    ("alphabet ab\nstates 1\nfoo 1\n", "unknown directive"),
    ("alphabet ab\nstates 1\ntrans 0 c 0\n", "not in alphabet"),
])
def test_automaton_file_errors(text, message):
    with pytest.raises(ShuffleError, match=message):
        parse_automaton(text)


def test_automaton_alphabet_conflict():
    with pytest.raises(AlphabetMismatch):
        parse_automaton(AUTOMATON, Alphabet("abc"))
    assert parse_automaton("states 1\ninitial 0\naccept 0\n", AB).accepts("")
