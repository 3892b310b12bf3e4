"""Seeded property checks for the shuffle operations and deciders.

Each check returns a :class:`PropertyResult`; the ``check`` CLI command and
the test suite both run them.  Samples depend only on the seed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .automata import Dfa, compile_regex, from_finite_lang, intersect, is_empty, minimize
from .core import Alphabet, Lang, concat_langs, render_word
from .decide import member_general_shuffle, member_shuffle2, replay, shuffle2_intersect_regular
from .shuffle import (
    init_literal_shuffle_binary,
    iterated_shuffle,
    shuffle1_n,
    shuffle1_n_lang,
    shuffle2_n_columns,
    shuffle2_n_def,
    shuffle2_n_factor,
    shuffle2_n_lang,
    shuffle2_n_offsets,
)

@dataclass
class PropertyResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    note: str = ""

    @property
    def passed(self):
        return not self.failures

    def fail(self, detail):
        self.failures.append(detail)


def fmt(words):
    return "(" + ", ".join(render_word(w) for w in words) + ")"


def sample_tuples(seed, cases, max_word=4, max_n=4, max_sigma=3):
    """Random argument tuples; each case draws its own alphabet size."""
    rng = random.Random(seed)
    out = []
    for _ in range(cases):
        sigma = "abc"[:rng.randint(1, max_sigma)]
        n = rng.randint(1, max_n)
        out.append(tuple("".join(rng.choice(sigma) for _ in range(rng.randint(0, max_word)))
                         for _ in range(n)))
    return out


def sample_langs(rng, alphabet, max_words=4, max_len=4):
    size = rng.randint(1, max_words)
    words = {"".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_len)))
             for _ in range(size)}
    return Lang(alphabet, frozenset(words))


def rotations(t):
    return [t[k:] + t[:k] for k in range(len(t))]


def check_cross_algorithms(tuples, algos=None, name="cross-algorithm (def/offsets/factor)", cache=None):
    algos = algos or {"offsets": shuffle2_n_offsets, "factor": shuffle2_n_factor}
    res = PropertyResult(name)
    for t in tuples:
        res.cases += 1
        ref = _def(t, cache)
        for label, fn in algos.items():
            got = fn(*t)
            if got != ref:
                res.fail(f"{fmt(t)}: def and {label} differ; only def: "
                         f"{sorted(ref - got)[:4]}, only {label}: {sorted(got - ref)[:4]}")
                break
    return res


def _def(t, cache):
    if cache is None:
        return shuffle2_n_def(*t)
    if t not in cache:
        cache[t] = shuffle2_n_def(*t)
    return cache[t]


def check_inclusion_chain(tuples, cache=None):
    res = PropertyResult("inclusion chain shuffle1 <= shuffle2 <= general")
    for t in tuples:
        res.cases += 1
        s2 = _def(t, cache)
        s1 = shuffle1_n(*t)
        if s1 not in s2:
            res.fail(f"{fmt(t)}: initial literal shuffle {render_word(s1)} missing from literal shuffle")
            continue
        outside = [w for w in sorted(s2) if not member_general_shuffle(w, *t)]
        if outside:
            res.fail(f"{fmt(t)}: {outside[:3]} not in the general shuffle")
    return res


def check_cyclic_invariance(tuples, cache=None):
    res = PropertyResult("cyclic invariance of shuffle2")
    for t in tuples:
        res.cases += 1
        ref = _def(t, cache)
        for r in rotations(t)[1:]:
            if _def(r, cache) != ref:
                res.fail(f"{fmt(t)} vs rotation {fmt(r)}")
                break
    return res


def check_permuted_concatenations(tuples, cache=None):
    res = PropertyResult("permuted concatenations inside shuffle2")
    for t in tuples:
        res.cases += 1
        s2 = _def(t, cache)
        for perm in set(itertools.permutations(t)):
            if "".join(perm) not in s2:
                res.fail(f"{fmt(t)}: concatenation {fmt(perm)} missing")
                break
    return res


def check_permuted_concatenations_langs(seed, cases, alphabet=Alphabet("abc"), max_n=3):
    res = PropertyResult("permuted language concatenations inside shuffle2")
    rng = random.Random(seed)
    for _ in range(cases):
        n = rng.randint(1, max_n)
        langs = [sample_langs(rng, alphabet, max_words=3, max_len=3) for _ in range(n)]
        res.cases += 1
        s2 = shuffle2_n_lang(*langs)
        for perm in itertools.permutations(langs):
            missing = concat_langs(*perm).words - s2.words
            if missing:
                res.fail(f"{[sorted(l.words) for l in langs]}: {sorted(missing)[:3]} missing")
                break
    return res


def check_length_additivity(tuples, cache=None):
    res = PropertyResult("length additivity")
    for t in tuples:
        res.cases += 1
        total = sum(map(len, t))
        words = set(_def(t, cache)) | shuffle2_n_columns(*t) | {shuffle1_n(*t)}
        bad = [w for w in words if len(w) != total]
        if bad:
            res.fail(f"{fmt(t)}: {bad[:3]} have length != {total}")
    return res


def check_binary_agreement(seed, cases, alphabet=Alphabet("abc")):
    res = PropertyResult("binary initial literal shuffle agrees with arity 2")
    rng = random.Random(seed)
    for _ in range(cases):
        U, V = sample_langs(rng, alphabet), sample_langs(rng, alphabet)
        res.cases += 1
        if init_literal_shuffle_binary(U, V) != shuffle1_n_lang(U, V):
            res.fail(f"U={sorted(U.words)} V={sorted(V.words)}")
    return res


def check_empty_argument_dropping(max_word=3, max_n=4, alphabet="ab"):
    """Empty arguments never change the literal or initial literal shuffle."""
    res = PropertyResult("empty arguments can be dropped")
    words = [w for k in range(1, max_word + 1) for w in map("".join, itertools.product(alphabet, repeat=k))]
    for n in range(1, max_n):
        for t in itertools.product(words, repeat=n):
            ref2, ref1 = shuffle2_n_def(*t), shuffle1_n(*t)
            for pos in range(n + 1):
                padded = t[:pos] + ("",) + t[pos:]
                res.cases += 1
                if shuffle2_n_def(*padded) != ref2 or shuffle1_n(*padded) != ref1:
                    res.fail(f"{fmt(padded)} differs from {fmt(t)}")
    return res


def check_unary_collapse(max_word=4, max_n=4):
    res = PropertyResult("unary alphabet: shuffles are concatenation")
    words = ["a" * k for k in range(max_word + 1)]
    for n in range(1, max_n + 1):
        for t in itertools.product(words, repeat=n):
            res.cases += 1
            cat = "".join(t)
            if shuffle2_n_def(*t) != {cat} or shuffle1_n(*t) != cat:
                res.fail(f"{fmt(t)}")
    return res


def check_kleene_inclusion(lang, max_len):
    res = PropertyResult(f"Kleene star of {sorted(lang.words)} inside iterated shuffle2")
    it2 = iterated_shuffle(lang, 2, max_len)
    star = {""}
    frontier = {""}
    while frontier:
        frontier = {w + u for w in frontier for u in lang if u and len(w + u) <= max_len} - star
        star |= frontier
    res.cases = len(star)
    missing = sorted(star - it2.words, key=lang.alphabet.sort_key)
    if missing:
        res.fail(f"{missing[:5]} missing")
    return res


def check_iterated_chain(lang, max_len):
    res = PropertyResult(f"iterated chain for {sorted(lang.words)} up to length {max_len}")
    it1 = iterated_shuffle(lang, 1, max_len)
    it2 = iterated_shuffle(lang, 2, max_len)
    itg = iterated_shuffle(lang, "general", max_len)
    res.cases = len(itg)
    if not it1 <= it2:
        res.fail(f"iterated 1 not inside iterated 2: {sorted(it1.words - it2.words)[:5]}")
    if not it2 <= itg:
        res.fail(f"iterated 2 not inside iterated general: {sorted(it2.words - itg.words)[:5]}")
    return res


def check_sigma_saturation(alphabet, max_len):
    res = PropertyResult(f"iterated shuffles of {str(alphabet)!r} give every word up to {max_len}")
    every = set(alphabet.words_upto(max_len))
    singletons = Lang(alphabet, frozenset(alphabet.symbols))
    for variant in (1, 2):
        got = iterated_shuffle(singletons, variant, max_len)
        res.cases += len(every)
        if got.words != every:
            res.fail(f"variant {variant}: missing {sorted(every - got.words)[:5]}")
    return res


def check_decider_oracle(tuples, cache=None, alphabet=None):
    """Every word of the forced length is tried, over ``alphabet`` or the tuple's letters."""
    res = PropertyResult("member_shuffle2 agrees with set membership")
    for t in tuples:
        s2 = _def(t, cache)
        sigma = alphabet.symbols if alphabet else (sorted(set("".join(t))) or ["a"])
        for cand in map("".join, itertools.product(sigma, repeat=sum(map(len, t)))):
            res.cases += 1
            verdict = member_shuffle2(cand, *t)
            if verdict.answer != (cand in s2):
                res.fail(f"{render_word(cand)} in {fmt(t)}: decider {verdict.answer}")
                break
            if verdict.answer and replay(t, verdict.witness.offsets) != cand:
                res.fail(f"{render_word(cand)} in {fmt(t)}: witness offsets do not replay")
                break
    return res


def small_automata(alphabet, rng, random_count=6, max_states=5):
    """Minimal DFAs with at most ``max_states`` states: fixed patterns plus random ones."""
    a, b = alphabet.symbols[0], alphabet.symbols[-1]
    patterns = [f"{a}*", f"({a}{b})*", f"{b}{a}{b}", f"{a}*{b}*", "@empty", f"({a}|{b})*{a}",
                f"({a}|{b})*{b}{b}({a}|{b})*", f"(({a}|{b})({a}|{b})({a}|{b}))*"]
    out = [minimize(compile_regex(p, alphabet)) for p in patterns]
    syms = alphabet.symbols
    for _ in range(random_count):
        k = rng.randint(1, max_states)
        delta = {(q, s): rng.randrange(k) for q in range(k) for s in syms}
        accepting = frozenset(q for q in range(k) if rng.random() < 0.4)
        out.append(Dfa(alphabet, k, 0, accepting, delta))
    return [d for d in out if d.state_count <= max_states]


def oracle_intersects(lang, n, dfa):
    """Enumerate the literal shuffle of L^n and intersect with ``dfa`` as automata."""
    shuffled = shuffle2_n_lang(*([lang] * n))
    return not is_empty(intersect(from_finite_lang(shuffled), dfa))


def check_solver_oracle(langs, arities, automata):
    res = PropertyResult("shuffle2_intersect_regular agrees with enumerate-and-intersect")
    for lang in langs:
        for n in arities:
            shuffled = shuffle2_n_lang(*([lang] * n))
            trie = from_finite_lang(shuffled)
            for dfa in automata:
                res.cases += 1
                expected = not is_empty(intersect(trie, dfa))
                verdict = shuffle2_intersect_regular(lang, n, dfa)
                if verdict.answer != expected:
                    res.fail(f"L={sorted(lang.words)} n={n}: solver {verdict.answer}, oracle {expected}")
                    continue
                if verdict.answer:
                    w = verdict.witness
                    ok = (replay(w.arguments, w.offsets) == w.word and dfa.accepts(w.word)
                          and all(u in lang for u in w.arguments) and w.word in shuffled
                          and len(w.arguments) == n)
                    if not ok:
                        res.fail(f"L={sorted(lang.words)} n={n}: witness {w} does not replay")
    return res


def check_non_commutativity():
    u, v, w = "a", "bb", "c"
    res = PropertyResult("non-commutativity of shuffle2 on (a, bb, c)", cases=1)
    first, swapped = shuffle2_n_def(u, v, w), shuffle2_n_def(v, u, w)
    diff = sorted(swapped - first)
    if not diff:
        res.fail("no word separates (a, bb, c) from (bb, a, c)")
    else:
        res.note = f"non-commutativity witness found: {diff[0]}"
    return res


def solver_grid(alphabet="ab", max_len=3, max_size=3):
    sigma = Alphabet(alphabet)
    words = list(sigma.words_upto(max_len))
    return [Lang(sigma, frozenset(c)) for k in range(max_size + 1)
            for c in itertools.combinations(words, k)]


def run_suite(seed=0, cases=200, max_word=4, max_n=4, skip=()):
    """Run every property on a seeded sample; results come back in a fixed order."""
    tuples = sample_tuples(seed, cases, max_word=max_word, max_n=max_n)
    cache = {}
    rng = random.Random(seed)
    small = [t for t in tuples if len(t) <= 3 and sum(map(len, t)) <= 8][:max(cases // 10, 1)]
    solver_langs = [sample_langs(rng, Alphabet("ab"), max_words=3, max_len=3) for _ in range(max(cases // 20, 2))]
    checks = [
        ("cross-algorithm", lambda: check_cross_algorithms(tuples, cache=cache)),
        ("columns", lambda: check_cross_algorithms(
            tuples, {"columns": shuffle2_n_columns}, "cross-algorithm (def/columns)", cache=cache)),
        ("inclusion", lambda: check_inclusion_chain(tuples, cache)),
        ("cyclic", lambda: check_cyclic_invariance(tuples, cache)),
        ("concat", lambda: check_permuted_concatenations(tuples, cache)),
        ("concat-langs", lambda: check_permuted_concatenations_langs(seed, max(cases // 10, 1))),
        ("length", lambda: check_length_additivity(tuples, cache)),
        ("binary", lambda: check_binary_agreement(seed, cases)),
        ("empty-args", lambda: check_empty_argument_dropping(max_word=2, max_n=3)),
        ("unary", lambda: check_unary_collapse(min(max_word, 3), min(max_n, 3))),
        ("kleene", lambda: check_kleene_inclusion(Lang(Alphabet("ab"), frozenset(["a", "bb"])), 8)),
        ("iterated", lambda: check_iterated_chain(Lang(Alphabet("ab"), frozenset(["a", "bb"])), 6)),
        ("sigma", lambda: check_sigma_saturation(Alphabet("ab"), 6)),
        ("decider", lambda: check_decider_oracle(small, cache)),
        ("solver", lambda: check_solver_oracle(
            solver_langs, (1, 2, 3), small_automata(Alphabet("ab"), random.Random(seed)))),
        ("example", check_non_commutativity),
    ]
    for key, run in checks:
        if key in skip:
            continue
        yield key, run()


SUITE_KEYS = ("cross-algorithm", "columns", "inclusion", "cyclic", "concat", "concat-langs", "length",
              "binary", "empty-args", "unary", "kleene", "iterated", "sigma", "decider", "solver", "example")

