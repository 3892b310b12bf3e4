"""Membership and intersection deciders for the shuffle variants.

The searches for the literal shuffle walk the padded-row matrix column by
column.  A configuration gives, per argument, "waiting" or the number of
symbols already emitted; every column emits the next symbol of each
running argument and may start any waiting one.  Columns emitting nothing
are never taken, so the column index at which an argument starts is its
offset, and every positive answer carries offsets that replay exactly.
"""

from __future__ import annotations

import itertools
import sys
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass
from functools import lru_cache

from .automata import Dfa, as_nfa, determinize, finite_language
from .core import Lang, pad_left
from .errors import AlphabetMismatch, EmptyArity, NodeBudgetExceeded
from .shuffle import ShuffleVariant, shuffle1_n

DEFAULT_NODE_BUDGET = 10**7
WAITING = -1


@dataclass(frozen=True)
class Witness:
    arguments: tuple
    offsets: tuple
    word: str
    mode: str

    def replay(self) -> str:
        return replay(self.arguments, self.offsets)


@dataclass(frozen=True)
class Verdict:
    answer: bool
    witness: Witness | None = None
    nodes_explored: int = 0
    timed_out: bool = False

    def __bool__(self):
        return self.answer


def replay(arguments, offsets) -> str:
    """Initial literal shuffle of the arguments shifted right by their offsets."""
    if not arguments:
        return ""
    return shuffle1_n(*(pad_left(u, k) for u, k in zip(arguments, offsets)))


class _Counter:
    def __init__(self, budget, what):
        self.nodes = 0
        self.budget = budget
        self.what = what

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            verdict = Verdict(False, None, self.nodes, timed_out=True)
            raise NodeBudgetExceeded(f"{self.what}: node budget {self.budget} exhausted",
                                     nodes_explored=self.nodes, verdict=verdict)


@contextmanager
def _deep_recursion(depth):
    old = sys.getrecursionlimit()
    if depth <= old:
        yield
        return
    sys.setrecursionlimit(depth)
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


@lru_cache(maxsize=1 << 16)
def _column_moves(words, state):
    """Every nonempty column from ``state``: (emitted, next state, started arguments).

    Waiting arguments are tried started before waiting, in argument order.
    """
    moves = [("", (), ())]
    for i, (u, p) in enumerate(zip(words, state)):
        grown = []
        for emitted, nxt, started in moves:
            if p == WAITING:
                grown.append((emitted + u[0], nxt + (1,), started + (i,)))
                grown.append((emitted, nxt + (WAITING,), started))
            elif p < len(u):
                grown.append((emitted + u[p], nxt + (p + 1,), started))
            else:
                grown.append((emitted, nxt + (p,), started))
        moves = grown
    return tuple(m for m in moves if m[0])


def _column_search(words, step, final_ok, start_key, counter, fixed=None, failed=None):
    """Depth-first search over column configurations.

    ``step(key, emitted)`` returns the key after emitting a column or None
    to prune; ``final_ok(key)`` decides a finished configuration.
    ``fixed`` optionally pins the start column of some arguments.  Dead
    configurations with no pin pending are recorded in ``failed``, which
    stays valid across calls on the same words.
    Returns the offsets of the first success or None.
    """
    words = tuple(words)
    n = len(words)
    done = tuple(len(u) for u in words)
    offsets = [0] * n
    fixed = tuple(fixed or (None,) * n)
    pinned = [i for i, f in enumerate(fixed) if f is not None]
    failed = set() if failed is None else failed

    def allowed(state, started, column):
        for i in pinned:
            if state[i] == WAITING and (fixed[i] == column) != (i in started):
                return False
        return True

    def search(state, key, column):
        counter.tick()
        if state == done:
            return final_ok(key)
        pending = [i for i in pinned if state[i] == WAITING]
        if any(fixed[i] < column for i in pending):
            return False
        if pending:
            memo = (state, key, column, fixed)
        else:
            memo = (state, key)
        if memo in failed:
            return False
        for emitted, nxt, started in _column_moves(words, state):
            if pinned and not allowed(state, started, column):
                continue
            key2 = step(key, emitted)
            if key2 is None:
                continue
            for i in started:
                offsets[i] = column
            if search(nxt, key2, column + 1):
                return True
        failed.add(memo)
        return False

    start = tuple(WAITING if u else 0 for u in words)
    with _deep_recursion(sum(done) + 1000):
        found = search(start, start_key, 0)
    return tuple(offsets) if found else None


def _least_offsets(words, step, final_ok, start_key, counter):
    """Lexicographically least offsets among the successful configurations.

    A first search settles the answer; then each offset in turn is lowered
    to the smallest value that still admits a completion.  Offsets are
    taken with no all-pad column, which loses nothing: squeezing such a
    column out lowers offsets pointwise and keeps the word.
    """
    failed = set()
    best = _column_search(words, step, final_ok, start_key, counter, failed=failed)
    if best is None:
        return None
    prefix = ()
    for i in range(len(words)):
        rest = (None,) * (len(words) - i - 1)
        for k in range(best[i]):
            found = _column_search(words, step, final_ok, start_key, counter,
                                   prefix + (k,) + rest, failed)
            if found is not None:
                best = found
                break
        prefix += (best[i],)
    return best


def member_shuffle1(w: str, *us: str) -> bool:
    if not us:
        raise EmptyArity("member_shuffle1 needs at least one argument")
    return len(w) == sum(map(len, us)) and shuffle1_n(*us) == w


def member_shuffle2(w: str, *us: str, node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Decide w in the n-ary literal shuffle of ``us`` and return offsets."""
    if not us:
        raise EmptyArity("member_shuffle2 needs at least one argument")
    if len(w) != sum(map(len, us)) or sorted(w) != sorted("".join(us)):
        return Verdict(False)
    counter = _Counter(node_budget, "member_shuffle2")

    def step(j, emitted):
        return j + len(emitted) if w.startswith(emitted, j) else None

    offsets = _least_offsets(us, step, lambda j: True, 0, counter)
    if offsets is None:
        return Verdict(False, None, counter.nodes)
    return Verdict(True, Witness(tuple(us), offsets, w, "shuffle2"), counter.nodes)


def member_general_shuffle(w: str, *us: str) -> bool:
    """Decide w in u1 ⧢ ... ⧢ un by dynamic programming over consumed prefixes."""
    if len(w) != sum(map(len, us)):
        return False
    us = tuple(u for u in us if u)

    @lru_cache(maxsize=None)
    def ok(pos):
        j = sum(pos)
        if j == len(w):
            return True
        for i, (p, u) in enumerate(zip(pos, us)):
            if p < len(u) and u[p] == w[j] and ok(pos[:i] + (p + 1,) + pos[i + 1:]):
                return True
        return False

    with _deep_recursion(4 * (len(w) + 50)):
        return ok((0,) * len(us))


def _member_variant(variant, w, args, counter):
    """Offsets proving w in the variant's shuffle of ``args``, or None."""
    if variant is ShuffleVariant.INITIAL:
        return (0,) * len(args) if shuffle1_n(*args) == w else None
    if variant is ShuffleVariant.LITERAL:
        verdict = member_shuffle2(w, *args, node_budget=max(counter.budget - counter.nodes, 1))
        counter.nodes += verdict.nodes_explored
        return verdict.witness.offsets if verdict else None
    return () if member_general_shuffle(w, *args) else None


def member_iterated(w: str, lang: Lang, variant, node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Decide w in the iterated n-ary shuffle of the finite language ``lang``.

    Arguments are drawn from the nonempty words of ``lang`` in canonical
    order; their lengths must add up to |w| and their letters to w's letters.
    """
    variant = ShuffleVariant.parse(variant)
    mode = f"iterated{variant.value}"
    lang.alphabet.check(w)
    if not w:
        return Verdict(True, Witness((), (), "", mode), 0)
    words = [u for u in lang if u]
    counts = {u: Counter(u) for u in words}
    need = Counter(w)
    counter = _Counter(node_budget, "member_iterated")
    chosen = []

    def search(remaining, left):
        counter.tick()
        if remaining == 0:
            offsets = _member_variant(variant, w, tuple(chosen), counter)
            return None if offsets is None else (tuple(chosen), offsets)
        for u in words:
            if len(u) > remaining or any(left[c] < k for c, k in counts[u].items()):
                continue
            chosen.append(u)
            found = search(remaining - len(u), left - counts[u])
            chosen.pop()
            if found:
                return found
        return None

    try:
        found = search(len(w), need)
    except NodeBudgetExceeded as exc:
        verdict = Verdict(False, None, max(counter.nodes, exc.nodes_explored), timed_out=True)
        raise NodeBudgetExceeded(str(exc), nodes_explored=verdict.nodes_explored, verdict=verdict) from None
    if found is None:
        return Verdict(False, None, counter.nodes)
    args, offsets = found
    return Verdict(True, Witness(args, offsets, w, mode), counter.nodes)


def _regular_dfa(regular, alphabet):
    nfa = as_nfa(regular, alphabet)
    if nfa.alphabet != alphabet:
        raise AlphabetMismatch(f"regular constraint is over {str(nfa.alphabet)!r}, "
                               f"the language over {str(alphabet)!r}")
    return determinize(nfa)


def _search_tuple(args, dfa, useful, counter):
    delta = dfa.delta

    def step(q, emitted):
        for ch in emitted:
            q = delta[(q, ch)]
        return q if q in useful else None

    if dfa.initial not in useful:
        return None
    offsets = _least_offsets(args, step, lambda q: q in dfa.accepting, dfa.initial, counter)
    if offsets is None:
        return None
    return Witness(tuple(args), offsets, replay(args, offsets), "intersect")


def shuffle2_words_intersect_regular(us, regular, alphabet=None,
                                     node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Does the literal shuffle of the fixed words ``us`` meet a regular language?"""
    if not us:
        raise EmptyArity("need at least one argument")
    dfa = regular if isinstance(regular, Dfa) else _regular_dfa(regular, alphabet)
    counter = _Counter(node_budget, "shuffle2_intersect_regular")
    witness = _search_tuple(tuple(us), dfa, dfa.coreachable, counter)
    return Verdict(witness is not None, witness, counter.nodes)


def shuffle2_intersect_regular(lang, n: int, regular, node_budget: int = DEFAULT_NODE_BUDGET) -> Verdict:
    """Is there u1..un in ``lang`` whose n-ary literal shuffle meets ``regular``?

    ``lang`` is a finite :class:`Lang` or an automaton accepting a finite
    language; ``regular`` is an automaton, regex AST or pattern string.
    Tuples are tried in canonical order, each by a column search that runs
    the automaton alongside and prunes states that cannot reach acceptance.
    """
    if n < 1:
        raise EmptyArity("arity must be at least 1")
    if not isinstance(lang, Lang):
        lang = finite_language(lang)
    dfa = _regular_dfa(regular, lang.alphabet)
    useful = dfa.coreachable
    counter = _Counter(node_budget, "shuffle2_intersect_regular")
    for args in itertools.product(lang.ordered, repeat=n):
        counter.tick()
        witness = _search_tuple(args, dfa, useful, counter)
        if witness is not None:
            return Verdict(True, witness, counter.nodes)
    return Verdict(False, None, counter.nodes)
