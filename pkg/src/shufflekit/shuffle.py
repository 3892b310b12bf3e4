"""Shuffle operations on words and finite languages.

Word-level operations return a ``str`` (the initial literal shuffle) or a
``frozenset`` of words; language-level operations return :class:`Lang`.
The n-ary operations are primitive: they are never computed as folds of
binary ones, because the binary restricted shuffles are not associative.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .core import PAD, Lang, erase_pad, interleave, pad_left, pad_right, reverse, same_alphabet
from .errors import EmptyArity, NodeBudgetExceeded, ShuffleError

DEFAULT_NODE_LIMIT = 10**7


class ShuffleVariant(enum.Enum):
    INITIAL = "1"
    LITERAL = "2"
    GENERAL = "general"

    @classmethod
    def parse(cls, value) -> "ShuffleVariant":
        if isinstance(value, cls):
            return value
        value = str(value).lower()
        aliases = {"1": cls.INITIAL, "initial": cls.INITIAL,
                   "2": cls.LITERAL, "literal": cls.LITERAL,
                   "g": cls.GENERAL, "general": cls.GENERAL}
        try:
            return aliases[value]
        except KeyError:
            raise ShuffleError(f"unknown shuffle variant {value!r}") from None


class Shuffle2Algo(enum.Enum):
    DEF = "def"
    OFFSETS = "offsets"
    FACTOR = "factor"
    COLUMNS = "columns"


@dataclass(frozen=True)
class IterBudget:
    max_len: int
    max_n: int | None = None
    node_limit: int = DEFAULT_NODE_LIMIT

    def __post_init__(self):
        if self.max_len < 0:
            raise ShuffleError("max_len must be >= 0")
        if self.max_n is not None and self.max_n < 0:
            raise ShuffleError("max_n must be >= 0")


def _require_args(words, what):
    if not words:
        raise EmptyArity(f"{what} needs at least one argument")


def _check_budget(count, node_limit, what):
    if count > node_limit:
        raise NodeBudgetExceeded(f"{what}: {count} candidates exceed the node limit {node_limit}",
                                 nodes_explored=0)


def _column_read(seqs) -> str:
    # equivalent to erase_pad(interleave(right-padded seqs)); skips the padding step
    width = max(len(s) for s in seqs)
    out = []
    for j in range(width):
        for s in seqs:
            if j < len(s):
                x = s[j]
                if x is not PAD:
                    out.append(x)
    return "".join(out)


def shuffle1_n(*words) -> str:
    """n-ary initial literal shuffle: all processes start together.

    Each argument is right-padded to the common maximal length, the rows
    are read column-wise and the pads are dropped.  Arguments may be padded
    words; their pads vanish as well.

    >>> shuffle1_n("a", "bb", "c")
    'abcb'
    """
    _require_args(words, "shuffle1_n")
    return _column_read(words)


def drop_empty(words):
    """Remove empty arguments; the n-ary shuffles ignore them."""
    return tuple(w for w in words if len(w))


def _lowest_offset_zero(ranges):
    """Offset tuples with min 0; a common shift only adds leading pad columns."""
    for ks in itertools.product(*ranges):
        if 0 in ks:
            yield ks


def shuffle2_n_def(*words: str, node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    """n-ary literal shuffle by direct enumeration of the padded rows.

    With N the longest argument and r_i = n*N - |u_i|, every row is
    $^k u_i $^(r_i - k) for 0 <= k <= r_i; each choice of rows is
    interleaved and its pads erased.  Choices where every row starts with
    a pad repeat a choice shifted one column left, so they are skipped.
    """
    _require_args(words, "shuffle2_n_def")
    n = len(words)
    longest = max(len(u) for u in words)
    rows = []
    for u in words:
        r = n * longest - len(u)
        rows.append([pad_right(pad_left(u, k), r - k) for k in range(r + 1)])
    _check_budget(math.prod(len(r) for r in rows), node_limit, "shuffle2_n_def")
    out = set()
    for ks in _lowest_offset_zero([range(len(r)) for r in rows]):
        out.add(erase_pad(interleave(*[r[k] for r, k in zip(rows, ks)])))
    return frozenset(out)


def shuffle2_n_offsets(*words: str, node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    """n-ary literal shuffle via start offsets.

    Collects shuffle1_n($^k1 u1, ..., $^kn un) over 0 <= ki <= N, where
    N = sum|u_i| + 1 is the smallest bound that reaches every start pattern.
    As in :func:`shuffle2_n_def`, only tuples with a zero offset are visited.
    """
    _require_args(words, "shuffle2_n_offsets")
    bound = sum(len(u) for u in words) + 1
    _check_budget((bound + 1) ** len(words), node_limit, "shuffle2_n_offsets")
    shifted = [[pad_left(u, k) for k in range(bound + 1)] for u in words]
    return frozenset(_column_read([s[k] for s, k in zip(shifted, ks)])
                     for ks in _lowest_offset_zero([range(bound + 1)] * len(words)))


def shuffle2_n_factor(*words: str, node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    """Two-phase factorisation formula for the n-ary literal shuffle.

    Unions reverse(shuffle1_n(x_1 reversed, ..., x_n reversed)) followed by
    shuffle1_n(y_1, ..., y_n) over all factorisations u_i = x_i y_i.

    Only two synchronisation phases are expressible this way, and reversing
    a column read also reverses the order inside each column.  The result
    therefore differs from :func:`shuffle2_n_def` in general, in both
    directions: ``abbc`` is in the literal shuffle of (a, bb, c) but not
    produced here, and ``baba`` is produced for (ab, ba) although that
    shuffle is {abba, baab}.
    """
    _require_args(words, "shuffle2_n_factor")
    _check_budget(math.prod(len(u) + 1 for u in words), node_limit, "shuffle2_n_factor")
    out = set()
    for cuts in itertools.product(*(range(len(u) + 1) for u in words)):
        heads = [reverse(u[:c]) for u, c in zip(words, cuts)]
        tails = [u[c:] for u, c in zip(words, cuts)]
        out.add(reverse(_column_read(heads)) + _column_read(tails))
    return frozenset(out)


def shuffle2_n_columns(*words: str, node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    """n-ary literal shuffle built column by column with memoisation.

    A configuration records, per argument, whether it is still waiting to
    start or how much of it has been emitted.  Each column emits the next
    symbol of every running argument, and any waiting argument may start in
    that column.  Columns that would emit nothing are skipped.
    """
    _require_args(words, "shuffle2_n_columns")
    lengths = [len(u) for u in words]
    nodes = 0

    @lru_cache(maxsize=None)
    def suffixes(state):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise NodeBudgetExceeded(f"shuffle2_n_columns: more than {node_limit} configurations",
                                     nodes_explored=nodes)
        if all(p == k for p, k in zip(state, lengths)):
            return frozenset([""])
        out = set()
        for emitted, nxt in _column_steps(words, lengths, state, 0, ""):
            if emitted:
                out.update(emitted + s for s in suffixes(nxt))
        return frozenset(out)

    start = tuple(WAITING if k else 0 for k in lengths)
    return suffixes(start)


WAITING = -1


def _column_steps(words, lengths, state, i, emitted):
    """All ways to fill one column from argument ``i`` onward."""
    if i == len(words):
        yield emitted, ()
        return
    p = state[i]
    if p == WAITING:
        for e, rest in _column_steps(words, lengths, state, i + 1, emitted + words[i][0]):
            yield e, (1,) + rest
        for e, rest in _column_steps(words, lengths, state, i + 1, emitted):
            yield e, (WAITING,) + rest
    elif p < lengths[i]:
        for e, rest in _column_steps(words, lengths, state, i + 1, emitted + words[i][p]):
            yield e, (p + 1,) + rest
    else:
        for e, rest in _column_steps(words, lengths, state, i + 1, emitted):
            yield e, (p,) + rest


SHUFFLE2_ALGOS = {
    Shuffle2Algo.DEF: shuffle2_n_def,
    Shuffle2Algo.OFFSETS: shuffle2_n_offsets,
    Shuffle2Algo.FACTOR: shuffle2_n_factor,
    Shuffle2Algo.COLUMNS: shuffle2_n_columns,
}


def shuffle2_n(*words: str, algo: Shuffle2Algo = Shuffle2Algo.COLUMNS,
               node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    return SHUFFLE2_ALGOS[Shuffle2Algo(algo)](*words, node_limit=node_limit)


@lru_cache(maxsize=4096)
def general_shuffle(u: str, v: str) -> frozenset:
    """All interleavings of ``u`` and ``v`` keeping each word's order."""
    if not u:
        return frozenset([v])
    if not v:
        return frozenset([u])
    return frozenset([u[0] + w for w in general_shuffle(u[1:], v)]
                     + [v[0] + w for w in general_shuffle(u, v[1:])])


def general_shuffle_n(*words: str) -> frozenset:
    # the general shuffle is associative, so a left fold is exact
    _require_args(words, "general_shuffle_n")
    acc = frozenset([words[0]])
    for v in words[1:]:
        acc = frozenset(w for u in acc for w in general_shuffle(u, v))
    return acc


def _tuples(langs):
    return itertools.product(*(lang.ordered for lang in langs))


def shuffle1_n_lang(*langs: Lang) -> Lang:
    _require_args(langs, "shuffle1_n_lang")
    alphabet = same_alphabet(*langs)
    return Lang(alphabet, frozenset(shuffle1_n(*t) for t in _tuples(langs)))


def shuffle2_n_lang(*langs: Lang, algo: Shuffle2Algo = Shuffle2Algo.COLUMNS,
                    node_limit: int = DEFAULT_NODE_LIMIT) -> Lang:
    _require_args(langs, "shuffle2_n_lang")
    alphabet = same_alphabet(*langs)
    fn = SHUFFLE2_ALGOS[Shuffle2Algo(algo)]
    out = set()
    for t in _tuples(langs):
        out |= fn(*t, node_limit=node_limit)
    return Lang(alphabet, frozenset(out))


def general_shuffle_lang(*langs: Lang) -> Lang:
    _require_args(langs, "general_shuffle_lang")
    alphabet = same_alphabet(*langs)
    out = set()
    for t in _tuples(langs):
        out |= general_shuffle_n(*t)
    return Lang(alphabet, frozenset(out))


def shuffle_lang(variant, *langs: Lang, algo: Shuffle2Algo = Shuffle2Algo.COLUMNS) -> Lang:
    variant = ShuffleVariant.parse(variant)
    if variant is ShuffleVariant.INITIAL:
        return shuffle1_n_lang(*langs)
    if variant is ShuffleVariant.LITERAL:
        return shuffle2_n_lang(*langs, algo=algo)
    return general_shuffle_lang(*langs)


def shuffle_words(variant, *words: str, algo: Shuffle2Algo = Shuffle2Algo.COLUMNS,
                  node_limit: int = DEFAULT_NODE_LIMIT) -> frozenset:
    """Word-level dispatch; the initial literal shuffle yields a singleton."""
    variant = ShuffleVariant.parse(variant)
    if variant is ShuffleVariant.INITIAL:
        return frozenset([shuffle1_n(*words)])
    if variant is ShuffleVariant.LITERAL:
        return shuffle2_n(*words, algo=algo, node_limit=node_limit)
    return general_shuffle_n(*words)


def init_literal_shuffle_binary(U: Lang, V: Lang) -> Lang:
    """Binary initial literal shuffle: alternate letters, then the longer tail.

    For u in U, v in V: if |u| >= |v| the result is I(x, v) y with u = xy and
    |x| = |v|, otherwise I(u, x) y with v = xy and |x| = |u|.
    """
    alphabet = same_alphabet(U, V)
    out = set()
    for u in U:
        for v in V:
            if len(u) >= len(v):
                x, y = u[:len(v)], u[len(v):]
                out.add("".join(interleave(x, v)) + y)
            else:
                x, y = v[:len(u)], v[len(u):]
                out.add("".join(interleave(u, x)) + y)
    return Lang(alphabet, frozenset(out))


def _arity_tuples(words, max_len, max_n):
    """Tuples over nonempty ``words`` (canonical order) with total length <= max_len."""
    lengths = [len(w) for w in words]

    def extend(prefix, used):
        if prefix:
            yield tuple(prefix)
        if max_n is not None and len(prefix) >= max_n:
            return
        for w, k in zip(words, lengths):
            if used + k <= max_len:
                prefix.append(w)
                yield from extend(prefix, used + k)
                prefix.pop()

    return extend([], 0)


def iterated_shuffle(lang: Lang, variant, budget: IterBudget | int) -> Lang:
    """Words of length <= max_len in the iterated n-ary shuffle of ``lang``.

    The iterated language is {ε} together with every n-fold shuffle of
    copies of ``lang``.  Output length is the sum of argument lengths, so
    with the empty word dropped from the arguments only finitely many
    argument tuples can contribute.
    """
    if isinstance(budget, int):
        budget = IterBudget(budget)
    variant = ShuffleVariant.parse(variant)
    words = [w for w in lang if w]
    out = {""}
    nodes = 0
    for t in _arity_tuples(words, budget.max_len, budget.max_n):
        nodes += 1
        if nodes > budget.node_limit:
            raise NodeBudgetExceeded(
                f"iterated_shuffle: more than {budget.node_limit} argument tuples", nodes_explored=nodes)
        out |= shuffle_words(variant, *t, node_limit=budget.node_limit)
    return Lang(lang.alphabet, frozenset(out))
