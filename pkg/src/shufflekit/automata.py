"""Finite automata over declared alphabets and a small regex front end.

Only what the shuffle deciders need: Thompson construction, subset
construction, products, emptiness with a shortest witness, finite-language
tries and bounded enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Union

from .core import EPS_TOKEN, Alphabet, Lang
from .errors import AlphabetMismatch, RegexSyntaxError, ShuffleError, StateBlowupLimit, UnknownSymbol

EPS = None  # label of an ε-move
DEFAULT_STATE_LIMIT = 2**16


@dataclass(frozen=True)
class Nfa:
    alphabet: Alphabet
    state_count: int
    initial: frozenset
    accepting: frozenset
    transitions: frozenset  # (state, symbol or EPS, state)

    def __post_init__(self):
        for name in ("initial", "accepting", "transitions"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.state_count < 1:
            raise ShuffleError("an automaton needs at least one state")
        states = range(self.state_count)
        for q in self.initial | self.accepting:
            if q not in states:
                raise ShuffleError(f"state {q} out of range 0..{self.state_count - 1}")
        for p, a, q in self.transitions:
            if p not in states or q not in states:
                raise ShuffleError(f"transition {(p, a, q)} uses an unknown state")
            if a is not EPS and a not in self.alphabet:
                raise AlphabetMismatch(f"transition symbol {a!r} not in alphabet {str(self.alphabet)!r}")

    @cached_property
    def _delta(self):
        delta, eps = {}, {}
        for p, a, q in self.transitions:
            if a is EPS:
                eps.setdefault(p, set()).add(q)
            else:
                delta.setdefault((p, a), set()).add(q)
        return delta, eps

    def closure(self, states) -> frozenset:
        eps = self._delta[1]
        seen = set(states)
        stack = list(seen)
        while stack:
            for q in eps.get(stack.pop(), ()):
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def start(self) -> frozenset:
        return self.closure(self.initial)

    def step(self, states, symbol) -> frozenset:
        delta = self._delta[0]
        nxt = set()
        for p in states:
            nxt |= delta.get((p, symbol), set())
        return self.closure(nxt)

    def is_final(self, states) -> bool:
        return not self.accepting.isdisjoint(states)

    def accepts(self, word: str) -> bool:
        states = self.start()
        for ch in word:
            states = self.step(states, ch)
            if not states:
                return False
        return self.is_final(states)

    @cached_property
    def coreachable(self) -> frozenset:
        """States from which some accepting state can be reached."""
        back = {}
        for p, _, q in self.transitions:
            back.setdefault(q, set()).add(p)
        seen = set(self.accepting)
        stack = list(seen)
        while stack:
            for p in back.get(stack.pop(), ()):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def to_nfa(self) -> "Nfa":
        return self


@dataclass(frozen=True)
class Dfa:
    """Complete deterministic automaton; ``delta`` maps (state, symbol) to a state."""

    alphabet: Alphabet
    state_count: int
    initial: int
    accepting: frozenset
    delta: dict

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for q in range(self.state_count):
            for a in self.alphabet:
                target = self.delta.get((q, a))
                if target is None:
                    raise ShuffleError(f"transition function undefined on ({q}, {a!r})")
                if not 0 <= target < self.state_count:
                    raise ShuffleError(f"transition ({q}, {a!r}) -> {target} leaves the state range")
        if not 0 <= self.initial < self.state_count:
            raise ShuffleError(f"initial state {self.initial} out of range")

    def __hash__(self):
        return hash((self.alphabet, self.state_count, self.initial, self.accepting))

    def accepts(self, word: str) -> bool:
        q = self.initial
        for ch in word:
            q = self.delta[(q, ch)]
        return q in self.accepting

    @cached_property
    def _nfa(self) -> Nfa:
        trans = frozenset((p, a, q) for (p, a), q in self.delta.items())
        return Nfa(self.alphabet, self.state_count, frozenset([self.initial]), self.accepting, trans)

    def to_nfa(self) -> Nfa:
        return self._nfa

    @property
    def coreachable(self) -> frozenset:
        return self._nfa.coreachable


# -- regular expressions ---------------------------------------------------

@dataclass(frozen=True)
class Sym:
    symbol: str


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Concat:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Union_:
    left: "RegexAst"
    right: "RegexAst"


@dataclass(frozen=True)
class Star:
    inner: "RegexAst"


RegexAst = Union[Sym, Eps, Empty, Concat, Union_, Star]
EMPTY_TOKEN = "@empty"


def _tokenize(pattern):
    i = 0
    while i < len(pattern):
        ch = pattern[i]
        if ch.isspace():
            i += 1
        elif ch == "@":
            for tok in (EPS_TOKEN, EMPTY_TOKEN):
                if pattern.startswith(tok, i):
                    yield tok, i
                    i += len(tok)
                    break
            else:
                raise RegexSyntaxError("unknown '@' token", i)
        else:
            yield ch, i
            i += 1
    yield None, len(pattern)


class _Parser:
    def __init__(self, pattern, alphabet):
        self.tokens = list(_tokenize(pattern))
        self.pos = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.pos][0]

    def where(self):
        return self.tokens[self.pos][1]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def union(self):
        node = self.concat()
        while self.peek() == "|":
            self.advance()
            node = Union_(node, self.concat())
        return node

    def concat(self):
        items = []
        while self.peek() not in (None, "|", ")"):
            items.append(self.star())
        if not items:
            raise RegexSyntaxError("empty expression", self.where())
        node = items[0]
        for item in items[1:]:
            node = Concat(node, item)
        return node

    def star(self):
        node = self.atom()
        while self.peek() == "*":
            self.advance()
            node = Star(node)
        return node

    def atom(self):
        tok, at = self.advance()
        if tok == "(":
            node = self.union()
            if self.peek() != ")":
                raise RegexSyntaxError("expected ')'", self.where())
            self.advance()
            return node
        if tok == EPS_TOKEN:
            return Eps()
        if tok == EMPTY_TOKEN:
            return Empty()
        if tok in (None, ")", "|", "*"):
            raise RegexSyntaxError(f"unexpected {tok or 'end of pattern'!r}", at)
        if tok not in self.alphabet:
            raise UnknownSymbol(f"symbol {tok!r} not in alphabet {str(self.alphabet)!r}", at)
        return Sym(tok)


def regex_parse(pattern: str, alphabet: Alphabet) -> RegexAst:
    """Parse a pattern: juxtaposition, ``|``, ``*``, parentheses, ``@eps``.

    A blank pattern denotes the empty language, as does ``@empty``.
    """
    parser = _Parser(pattern, alphabet)
    if parser.peek() is None:
        return Empty()
    node = parser.union()
    if parser.peek() is not None:
        raise RegexSyntaxError(f"unexpected {parser.peek()!r}", parser.where())
    return node


def regex_to_nfa(ast: RegexAst, alphabet: Alphabet) -> Nfa:
    """Thompson construction: one start and one accepting state per fragment."""
    trans = []
    count = 0

    def new():
        nonlocal count
        count += 1
        return count - 1

    def build(node):
        if isinstance(node, Concat):
            s1, e1 = build(node.left)
            s2, e2 = build(node.right)
            trans.append((e1, EPS, s2))
            return s1, e2
        s, e = new(), new()
        if isinstance(node, Sym):
            trans.append((s, node.symbol, e))
        elif isinstance(node, Eps):
            trans.append((s, EPS, e))
        elif isinstance(node, Union_):
            for part in (node.left, node.right):
                ps, pe = build(part)
                trans.extend([(s, EPS, ps), (pe, EPS, e)])
        elif isinstance(node, Star):
            ps, pe = build(node.inner)
            trans.extend([(s, EPS, ps), (s, EPS, e), (pe, EPS, ps), (pe, EPS, e)])
        elif not isinstance(node, Empty):
            raise TypeError(f"not a regex node: {node!r}")
        return s, e

    start, end = build(ast)
    return Nfa(alphabet, count, frozenset([start]), frozenset([end]), frozenset(trans))


def compile_regex(pattern: str, alphabet: Alphabet) -> Nfa:
    return regex_to_nfa(regex_parse(pattern, alphabet), alphabet)


# -- constructions ---------------------------------------------------------

def as_nfa(a, alphabet: Alphabet | None = None) -> Nfa:
    """Coerce an Nfa, Dfa, regex AST or pattern string to an Nfa."""
    if isinstance(a, (Nfa, Dfa)):
        return a.to_nfa()
    if alphabet is None:
        raise ShuffleError("an alphabet is needed to compile a regular expression")
    if isinstance(a, str):
        return compile_regex(a, alphabet)
    return regex_to_nfa(a, alphabet)


def determinize(a, limit: int = DEFAULT_STATE_LIMIT) -> Dfa:
    """Subset construction; the empty subset becomes the dead state."""
    if isinstance(a, Dfa):
        return a
    nfa = as_nfa(a)
    start = nfa.start()
    index = {start: 0}
    order = [start]
    delta = {}
    i = 0
    while i < len(order):
        subset = order[i]
        for sym in nfa.alphabet:
            nxt = nfa.step(subset, sym)
            if nxt not in index:
                if len(order) >= limit:
                    raise StateBlowupLimit(f"subset construction exceeded {limit} states")
                index[nxt] = len(order)
                order.append(nxt)
            delta[(i, sym)] = index[nxt]
        i += 1
    accepting = frozenset(j for j, subset in enumerate(order) if nfa.is_final(subset))
    return Dfa(nfa.alphabet, len(order), 0, accepting, delta)


def remove_epsilon(a) -> Nfa:
    nfa = as_nfa(a)
    trans = set()
    accepting = set()
    for p in range(nfa.state_count):
        cl = nfa.closure([p])
        if nfa.is_final(cl):
            accepting.add(p)
        for sym in nfa.alphabet:
            for q in nfa.step(cl, sym):
                trans.add((p, sym, q))
    return Nfa(nfa.alphabet, nfa.state_count, nfa.initial, frozenset(accepting), frozenset(trans))


def intersect(a, b) -> Nfa:
    """Product automaton over the reachable state pairs."""
    left, right = remove_epsilon(a), remove_epsilon(b)
    if left.alphabet != right.alphabet:
        raise AlphabetMismatch(f"cannot intersect automata over {str(left.alphabet)!r} "
                               f"and {str(right.alphabet)!r}")
    ld, rd = left._delta[0], right._delta[0]
    index = {}
    queue = deque()
    for p in sorted(left.initial):
        for q in sorted(right.initial):
            index[(p, q)] = len(index)
            queue.append((p, q))
    trans = set()
    while queue:
        p, q = pair = queue.popleft()
        for sym in left.alphabet:
            for p2 in sorted(ld.get((p, sym), ())):
                for q2 in sorted(rd.get((q, sym), ())):
                    if (p2, q2) not in index:
                        index[(p2, q2)] = len(index)
                        queue.append((p2, q2))
                    trans.add((index[pair], sym, index[(p2, q2)]))
    initial = frozenset(range(len(left.initial) * len(right.initial)))
    accepting = frozenset(i for (p, q), i in index.items()
                          if p in left.accepting and q in right.accepting)
    return Nfa(left.alphabet, max(len(index), 1), initial, accepting, frozenset(trans))


def accepts(a, word: str) -> bool:
    return a.accepts(word)


def shortest_word(a) -> str | None:
    """Length-lexicographically smallest accepted word, or None if empty."""
    nfa = as_nfa(a)
    start = nfa.start()
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        subset, word = queue.popleft()
        if nfa.is_final(subset):
            return word
        for sym in nfa.alphabet:
            nxt = nfa.step(subset, sym)
            if nxt and nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, word + sym))
    return None


def is_empty(a) -> bool:
    return shortest_word(a) is None


def from_finite_lang(lang: Lang) -> Dfa:
    """Trie automaton of a finite language plus one dead state."""
    children = [{}]
    accepting = set()
    for w in lang:
        node = 0
        for ch in w:
            if ch not in children[node]:
                children[node][ch] = len(children)
                children.append({})
            node = children[node][ch]
        accepting.add(node)
    dead = len(children)
    delta = {}
    for q in range(dead + 1):
        for sym in lang.alphabet:
            delta[(q, sym)] = children[q].get(sym, dead) if q < dead else dead
    return Dfa(lang.alphabet, dead + 1, 0, frozenset(accepting), delta)


def enumerate_upto(a, max_len: int) -> Lang:
    """Every accepted word of length <= max_len."""
    nfa = as_nfa(a)
    useful = nfa.coreachable
    words = []
    level = [("", nfa.start())]
    for length in range(max_len + 1):
        nxt = []
        for word, subset in level:
            if nfa.is_final(subset):
                words.append(word)
            if length < max_len:
                for sym in nfa.alphabet:
                    s2 = nfa.step(subset, sym)
                    if not s2.isdisjoint(useful):
                        nxt.append((word + sym, s2))
        level = nxt
    return Lang(nfa.alphabet, frozenset(words))


def finite_language(a) -> Lang:
    """The language of an automaton known to be finite; raises otherwise."""
    nfa = remove_epsilon(a)
    useful = nfa.coreachable
    reach = set()
    stack = [q for q in nfa.initial if q in useful]
    reach.update(stack)
    succ = {}
    while stack:
        p = stack.pop()
        for (src, _), targets in nfa._delta[0].items():
            if src != p:
                continue
            for q in targets:
                if q in useful:
                    succ.setdefault(p, set()).add(q)
                    if q not in reach:
                        reach.add(q)
                        stack.append(q)
    # a cycle among useful reachable states makes the language infinite
    color = {}

    def has_cycle(p):
        color[p] = 1
        for q in succ.get(p, ()):
            c = color.get(q)
            if c == 1 or (c is None and has_cycle(q)):
                return True
        color[p] = 2
        return False

    if any(color.get(p) is None and has_cycle(p) for p in sorted(reach)):
        raise ShuffleError("automaton accepts an infinite language")
    return enumerate_upto(nfa, max(len(reach), 1))


# -- text format -----------------------------------------------------------

def parse_automaton(text: str, alphabet: Alphabet | None = None) -> Nfa:
    """Read ``states N`` / ``initial ...`` / ``accept ...`` / ``trans p SYM q`` lines.

    An optional ``alphabet <symbols>`` line declares the alphabet when none
    is passed in.
    """
    state_count = None
    initial, accepting, trans = set(), set(), []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, *rest = line.split()
        try:
            if key == "alphabet":
                declared = Alphabet("".join(rest))
                if alphabet is not None and declared != alphabet:
                    raise AlphabetMismatch(f"line {lineno}: automaton alphabet {str(declared)!r} "
                                           f"differs from {str(alphabet)!r}")
                alphabet = declared
            elif key == "states":
                (state_count,) = map(int, rest)
            elif key == "initial":
                initial.update(map(int, rest))
            elif key == "accept":
                accepting.update(map(int, rest))
            elif key == "trans":
                p, sym, q = rest
                trans.append((int(p), EPS if sym == EPS_TOKEN else sym, int(q)))
            else:
                raise ShuffleError(f"line {lineno}: unknown directive {key!r}")
        except ValueError:
            raise ShuffleError(f"line {lineno}: malformed {key!r} line") from None
    if state_count is None:
        raise ShuffleError("automaton file lacks a 'states N' line")
    if alphabet is None:
        raise ShuffleError("automaton alphabet not declared")
    for _, sym, _ in trans:
        if sym is not EPS and sym not in alphabet:
            raise AlphabetMismatch(f"symbol {sym!r} not in alphabet {str(alphabet)!r}")
    return Nfa(alphabet, state_count, frozenset(initial), frozenset(accepting), frozenset(trans))


def render_automaton(a) -> str:
    nfa = as_nfa(a)
    lines = [f"alphabet {nfa.alphabet}", f"states {nfa.state_count}",
             "initial " + " ".join(map(str, sorted(nfa.initial))),
             "accept " + " ".join(map(str, sorted(nfa.accepting)))]
    rank = {s: i for i, s in enumerate(nfa.alphabet)}
    for p, sym, q in sorted(nfa.transitions, key=lambda t: (t[0], -1 if t[1] is EPS else rank[t[1]], t[2])):
        lines.append(f"trans {p} {EPS_TOKEN if sym is EPS else sym} {q}")
    return "\n".join(line.rstrip() for line in lines) + "\n"


def minimize(a) -> Dfa:
    """Minimal complete DFA by partition refinement over reachable states."""
    dfa = determinize(a)
    syms = dfa.alphabet.symbols
    reach = [dfa.initial]
    seen = {dfa.initial}
    for q in reach:
        for s in syms:
            t = dfa.delta[(q, s)]
            if t not in seen:
                seen.add(t)
                reach.append(t)
    block = {q: int(q in dfa.accepting) for q in reach}
    while True:
        sig = {q: (block[q],) + tuple(block[dfa.delta[(q, s)]] for s in syms) for q in reach}
        ids = {}
        for q in reach:
            ids.setdefault(sig[q], len(ids))
        refined = {q: ids[sig[q]] for q in reach}
        if len(ids) == len(set(block.values())):
            break
        block = refined
    # renumber in order of first reach so the result is canonical
    order = {}
    for q in reach:
        order.setdefault(block[q], len(order))
    delta = {(order[block[q]], s): order[block[dfa.delta[(q, s)]]] for q in reach for s in syms}
    accepting = frozenset(order[block[q]] for q in reach if q in dfa.accepting)
    return Dfa(dfa.alphabet, len(order), 0, accepting, delta)
