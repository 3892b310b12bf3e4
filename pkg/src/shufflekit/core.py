"""Alphabets, words, padded words and finite languages.

Words are plain ``str`` values whose characters are alphabet symbols.
Padded words are tuples mixing symbols with the :data:`PAD` sentinel, so a
pad can never collide with a user symbol.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from .errors import AlphabetMismatch, BadToken, DuplicateWord, EmptyArity, LengthMismatch, ShuffleError

EPS_TOKEN = "@eps"
# characters with a meaning in language files, automaton files or patterns
RESERVED = frozenset("@#|*()")


class _Pad:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "$"

    def __reduce__(self):
        return (_Pad, ())


PAD = _Pad()

Word = str
PaddedWord = tuple
AnyWord = Union[str, Sequence]


@dataclass(frozen=True)
class Alphabet:
    """A finite, ordered set of single-character symbols."""

    symbols: tuple

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise ShuffleError("alphabet must be nonempty")
        for s in syms:
            if not isinstance(s, str) or len(s) != 1:
                raise BadToken(f"alphabet symbols must be single characters, got {s!r}")
            if s.isspace() or not s.isprintable() or s in RESERVED:
                raise BadToken(f"symbol {s!r} is not allowed in an alphabet")
        if len(set(syms)) != len(syms):
            raise ShuffleError(f"duplicate symbol in alphabet {''.join(syms)!r}")
        object.__setattr__(self, "symbols", syms)

    @classmethod
    def from_words(cls, *words: str) -> "Alphabet":
        """Smallest alphabet covering ``words``, in code point order."""
        syms = sorted(set("".join(words)))
        return cls(syms or ["a"])

    @cached_property
    def _rank(self):
        return {s: i for i, s in enumerate(self.symbols)}

    def __contains__(self, symbol):
        return symbol in self._rank

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(self.symbols)

    def check(self, word: str, line=None) -> str:
        for ch in word:
            if ch not in self._rank:
                raise BadToken(f"symbol {ch!r} of {word!r} is not in alphabet {str(self)!r}", line)
        return word

    def sort_key(self, word: str):
        """Canonical order: by length, then lexicographic in symbol order."""
        rank = self._rank
        return (len(word), tuple(rank[c] for c in word))

    def words_upto(self, max_len: int):
        """All words of length <= max_len in canonical order."""
        for n in range(max_len + 1):
            for t in itertools.product(self.symbols, repeat=n):
                yield "".join(t)


@dataclass(frozen=True, eq=True)
class Lang:
    """A finite language: a deduplicated set of words over one alphabet."""

    alphabet: Alphabet
    words: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        words = frozenset(self.words)
        for w in words:
            self.alphabet.check(w)
        object.__setattr__(self, "words", words)

    @cached_property
    def ordered(self) -> tuple:
        return tuple(sorted(self.words, key=self.alphabet.sort_key))

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.words)

    def __contains__(self, word):
        return word in self.words

    def __repr__(self):
        shown = ", ".join(w or "ε" for w in self.ordered[:12])
        if len(self) > 12:
            shown += ", ..."
        return f"Lang({{{shown}}})"

    def __le__(self, other):
        return self.words <= _words_of(other)

    def __or__(self, other: "Lang") -> "Lang":
        same_alphabet(self, other)
        return Lang(self.alphabet, self.words | other.words)

    def __and__(self, other: "Lang") -> "Lang":
        same_alphabet(self, other)
        return Lang(self.alphabet, self.words & other.words)

    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)


def _words_of(x):
    return x.words if isinstance(x, Lang) else frozenset(x)


def same_alphabet(*langs) -> Alphabet:
    """Return the alphabet shared by all arguments or raise AlphabetMismatch."""
    alphabets = {lang.alphabet for lang in langs}
    if len(alphabets) != 1:
        raise AlphabetMismatch("languages are over different alphabets: "
                               + ", ".join(sorted(repr(str(a)) for a in alphabets)))
    return alphabets.pop()


def interleave(*vs: AnyWord) -> PaddedWord:
    """Read equal-length (padded) words as matrix rows, column by column.

    >>> render_padded(interleave("ab", "cd", "ef"))
    'acebdf'
    """
    if not vs:
        raise EmptyArity("interleave needs at least one argument")
    m = len(vs[0])
    if any(len(v) != m for v in vs):
        raise LengthMismatch(f"interleave arguments differ in length: {[len(v) for v in vs]}")
    return tuple(itertools.chain.from_iterable(zip(*vs)))


def erase_pad(pw: AnyWord) -> Word:
    """The homomorphism deleting every pad and fixing every symbol."""
    return "".join([x for x in pw if x is not PAD])


def reverse(w):
    return w[::-1]


def pad_left(word: str, k: int) -> PaddedWord:
    return (PAD,) * k + tuple(word)


def pad_right(word: AnyWord, k: int) -> PaddedWord:
    return tuple(word) + (PAD,) * k


def padded(text: str) -> PaddedWord:
    """Debug helper: read ``$`` as the pad marker."""
    return tuple(PAD if c == "$" else c for c in text)


def render_padded(pw: AnyWord) -> str:
    """Debug rendering of a padded word with ``$`` for pads."""
    return "".join("$" if x is PAD else x for x in pw)


def render_word(w: str) -> str:
    return w if w else EPS_TOKEN


def parse_word(token: str) -> str:
    return "" if token == EPS_TOKEN else token


def concat_langs(*langs: Lang) -> Lang:
    """All concatenations u1...un with ui taken from the i-th language."""
    if not langs:
        raise EmptyArity("concat_langs needs at least one language")
    alphabet = same_alphabet(*langs)
    words = frozenset("".join(t) for t in itertools.product(*(lang.ordered for lang in langs)))
    return Lang(alphabet, words)


def parse_lang_file(text: str, alphabet: Alphabet | None = None) -> Lang:
    """Parse the line-oriented language format.

    One word per line; ``#`` starts a comment line, ``@eps`` is the empty
    word and blank lines are skipped.  A first content line of the form
    ``alphabet: <symbols>`` declares the alphabet; otherwise ``alphabet``
    must be given.  Duplicates are dropped with a :class:`DuplicateWord`
    warning.
    """
    words = []
    seen = set()
    header_done = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_done:
            header_done = True
            if line.startswith("alphabet:"):
                declared = Alphabet(line[len("alphabet:"):].strip())
                if alphabet is not None and declared != alphabet:
                    raise AlphabetMismatch(
                        f"file declares alphabet {str(declared)!r} but {str(alphabet)!r} was requested")
                alphabet = declared
                continue
        if alphabet is None:
            raise ShuffleError("no alphabet declared: add an 'alphabet:' header or pass one explicitly")
        if any(c.isspace() for c in line):
            raise BadToken(f"word {line!r} contains whitespace", lineno)
        word = alphabet.check(parse_word(line), lineno)
        if word in seen:
            warnings.warn(DuplicateWord(f"line {lineno}: duplicate word {line!r} ignored"), stacklevel=2)
            continue
        seen.add(word)
        words.append(word)
    if alphabet is None:
        raise ShuffleError("no alphabet declared: add an 'alphabet:' header or pass one explicitly")
    return Lang(alphabet, frozenset(words))


def render_lang(lang: Lang, header: bool = True) -> str:
    lines = [f"alphabet: {lang.alphabet}"] if header else []
    lines.extend(render_word(w) for w in lang)
    return "".join(line + "\n" for line in lines)
