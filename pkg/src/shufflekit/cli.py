"""Command-line front end.

Exit codes: 0 success / member / SAT, 1 non-member / UNSAT / failed
property, 2 bad input, 3 budget exhausted (inconclusive).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from pathlib import Path

from . import __version__
from .automata import compile_regex, parse_automaton
from .core import Alphabet, Lang, pad_right, parse_lang_file, parse_word, render_padded, render_word
from .decide import (
    DEFAULT_NODE_BUDGET,
    member_general_shuffle,
    member_iterated,
    member_shuffle1,
    member_shuffle2,
    shuffle2_intersect_regular,
)
from .errors import DuplicateWord, NodeBudgetExceeded, ShuffleError
from .properties import SUITE_KEYS, run_suite
from .shuffle import IterBudget, Shuffle2Algo, ShuffleVariant, iterated_shuffle, shuffle_lang, shuffle_words

BUDGET_ENV = "SHUFFLEKIT_NODE_BUDGET"

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class Output:
    """Writes results in one of the three output formats."""

    def __init__(self, fmt, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def line(self, text):
        self.stream.write(text + "\n")

    def record(self, kind, payload, **extra):
        rec = {"kind": kind, "payload": payload}
        rec.update(extra)
        self.line(json.dumps(rec, ensure_ascii=False))

    def words(self, words, kind="word"):
        words = list(words)
        if self.fmt == "records":
            for w in words:
                self.record(kind, render_word(w))
        elif self.fmt == "set":
            self.line("{" + ", ".join(render_word(w) for w in words) + "}")
        else:
            for w in words:
                self.line(render_word(w))

    def verdict(self, label, witness=None, show_witness=True):
        if self.fmt == "records":
            extra = {}
            if witness is not None and show_witness:
                extra = {"arguments": [render_word(u) for u in witness.arguments],
                         "offsets": list(witness.offsets), "word": render_word(witness.word)}
            self.record("verdict", label, **extra)
            return
        self.line(label)
        if witness is not None and show_witness:
            self.line("arguments: " + " ".join(render_word(u) for u in witness.arguments))
            self.line("offsets: " + " ".join(map(str, witness.offsets)))
            self.line("word: " + render_word(witness.word))


def default_budget():
    value = os.environ.get(BUDGET_ENV)
    if value is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(value)
    except ValueError:
        raise ShuffleError(f"{BUDGET_ENV} must be an integer, got {value!r}") from None


def resolve_alphabet(args, words=()):
    """Declared alphabet, or the letters of command-line words when none is given."""
    if args.alphabet:
        return Alphabet(args.alphabet)
    return Alphabet.from_words(*words)


def load_lang(path, args) -> Lang:
    alphabet = Alphabet(args.alphabet) if args.alphabet else None
    text = Path(path).read_text(encoding="utf-8")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DuplicateWord)
        lang = parse_lang_file(text, alphabet)
    for w in caught:
        print(f"warning: {path}: {w.message}", file=sys.stderr)
    return lang


def cmd_shuffle(args, out):
    variant = ShuffleVariant.parse(args.variant)
    algo = Shuffle2Algo(args.algo)
    if args.lang:
        if args.words:
            raise ShuffleError("give either words or --lang files, not both")
        langs = [load_lang(p, args) for p in args.lang]
        out.words(shuffle_lang(variant, *langs, algo=algo))
        return EXIT_OK
    if not args.words:
        raise ShuffleError("shuffle needs at least one word")
    words = [parse_word(w) for w in args.words]
    alphabet = resolve_alphabet(args, words)
    for w in words:
        alphabet.check(w)
    if args.debug and variant is ShuffleVariant.INITIAL:
        longest = max(map(len, words))
        for w in words:
            print("row: " + render_padded(pad_right(w, longest - len(w))), file=sys.stderr)
    result = shuffle_words(variant, *words, algo=algo, node_limit=args.budget)
    out.words(Lang(alphabet, result))
    return EXIT_OK


def cmd_member(args, out):
    variant = ShuffleVariant.parse(args.variant)
    word = parse_word(args.word)
    if args.iterated or args.lang:
        if not (args.iterated and args.lang):
            raise ShuffleError("--iterated needs --lang FILE")
        if args.args:
            raise ShuffleError("iterated membership takes no argument words")
        lang = load_lang(args.lang, args)
        verdict = member_iterated(word, lang, variant, node_budget=args.budget)
        out.verdict("member" if verdict else "non-member", verdict.witness, args.witness)
        return EXIT_OK if verdict else EXIT_NO
    if not args.args:
        raise ShuffleError("member needs at least one argument word")
    us = [parse_word(u) for u in args.args]
    alphabet = resolve_alphabet(args, [word, *us])
    for w in (word, *us):
        alphabet.check(w)
    if variant is ShuffleVariant.LITERAL:
        verdict = member_shuffle2(word, *us, node_budget=args.budget)
        out.verdict("member" if verdict else "non-member", verdict.witness, args.witness)
        return EXIT_OK if verdict else EXIT_NO
    test = member_shuffle1 if variant is ShuffleVariant.INITIAL else member_general_shuffle
    answer = test(word, *us)
    out.verdict("member" if answer else "non-member")
    return EXIT_OK if answer else EXIT_NO


def cmd_intersect(args, out):
    lang = load_lang(args.lang, args)
    if args.regex is not None:
        regular = compile_regex(args.regex, lang.alphabet)
    else:
        regular = parse_automaton(Path(args.automaton).read_text(encoding="utf-8"), lang.alphabet)
    verdict = shuffle2_intersect_regular(lang, args.n, regular, node_budget=args.budget)
    out.verdict("SAT" if verdict else "UNSAT", verdict.witness)
    return EXIT_OK if verdict else EXIT_NO


def cmd_iter(args, out):
    lang = load_lang(args.lang, args)
    budget = IterBudget(args.max_len, args.max_n, node_limit=args.budget)
    out.words(iterated_shuffle(lang, args.variant, budget))
    return EXIT_OK


def cmd_check(args, out):
    skip = set(args.skip or ())
    unknown = skip - set(SUITE_KEYS)
    if unknown:
        raise ShuffleError(f"unknown property keys {sorted(unknown)}; choose from {', '.join(SUITE_KEYS)}")
    failed = 0
    for key, res in run_suite(args.seed, args.cases, args.max_word, args.max_n, skip):
        status = "PASS" if res.passed else "FAIL"
        failed += not res.passed
        if out.fmt == "records":
            out.record("property", key, name=res.name, status=status, cases=res.cases,
                       counterexamples=res.failures[:5], note=res.note)
            continue
        out.line(f"{status}  {key:<16} {res.cases:>7} cases  {res.name}")
        for detail in res.failures[:5]:
            out.line(f"      counterexample: {detail}")
        if res.note:
            out.line(f"      {res.note}")
    if out.fmt != "records":
        out.line("all properties passed" if not failed else f"{failed} properties failed")
    return EXIT_OK if not failed else EXIT_NO


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--alphabet", help="declared symbols, e.g. abc (required for files without a header)")
    common.add_argument("--format", choices=("plain", "set", "records"), default="plain",
                        help="plain lines, one-line set, or JSON records")
    common.add_argument("--budget", type=positive_int, default=None,
                        help=f"node budget (default ${BUDGET_ENV} or {DEFAULT_NODE_BUDGET})")
    common.add_argument("--debug", action="store_true", help="show padded rows on stderr")

    parser = argparse.ArgumentParser(prog="shufflekit", description="n-ary literal shuffle toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shuffle", parents=[common], help="compute a shuffle of words or languages")
    p.add_argument("--variant", default="1", help="1, 2 or general")
    p.add_argument("--algo", choices=[a.value for a in Shuffle2Algo], default="columns",
                   help="algorithm for variant 2")
    p.add_argument("--lang", action="append", help="language file used as an argument (repeatable)")
    p.add_argument("words", nargs="*", help="argument words; @eps is the empty word")
    p.set_defaults(func=cmd_shuffle)

    p = sub.add_parser("member", parents=[common], help="decide membership")
    p.add_argument("--variant", default="2", help="1, 2 or general")
    p.add_argument("--lang", help="language file (with --iterated)")
    p.add_argument("--iterated", action="store_true", help="test the iterated shuffle of --lang")
    p.add_argument("--witness", action="store_true", help="print argument tuple and offsets")
    p.add_argument("word")
    p.add_argument("args", nargs="*", help="argument words")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("intersect", parents=[common],
                       help="does the arity-n literal shuffle of L meet a regular language?")
    p.add_argument("--lang", required=True)
    p.add_argument("--n", type=positive_int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--regex")
    g.add_argument("--automaton")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("iter", parents=[common], help="iterated shuffle up to a length")
    p.add_argument("--lang", required=True)
    p.add_argument("--variant", default="1", help="1, 2 or general")
    p.add_argument("--max-len", type=nonnegative_int, required=True)
    p.add_argument("--max-n", type=nonnegative_int)
    p.set_defaults(func=cmd_iter)

    p = sub.add_parser("check", parents=[common], help="run the seeded property suite")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=positive_int, default=200)
    p.add_argument("--max-word", type=nonnegative_int, default=4)
    p.add_argument("--max-n", type=positive_int, default=4)
    p.add_argument("--skip", action="append", metavar="KEY", help=f"skip a property ({', '.join(SUITE_KEYS)})")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format)
    try:
        if args.budget is None:
            args.budget = default_budget()
        return args.func(args, out)
    except NodeBudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        if args.format == "records":
            out.record("verdict", "INCONCLUSIVE", nodes_explored=exc.nodes_explored)
        else:
            out.line("INCONCLUSIVE")
        return EXIT_BUDGET
    except (ShuffleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
