"""n-ary initial literal and literal shuffles on words and finite languages."""

from .automata import (
    Dfa,
    Nfa,
    accepts,
    compile_regex,
    determinize,
    enumerate_upto,
    from_finite_lang,
    intersect,
    is_empty,
    minimize,
    regex_parse,
    regex_to_nfa,
    shortest_word,
)
from .core import PAD, Alphabet, Lang, concat_langs, erase_pad, interleave, parse_lang_file, render_lang, reverse
from .decide import (
    Verdict,
    Witness,
    member_general_shuffle,
    member_iterated,
    member_shuffle1,
    member_shuffle2,
    shuffle2_intersect_regular,
)
from .errors import (
    AlphabetMismatch,
    BadToken,
    EmptyArity,
    LengthMismatch,
    NodeBudgetExceeded,
    ShuffleError,
    StateBlowupLimit,
)
from .shuffle import (
    IterBudget,
    Shuffle2Algo,
    ShuffleVariant,
    general_shuffle,
    general_shuffle_n,
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

__version__ = "0.1.0"
