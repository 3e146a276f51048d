from .nfa import (
    EPS,
    Closure,
    Nfa,
    Op,
    Query,
    accepts,
    combine,
    compact,
    complement,
    concatenation,
    counterexample,
    determinize,
    empty,
    enumerate_members,
    equivalent,
    from_word,
    from_words,
    intersection,
    is_empty,
    is_universal,
    iter_members,
    length_between,
    minimize,
    nfa_to_regex,
    query,
    regex_to_nfa,
    remove_epsilon,
    renumber,
    star,
    trim,
    union,
    universal,
    word_closure,
)
from .regex import Regex, matches, parse_regex, to_text
from .serialize import nfa_from_text, nfa_to_dot, nfa_to_text

__all__ = [
    "EPS", "Closure", "Nfa", "Op", "Query", "Regex", "accepts", "combine", "compact", "complement",
    "concatenation", "counterexample", "determinize", "empty", "enumerate_members", "equivalent",
    "from_word", "from_words", "intersection", "is_empty", "is_universal", "iter_members",
    "length_between", "matches", "minimize", "nfa_from_text", "nfa_to_dot", "nfa_to_regex",
    "nfa_to_text", "parse_regex", "query", "regex_to_nfa", "remove_epsilon", "renumber", "star",
    "to_text", "trim", "union", "universal", "word_closure",
]
