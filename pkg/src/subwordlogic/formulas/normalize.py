"""Constant elimination, negation normal form and quantifier-free DNF."""
from __future__ import annotations

import enum
import itertools
from typing import Optional

from ..automata import nfa as au
from ..automata.nfa import Closure, Nfa
from ..errors import FragmentError
from ..words import Alphabet, Relation, compare, is_subword
from .ast import (FALSE, PARTITION, And, Bool, Const, Exists, Forall, Formula, Iff, Implies,
                  MemberAtom, Not, Or, Rel, RelAtom, children, conj, disj, rebuild)


def holds(r: Rel, u: str, v: str) -> bool:
    """Truth of ``u r v`` for concrete words."""
    if r is Rel.SUBEQ:
        return is_subword(u, v)
    return compare(u, v) is _REL_TO_CMP[r]


_REL_TO_CMP = {Rel.EQ: Relation.EQ, Rel.STRICT: Relation.LT, Rel.STRICT_INV: Relation.GT,
               Rel.INC: Relation.INC}

# closure of the set {x : w r x}
_CONST_LEFT = {Rel.SUBEQ: Closure.UP, Rel.STRICT: Closure.STRICT_UP, Rel.STRICT_INV: Closure.STRICT_DOWN,
               Rel.EQ: Closure.EXACT, Rel.INC: Closure.INCOMPARABLE}
# closure of the set {x : x r w}
_CONST_RIGHT = {Rel.SUBEQ: Closure.DOWN, Rel.STRICT: Closure.STRICT_DOWN, Rel.STRICT_INV: Closure.STRICT_UP,
                Rel.EQ: Closure.EXACT, Rel.INC: Closure.INCOMPARABLE}


def lang_nfa(lang, alphabet: Alphabet) -> Nfa:
    """Automaton for a membership payload (regex or automaton)."""
    if isinstance(lang, Nfa):
        if lang.alphabet != alphabet:
            return _realphabet(lang, alphabet)
        return lang
    return au.regex_to_nfa(lang, alphabet)


def _realphabet(m: Nfa, alphabet: Alphabet) -> Nfa:
    missing = [s for s in m.alphabet if s not in alphabet]
    if missing:
        from ..errors import AlphabetError
        raise AlphabetError(f"automaton uses symbols {missing} outside alphabet {alphabet}")
    return Nfa.build(alphabet, m.num_states, m.initial, m.final, m.transitions)


def eliminate_constants(f: Formula, alphabet: Alphabet) -> Formula:
    """Rewrite atoms mentioning word constants as membership atoms or truth values."""
    if isinstance(f, RelAtom):
        l, r = f.left, f.right
        if isinstance(l, Const) and isinstance(r, Const):
            return Bool(holds(f.rel, l.word, r.word))
        if isinstance(l, Const):
            return MemberAtom(r, au.word_closure(_CONST_LEFT[f.rel], l.word, alphabet))
        if isinstance(r, Const):
            return MemberAtom(l, au.word_closure(_CONST_RIGHT[f.rel], r.word, alphabet))
        return f
    if isinstance(f, MemberAtom):
        if isinstance(f.term, Const):
            return Bool(au.accepts(lang_nfa(f.lang, alphabet), f.term.word))
        return f
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [eliminate_constants(k, alphabet) for k in kids])


class Form(enum.Enum):
    NNF = "nnf"
    DNF_QF = "dnf_qf"


def normalize(f: Formula, form=Form.NNF, alphabet: Optional[Alphabet] = None) -> Formula:
    form = Form(form) if not isinstance(form, Form) else form
    if form is Form.NNF:
        return nnf(f, alphabet)
    clauses = dnf_clauses(f, alphabet)
    return disj(*(conj(*c) for c in clauses)) if clauses else FALSE


def nnf(f: Formula, alphabet: Optional[Alphabet] = None, negate: bool = False) -> Formula:
    """Push negations to atoms and remove them there.

    The result contains only And, Or, quantifiers, Bool, membership atoms and
    relation atoms over the partition relations (=, <, >, ><).
    """
    if isinstance(f, Bool):
        return Bool(f.value != negate)
    if isinstance(f, RelAtom):
        return _rel_nnf(f, negate)
    if isinstance(f, MemberAtom):
        if not negate:
            return f
        if alphabet is None:
            raise FragmentError("negated membership needs an alphabet to complement")
        return MemberAtom(f.term, au.complement(lang_nfa(f.lang, alphabet)))
    if isinstance(f, Not):
        return nnf(f.arg, alphabet, not negate)
    if isinstance(f, And):
        parts = [nnf(a, alphabet, negate) for a in f.args]
        return disj(*parts) if negate else conj(*parts)
    if isinstance(f, Or):
        parts = [nnf(a, alphabet, negate) for a in f.args]
        return conj(*parts) if negate else disj(*parts)
    if isinstance(f, Implies):
        return nnf(Or((Not(f.left), f.right)), alphabet, negate)
    if isinstance(f, Iff):
        both = And((Implies(f.left, f.right), Implies(f.right, f.left)))
        return nnf(both, alphabet, negate)
    if isinstance(f, Exists):
        body = nnf(f.body, alphabet, negate)
        return Forall(f.var, body) if negate else Exists(f.var, body)
    if isinstance(f, Forall):
        body = nnf(f.body, alphabet, negate)
        return Exists(f.var, body) if negate else Forall(f.var, body)
    raise TypeError(f"not a formula: {f!r}")


def _rel_nnf(f: RelAtom, negate: bool) -> Formula:
    if f.rel is Rel.SUBEQ:
        kinds = (Rel.STRICT, Rel.EQ)
    else:
        kinds = (f.rel,)
    if negate:
        kinds = tuple(r for r in PARTITION if r not in kinds)
    return disj(*(RelAtom(f.left, r, f.right) for r in kinds))


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    return all(is_quantifier_free(k) for k in children(f))


def dnf_clauses(f: Formula, alphabet: Optional[Alphabet] = None) -> list:
    """Disjunctive normal form as a list of clauses (lists of positive atoms).

    Clauses containing FALSE are dropped; TRUE literals are omitted, so an
    empty clause means "true" and an empty list means "false".
    """
    if not is_quantifier_free(f):
        raise FragmentError("DNF requires a quantifier-free formula")
    return _dnf(nnf(f, alphabet))


def _dnf(f: Formula) -> list:
    if isinstance(f, Bool):
        return [[]] if f.value else []
    if isinstance(f, (RelAtom, MemberAtom)):
        return [[f]]
    if isinstance(f, Or):
        out = []
        for a in f.args:
            out.extend(_dnf(a))
        return _dedup(out)
    if isinstance(f, And):
        out = [[]]
        for a in f.args:
            sub = _dnf(a)
            out = [c + d for c, d in itertools.product(out, sub)]
            if not out:
                return []
        return _dedup(out)
    raise TypeError(f"unexpected node in NNF: {f!r}")


def _dedup(clauses):
    seen = set()
    out = []
    for c in clauses:
        key = []
        for a in c:
            if a not in key:
                key.append(a)
        t = tuple(key)
        if t not in seen:
            seen.add(t)
            out.append(list(t))
    return out


__all__ = ["Form", "dnf_clauses", "eliminate_constants", "holds", "is_quantifier_free", "lang_nfa",
           "nnf", "normalize"]
