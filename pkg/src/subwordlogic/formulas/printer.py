"""Concrete syntax output.  ``parse(to_text(f)) == f`` for parsed formulas."""
from __future__ import annotations

from ..automata.nfa import Nfa, nfa_to_regex
from ..automata.regex import to_text as regex_text
from .ast import (And, Bool, Const, Exists, Forall, Formula, Iff, Implies, MemberAtom, Not, Or,
                  RelAtom, Var)


def term_text(t) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Const):
        return f'"{t.word}"'
    raise TypeError(f"not a term: {t!r}")


def lang_text(lang) -> str:
    if isinstance(lang, Nfa):
        lang = nfa_to_regex(lang)
    return regex_text(lang)


def to_text(f: Formula) -> str:
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    if isinstance(f, RelAtom):
        return f"{term_text(f.left)} {f.rel.value} {term_text(f.right)}"
    if isinstance(f, MemberAtom):
        return f"{term_text(f.term)} in /{lang_text(f.lang)}/"
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return f"!{inner}" if isinstance(f.arg, (Bool, Not)) else f"!({inner})"
    if isinstance(f, And):
        return " & ".join(_wrap(a) for a in f.args)
    if isinstance(f, Or):
        return " | ".join(_wrap(a) for a in f.args)
    if isinstance(f, Implies):
        return f"{_wrap(f.left)} -> {_wrap(f.right)}"
    if isinstance(f, Iff):
        return f"{_wrap(f.left)} <-> {_wrap(f.right)}"
    if isinstance(f, (Exists, Forall)):
        q = "E" if isinstance(f, Exists) else "A"
        return f"{q} {f.var}. {_wrap(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def _wrap(f: Formula) -> str:
    s = to_text(f)
    simple = isinstance(f, (Bool, RelAtom, MemberAtom, Not))
    return s if simple else f"({s})"
