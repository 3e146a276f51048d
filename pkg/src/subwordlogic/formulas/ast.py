"""Formula syntax trees.

Terms are variables or word constants.  Formulas are immutable and hashable,
so they can be used as cache keys and compared structurally.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Union as _U

from ..automata.nfa import Nfa
from ..automata.regex import Regex


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    word: str

    def __str__(self):
        return f'"{self.word}"'


Term = _U[Var, Const]


class Rel(enum.Enum):
    SUBEQ = "<="
    STRICT = "<"
    STRICT_INV = ">"
    EQ = "="
    INC = "><"

    @property
    def inverse(self) -> "Rel":
        return _INVERSE[self]


_INVERSE = {Rel.SUBEQ: None, Rel.STRICT: Rel.STRICT_INV, Rel.STRICT_INV: Rel.STRICT,
            Rel.EQ: Rel.EQ, Rel.INC: Rel.INC}

# the four relations that partition pairs of words
PARTITION = (Rel.EQ, Rel.STRICT, Rel.STRICT_INV, Rel.INC)


class Formula:
    __slots__ = ()

    def __str__(self):
        from .printer import to_text
        return to_text(self)

    def __and__(self, other):
        return And((self, other))

    def __or__(self, other):
        return Or((self, other))

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Bool(Formula):
    value: bool


@dataclass(frozen=True)
class RelAtom(Formula):
    left: Term
    rel: Rel
    right: Term


@dataclass(frozen=True)
class MemberAtom(Formula):
    term: Term
    lang: _U[Regex, Nfa]


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


TRUE = Bool(True)
FALSE = Bool(False)
ATOMS = (Bool, RelAtom, MemberAtom)
QUANTIFIERS = (Exists, Forall)


# -- convenience constructors -------------------------------------------------

def term(t) -> Term:
    """Strings become variables; use Const for words."""
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, str):
        return Var(t)
    raise TypeError(f"not a term: {t!r}")


def rel(left, r: Rel, right) -> RelAtom:
    return RelAtom(term(left), r, term(right))


def subeq(left, right) -> RelAtom:
    return rel(left, Rel.SUBEQ, right)


def strict(left, right) -> RelAtom:
    return rel(left, Rel.STRICT, right)


def eq(left, right) -> RelAtom:
    return rel(left, Rel.EQ, right)


def member(t, lang) -> MemberAtom:
    return MemberAtom(term(t), lang)


def conj(*args: Formula) -> Formula:
    """n-ary conjunction that flattens nested And and skips TRUE."""
    out = []
    for a in args:
        if isinstance(a, And):
            out.extend(a.args)
        elif a == TRUE:
            continue
        else:
            out.append(a)
    if any(a == FALSE for a in out):
        return FALSE
    if not out:
        return TRUE
    return out[0] if len(out) == 1 else And(tuple(out))


def disj(*args: Formula) -> Formula:
    out = []
    for a in args:
        if isinstance(a, Or):
            out.extend(a.args)
        elif a == FALSE:
            continue
        else:
            out.append(a)
    if any(a == TRUE for a in out):
        return TRUE
    if not out:
        return FALSE
    return out[0] if len(out) == 1 else Or(tuple(out))


def exists(names, body: Formula) -> Formula:
    if isinstance(names, str):
        names = [names]
    for n in reversed(list(names)):
        body = Exists(n, body)
    return body


def forall(names, body: Formula) -> Formula:
    if isinstance(names, str):
        names = [names]
    for n in reversed(list(names)):
        body = Forall(n, body)
    return body


# -- traversal ------------------------------------------------------------------

def children(f: Formula) -> tuple:
    if isinstance(f, (And, Or)):
        return f.args
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (Implies, Iff)):
        return (f.left, f.right)
    if isinstance(f, QUANTIFIERS):
        return (f.body,)
    return ()


def terms_of(f: Formula) -> tuple:
    if isinstance(f, RelAtom):
        return (f.left, f.right)
    if isinstance(f, MemberAtom):
        return (f.term,)
    return ()


def walk(f: Formula) -> Iterator[Formula]:
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))


def variables(f: Formula) -> set:
    """All variable names, bound or free."""
    out = set()
    for g in walk(f):
        if isinstance(g, QUANTIFIERS):
            out.add(g.var)
        out.update(t.name for t in terms_of(g) if isinstance(t, Var))
    return out


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    kids = children(f)
    if kids:
        out = frozenset()
        for k in kids:
            out |= free_vars(k)
        return out
    return frozenset(t.name for t in terms_of(f) if isinstance(t, Var))


def constants(f: Formula) -> set:
    return {t.word for g in walk(f) for t in terms_of(g) if isinstance(t, Const)}


def rebuild(f: Formula, kids) -> Formula:
    """Same node type with new children."""
    if isinstance(f, And):
        return And(tuple(kids))
    if isinstance(f, Or):
        return Or(tuple(kids))
    if isinstance(f, Not):
        return Not(kids[0])
    if isinstance(f, Implies):
        return Implies(*kids)
    if isinstance(f, Iff):
        return Iff(*kids)
    if isinstance(f, Exists):
        return Exists(f.var, kids[0])
    if isinstance(f, Forall):
        return Forall(f.var, kids[0])
    return f


def substitute(f: Formula, mapping: dict) -> Formula:
    """Replace free occurrences of variables by terms (no capture check)."""
    if isinstance(f, RelAtom):
        return RelAtom(_sub_term(f.left, mapping), f.rel, _sub_term(f.right, mapping))
    if isinstance(f, MemberAtom):
        return MemberAtom(_sub_term(f.term, mapping), f.lang)
    if isinstance(f, QUANTIFIERS) and f.var in mapping:
        inner = {k: v for k, v in mapping.items() if k != f.var}
        return rebuild(f, [substitute(f.body, inner)])
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [substitute(k, mapping) for k in kids])


def _sub_term(t, mapping):
    if isinstance(t, Var) and t.name in mapping:
        return term(mapping[t.name])
    return t


def rename_bound(f: Formula, old: str, new: str) -> Formula:
    """Rename every occurrence (bound and free) of a variable name."""
    if isinstance(f, QUANTIFIERS):
        v = new if f.var == old else f.var
        return type(f)(v, rename_bound(f.body, old, new))
    if isinstance(f, (RelAtom, MemberAtom)):
        return substitute(f, {old: Var(new)})
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [rename_bound(k, old, new) for k in kids])


def size(f: Formula) -> int:
    return sum(1 for _ in walk(f))
