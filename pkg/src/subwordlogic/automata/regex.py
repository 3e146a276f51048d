"""Regular expressions: AST, parser and printer.

Syntax: ``+`` union, juxtaposition for concatenation, postfix ``*`` and
``^+``, parentheses, ``@`` for the empty word and ``#`` for the empty
language.  Any other non-blank character is a letter.  ``r^+`` is stored as
``Concat(r, Star(r))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import AlphabetError, ParseError

_SPECIAL = set("+*()@#^")


class Regex:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class EmptySet(Regex):
    pass


@dataclass(frozen=True)
class Epsilon(Regex):
    pass


@dataclass(frozen=True)
class Sym(Regex):
    symbol: str


@dataclass(frozen=True)
class Concat(Regex):
    parts: tuple


@dataclass(frozen=True)
class Union(Regex):
    parts: tuple


@dataclass(frozen=True)
class Star(Regex):
    inner: Regex


def plus(r: Regex) -> Regex:
    return Concat((r, Star(r)))


def concat(*parts: Regex) -> Regex:
    if not parts:
        return Epsilon()
    if len(parts) == 1:
        return parts[0]
    return Concat(tuple(parts))


def union(*parts: Regex) -> Regex:
    if not parts:
        return EmptySet()
    if len(parts) == 1:
        return parts[0]
    return Union(tuple(parts))


def word(w: str) -> Regex:
    return concat(*(Sym(c) for c in w)) if w else Epsilon()


def any_of(symbols) -> Regex:
    return union(*(Sym(c) for c in symbols))


def symbols_of(r: Regex) -> set:
    if isinstance(r, Sym):
        return {r.symbol}
    if isinstance(r, (Concat, Union)):
        out = set()
        for p in r.parts:
            out |= symbols_of(p)
        return out
    if isinstance(r, Star):
        return symbols_of(r.inner)
    return set()


def check_alphabet(r: Regex, alphabet) -> None:
    bad = sorted(s for s in symbols_of(r) if s not in alphabet)
    if bad:
        raise AlphabetError(f"regex {to_text(r)!r} uses symbols {bad} outside alphabet {alphabet}")


# -- printing ---------------------------------------------------------------

def to_text(r: Regex) -> str:
    if isinstance(r, EmptySet):
        return "#"
    if isinstance(r, Epsilon):
        return "@"
    if isinstance(r, Sym):
        return r.symbol
    if isinstance(r, Union):
        return "+".join(_wrap(p, (Union,)) for p in r.parts)
    if isinstance(r, Concat):
        return "".join(_wrap(p, (Union, Concat)) for p in r.parts)
    if isinstance(r, Star):
        return _wrap(r.inner, (Union, Concat, Star)) + "*"
    raise TypeError(f"not a regex: {r!r}")


def _wrap(r, kinds):
    s = to_text(r)
    return f"({s})" if isinstance(r, kinds) else s


# -- parsing ----------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = offset

    def error(self, msg):
        raise ParseError(msg, self.offset + self.pos, self.text)

    def peek(self) -> Optional[str]:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> Regex:
        r = self.union()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()!r} in regex")
        return r

    def union(self) -> Regex:
        parts = [self.concat()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.concat())
        return union(*parts)

    def concat(self) -> Regex:
        parts = []
        while True:
            c = self.peek()
            if c is None or c in "+)":
                break
            parts.append(self.postfix())
        if not parts:
            self.error("empty regex operand (use @ for the empty word)")
        return concat(*parts)

    def postfix(self) -> Regex:
        r = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                r = Star(r)
            elif c == "^":
                self.pos += 1
                if self.peek() != "+":
                    self.error("expected '+' after '^'")
                self.pos += 1
                r = plus(r)
            else:
                return r

    def atom(self) -> Regex:
        c = self.peek()
        if c == "(":
            self.pos += 1
            r = self.union()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return r
        if c == "@":
            self.pos += 1
            return Epsilon()
        if c == "#":
            self.pos += 1
            return EmptySet()
        if c is None or c in _SPECIAL:
            self.error(f"unexpected {c!r} in regex")
        self.pos += 1
        return Sym(c)


def parse_regex(text: str, alphabet=None, offset: int = 0) -> Regex:
    r = _Parser(text, offset).parse()
    if alphabet is not None:
        check_alphabet(r, alphabet)
    return r


# -- direct matcher (independent of the automaton construction) --------------

def matches(r: Regex, w: str) -> bool:
    """Backtracking matcher over the AST, used as an oracle in tests."""
    return len(w) in _ends(r, w, 0)


def _ends(r, w, i) -> frozenset:
    if isinstance(r, EmptySet):
        return frozenset()
    if isinstance(r, Epsilon):
        return frozenset({i})
    if isinstance(r, Sym):
        return frozenset({i + 1}) if i < len(w) and w[i] == r.symbol else frozenset()
    if isinstance(r, Union):
        out = set()
        for p in r.parts:
            out |= _ends(p, w, i)
        return frozenset(out)
    if isinstance(r, Concat):
        cur = {i}
        for p in r.parts:
            nxt = set()
            for j in cur:
                nxt |= _ends(p, w, j)
            cur = nxt
        return frozenset(cur)
    if isinstance(r, Star):
        seen = {i}
        todo = [i]
        while todo:
            j = todo.pop()
            for k in _ends(r.inner, w, j):
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
        return frozenset(seen)
    raise TypeError(r)
