"""Recursive-descent parser for the formula language.

Grammar, loosest binding first::

    formula  := iff
    iff      := imp ('<->' imp)*            left associative
    imp      := or ('->' imp)?              right associative
    or       := and ('|' and)*
    and      := unary ('&' unary)*
    unary    := '!' unary | quant | atom | '(' formula ')'
    quant    := ('E' | 'A') ident (','? ident)* '.' formula
    atom     := term op term | term 'in' '/' regex '/' | 'true' | 'false'
    op       := '<=' | '<' | '>=' | '>' | '=' | '><'

Quantifier bodies extend as far right as possible.  An optional first line
``alphabet: <symbols>`` fixes the alphabet.
"""
from __future__ import annotations

import re
from typing import List, Optional, Tuple

from ..automata.regex import parse_regex
from ..errors import AlphabetError, ParseError
from ..words import Alphabet
from .ast import (FALSE, TRUE, And, Const, Exists, Forall, Formula, Iff, Implies, MemberAtom, Not,
                  Or, Rel, RelAtom, Var)

KEYWORDS = frozenset({"E", "A", "in", "true", "false"})

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><->|->|<=|>=|><|[<>=!&|().,])
  | (?P<str>"[^"]*")
  | (?P<regex>/[^/]*/)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(text: str, base: int = 0) -> List[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", base + pos, text)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), base + pos))
        pos = m.end()
    toks.append(_Tok("eof", "", base + len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, alphabet: Optional[Alphabet], base: int = 0):
        self.text = text
        self.alphabet = alphabet
        self.toks = _tokenize(text, base)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, tok.pos, self.text)

    def accept(self, text) -> bool:
        if self.tok.kind in ("op", "ident") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")

    def parse(self) -> Formula:
        f = self.iff()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return f

    def iff(self) -> Formula:
        f = self.imp()
        while self.accept("<->"):
            f = Iff(f, self.imp())
        return f

    def imp(self) -> Formula:
        f = self.disj()
        if self.accept("->"):
            return Implies(f, self.imp())
        return f

    def disj(self) -> Formula:
        args = [self.conj()]
        while self.accept("|"):
            args.append(self.conj())
        return args[0] if len(args) == 1 else Or(tuple(args))

    def conj(self) -> Formula:
        args = [self.unary()]
        while self.accept("&"):
            args.append(self.unary())
        return args[0] if len(args) == 1 else And(tuple(args))

    def unary(self) -> Formula:
        tok = self.tok
        if self.accept("!"):
            return Not(self.unary())
        if self.accept("("):
            f = self.iff()
            self.expect(")")
            return f
        if tok.kind == "ident" and tok.text in ("E", "A"):
            self.i += 1
            return self.quantifier(Exists if tok.text == "E" else Forall)
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        return self.atom()

    def quantifier(self, cls) -> Formula:
        names = [self.ident()]
        while not self.accept("."):
            self.accept(",")
            names.append(self.ident())
        body = self.iff()
        for n in reversed(names):
            body = cls(n, body)
        return body

    def ident(self) -> str:
        tok = self.tok
        if tok.kind != "ident" or tok.text in KEYWORDS:
            self.error(f"expected a variable name, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok.text

    def term(self):
        tok = self.tok
        if tok.kind == "str":
            self.i += 1
            w = tok.text[1:-1]
            if self.alphabet is not None:
                bad = [c for c in w if c not in self.alphabet]
                if bad:
                    raise AlphabetError(f"constant {tok.text} uses {bad[0]!r} outside alphabet "
                                        f"{self.alphabet} (at position {tok.pos})")
            return Const(w)
        return Var(self.ident())

    def atom(self) -> Formula:
        left = self.term()
        tok = self.tok
        if self.accept("in"):
            rt = self.tok
            if rt.kind != "regex":
                self.error("expected /regex/ after 'in'")
            self.i += 1
            lang = parse_regex(rt.text[1:-1], self.alphabet, offset=rt.pos + 1)
            return MemberAtom(left, lang)
        ops = {"<=": (Rel.SUBEQ, False), "<": (Rel.STRICT, False), ">=": (Rel.SUBEQ, True),
               ">": (Rel.STRICT_INV, False), "=": (Rel.EQ, False), "><": (Rel.INC, False)}
        if tok.kind == "op" and tok.text in ops:
            self.i += 1
            r, flip = ops[tok.text]
            right = self.term()
            return RelAtom(right, r, left) if flip else RelAtom(left, r, right)
        self.error(f"expected a relation after term, found {tok.text or 'end of input'!r}")


def split_header(text: str) -> Tuple[Optional[Alphabet], str]:
    """Strip an ``alphabet:`` header and ``#`` comment lines.

    Both are blanked rather than removed so error positions stay valid.
    """
    alphabet = None
    lines = text.split("\n")
    for k, line in enumerate(lines):
        s = line.strip()
        if s.startswith("#"):
            lines[k] = " " * len(line)
        elif s.startswith("alphabet:") and alphabet is None and not "".join(lines[:k]).strip():
            alphabet = Alphabet.of("".join(s[len("alphabet:"):].split()))
            lines[k] = " " * len(line)
    return alphabet, "\n".join(lines)


def parse(text: str, alphabet: Optional[Alphabet] = None) -> Formula:
    """Parse one formula; a header alphabet must agree with the given one."""
    return parse_document(text, alphabet)[0]


def parse_document(text: str, alphabet: Optional[Alphabet] = None) -> Tuple[Formula, Optional[Alphabet]]:
    header, body = split_header(text)
    alphabet = _merge(header, alphabet)
    return _Parser(body, alphabet).parse(), alphabet


def parse_batch(text: str, alphabet: Optional[Alphabet] = None) -> Tuple[list, Optional[Alphabet]]:
    """Several formulas separated by ``;`` (outside regexes and constants)."""
    header, body = split_header(text)
    alphabet = _merge(header, alphabet)
    out = []
    # split on ';' while skipping quoted constants and regexes
    pieces, cur, quote = [], [], None
    base = 0
    for pos, ch in enumerate(body):
        if quote:
            cur.append(ch)
            if ch == quote:
                quote = None
        elif ch in '"/':
            quote = ch
            cur.append(ch)
        elif ch == ";":
            pieces.append((base, "".join(cur)))
            cur, base = [], pos + 1
        else:
            cur.append(ch)
    pieces.append((base, "".join(cur)))
    for base, piece in pieces:
        if piece.strip():
            out.append(_Parser(" " * base + piece, alphabet).parse())
    return out, alphabet


def _merge(header, alphabet):
    if header is not None and alphabet is not None and header != alphabet:
        raise AlphabetError(f"header alphabet {header} differs from requested alphabet {alphabet}")
    return header if header is not None else alphabet
