"""Dialect, variable count and quantifier-alternation levels."""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .ast import (And, Bool, Const, Exists, Forall, Formula, Iff, Implies, MemberAtom, Not, Or,
                  RelAtom, terms_of, variables, walk)


class Dialect(enum.Enum):
    PURE = "pure"
    BASIC = "basic"
    EXTENDED = "extended"


@dataclass(frozen=True)
class FragmentProfile:
    dialect: Dialect
    fo_vars: int
    sigma_level: int
    pi_level: int

    def __str__(self):
        return (f"dialect={self.dialect.value} sigma={self.sigma_level} "
                f"pi={self.pi_level} vars={self.fo_vars}")

    def as_dict(self) -> dict:
        return {"dialect": self.dialect.value, "sigma": self.sigma_level,
                "pi": self.pi_level, "vars": self.fo_vars}


def dialect(f: Formula) -> Dialect:
    has_const = False
    for g in walk(f):
        if isinstance(g, MemberAtom):
            return Dialect.EXTENDED
        has_const = has_const or any(isinstance(t, Const) for t in terms_of(g))
    return Dialect.BASIC if has_const else Dialect.PURE


def levels(f: Formula) -> tuple:
    """Minimal (sigma, pi) indices of a formula, without prenexing."""
    if isinstance(f, (Bool, RelAtom, MemberAtom)):
        return 0, 0
    if isinstance(f, Not):
        s, p = levels(f.arg)
        return p, s
    if isinstance(f, (And, Or)):
        pairs = [levels(a) for a in f.args]
        return max(s for s, _ in pairs), max(p for _, p in pairs)
    if isinstance(f, Implies):
        sa, pa = levels(f.left)
        sb, pb = levels(f.right)
        return max(pa, sb), max(sa, pb)
    if isinstance(f, Iff):
        m = max(levels(f.left) + levels(f.right))
        return m, m
    if isinstance(f, Exists):
        s = max(1, levels(f.body)[0])
        return s, s + 1
    if isinstance(f, Forall):
        p = max(1, levels(f.body)[1])
        return p + 1, p
    raise TypeError(f"not a formula: {f!r}")


def classify(f: Formula) -> FragmentProfile:
    s, p = levels(f)
    return FragmentProfile(dialect(f), len(variables(f)), s, p)
