"""Basic-dialect formulas for simple word properties, and for regular languages.

Every builder takes the full alphabet the formula is interpreted over, since
"letters outside B" depends on it, and the variable names to use.  Bound
variables deliberately reuse the names of other parameters so the variable
count stays at three.
"""
from __future__ import annotations

import enum
from typing import Iterable, Optional, Tuple

from ..automata import nfa as au
from ..automata.nfa import EPS, Nfa
from ..formulas.ast import (FALSE, Const, Exists, Forall, Formula, Implies, Not, Var, conj, disj,
                            subeq)
from ..words import Alphabet


class Prop(enum.Enum):
    P1 = "P1"  # x in B*
    P2 = "P2"  # pi_B(y) <= x
    P3 = "P3"  # x = pi_B(y)
    P4 = "P4"  # pi_B(x) = pi_B(y)
    P5 = "P5"  # x starts with a (or ends with a)
    P6 = "P6"  # x has no factor aa
    P7 = "P7"  # x has no factor in BB
    P8 = "P8"  # |pi_B(x)| = 2


def _t(name_or_term):
    return Var(name_or_term) if isinstance(name_or_term, str) else name_or_term


def _c(word: str) -> Const:
    return Const(word)


def _not_sub(u, v) -> Formula:
    return Not(subeq(u, v))


def _letters(A: Alphabet, B: Iterable[str]) -> list:
    B = set(B)
    bad = B - set(A)
    if bad:
        raise ValueError(f"letters {sorted(bad)} are not in alphabet {A}")
    return [a for a in A if a in B]


def _others(A: Alphabet, B: Iterable[str]) -> list:
    B = set(B)
    return [a for a in A if a not in B]


def p1(A: Alphabet, B, x="x") -> Formula:
    _letters(A, B)
    return conj(*(_not_sub(_c(a), _t(x)) for a in _others(A, B)))


def p2(A: Alphabet, B, x="x", y="y", z="z") -> Formula:
    """pi_B(y) <= x."""
    zt = Var(z)
    guard = conj(subeq(zt, _t(y)), p1(A, B, zt))
    return Forall(z, Implies(guard, subeq(zt, _t(x))))


def p3(A: Alphabet, B, x="x", y="y", z="z") -> Formula:
    """x = pi_B(y)."""
    return conj(p2(A, B, x, y, z), subeq(_t(x), _t(y)), p1(A, B, _t(x)))


def p4(A: Alphabet, B, x="x", y="y", z="z") -> Formula:
    """pi_B(x) = pi_B(y)."""
    return conj(p2(A, B, x, y, z), p2(A, B, y, x, z))


def p5(A: Alphabet, a: str, x="x", z="z", y="y", end: bool = False) -> Formula:
    """x starts with a; with ``end`` the mirrored property, x ends with a."""
    _letters(A, [a])
    zt = Var(z)
    pair = (lambda b: a + b) if end else (lambda b: b + a)
    body = conj(
        subeq(_c(a), zt),
        *(_not_sub(_c(pair(b)), zt) for b in _others(A, [a])),
        subeq(zt, _t(x)),
        p2(A, _others(A, [a]), z, x, y),
    )
    return Exists(z, body)


def p6(A: Alphabet, a: str, x="x", y="y", z="z") -> Formula:
    """x has no factor aa."""
    return p7(A, [a], x, y, z)


def p7(A: Alphabet, B, x="x", y="y", z="z") -> Formula:
    """x has no factor in BB."""
    B = _letters(A, B)
    rest = _others(A, B)
    zt = Var(z)
    clauses = []
    for a in B:
        for a2 in B:
            premise = conj(subeq(_c(a + a2), zt), subeq(Var(y), zt), subeq(zt, _t(x)))
            gap = disj(*(subeq(_c(a + b + a2), zt) for b in rest))
            clauses.append(Implies(premise, gap))
    return Exists(y, conj(p3(A, rest, y, x, z), Forall(z, conj(*clauses))))


def p8(A: Alphabet, B, x="x") -> Formula:
    """|pi_B(x)| = 2."""
    B = _letters(A, B)
    xt = _t(x)
    two = disj(*(subeq(_c(a + b), xt) for a in B for b in B))
    three = conj(*(_not_sub(_c(a + b + c), xt) for a in B for b in B for c in B))
    return conj(two, three)


def p_formula(prop, A: Alphabet, B=None, a: Optional[str] = None, x="x", y="y", z="z",
              end: bool = False) -> Formula:
    """Dispatch on the property name.  P5 and P6 take a letter ``a``, the others a set ``B``."""
    prop = Prop(prop) if not isinstance(prop, Prop) else prop
    if prop in (Prop.P5, Prop.P6):
        if a is None:
            if B is not None and len(set(B)) == 1:
                (a,) = set(B)
            else:
                raise ValueError(f"{prop.value} needs a single letter")
        if prop is Prop.P5:
            return p5(A, a, x, z, y, end=end)
        return p6(A, a, x, y, z)
    if B is None:
        raise ValueError(f"{prop.value} needs a letter set B")
    if prop is Prop.P1:
        return p1(A, B, x)
    if prop is Prop.P2:
        return p2(A, B, x, y, z)
    if prop is Prop.P3:
        return p3(A, B, x, y, z)
    if prop is Prop.P4:
        return p4(A, B, x, y, z)
    if prop is Prop.P7:
        return p7(A, B, x, y, z)
    return p8(A, B, x)


# -- regular languages ------------------------------------------------------------

def run_alphabet(m: Nfa, states: Optional[Iterable[str]] = None, avoid: Iterable[str] = ()):
    """Symbols naming the states of ``m`` (fresh unless given)."""
    if states is None:
        states = m.alphabet.fresh(m.num_states, avoid=avoid)
    states = list(states)
    if len(states) != m.num_states:
        raise ValueError(f"need {m.num_states} state symbols, got {len(states)}")
    clash = set(states) & set(m.alphabet)
    if clash:
        raise ValueError(f"state symbols {sorted(clash)} collide with the input alphabet")
    return states


def run_formula(m: Nfa, x="x", y="y", z="z", states=None, universe: Optional[Alphabet] = None):
    """psi(x, y): y is an accepting run of m on x.  Returns (psi1, psi2, universe)."""
    m = au.compact(m)
    A = list(m.alphabet)
    Q = run_alphabet(m, states, avoid=universe.symbols if universe is not None else ())
    U = universe if universe is not None else m.alphabet.union(Q)
    missing = [s for s in A + Q if s not in U]
    if missing:
        raise ValueError(f"universe {U} lacks symbols {missing}")
    name = {i: Q[i] for i in range(m.num_states)}
    initial = [name[q] for q in sorted(m.initial)]
    final = [name[q] for q in sorted(m.final)]

    parts = []
    if len(U) != len(A) + len(Q):
        parts.append(p1(U, A + Q, y))  # foreign letters would break alternation
    parts += [
        p7(U, A, y, x, z),
        p7(U, Q, y, x, z),
        disj(*(p5(U, q, y, z, x) for q in initial)),
        disj(*(p5(U, q, y, z, x, end=True) for q in final)),
        p3(U, A, x, y, z),
    ]
    psi1 = conj(*parts)

    zt = Var(z)
    premise = conj(subeq(Var(x), zt), subeq(zt, Var(y)), p8(U, Q, zt))
    skip = [subeq(_c(q + a + a2 + q2), zt) for q in Q for q2 in Q for a in A for a2 in A]
    steps = [subeq(_c(name[p] + a + name[q]), zt)
             for p, a, q in m.transitions if a is not EPS]
    psi2 = Forall(z, Implies(premise, disj(*skip, *steps)))
    return psi1, psi2, U


def regular_to_formula(m: Nfa, x="x", y="y", z="z", states=None,
                       universe: Optional[Alphabet] = None) -> Tuple[Formula, Alphabet]:
    """phi_L(x) = E y (psi1 & psi2) over A' = A u Q, true exactly on L(m).

    ``universe`` lets the caller interpret the formula over a larger
    alphabet; a conjunct then keeps runs inside A u Q.
    """
    m = au.compact(m)
    if not m.initial or not m.final:
        return FALSE, universe if universe is not None else m.alphabet
    psi1, psi2, U = run_formula(m, x, y, z, states, universe)
    return Exists(y, conj(psi1, psi2)), U
