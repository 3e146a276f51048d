"""Reductions from SAT, PCP and TQBF into the subword logic."""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from ..automata import nfa as au
from ..automata import regex as rx
from ..errors import ParseError
from ..formulas.ast import (Bool, Const, Exists, Forall, Formula, Implies, MemberAtom, Not, Var, conj, disj,
                            exists, subeq)
from ..formulas.classify import Dialect
from ..relations import image, relabel
from ..words import Alphabet
from .boolean import BAnd, BConst, BNot, BOr, BVar, Qbf, alternate, as_expr, bool_vars
from .properties import p3, p4, regular_to_formula


def _bool_to_formula(e, atom) -> Formula:
    if isinstance(e, BVar):
        return atom(e.index)
    if isinstance(e, BConst):
        return Bool(e.value)
    if isinstance(e, BNot):
        return Not(_bool_to_formula(e.arg, atom))
    if isinstance(e, BAnd):
        return conj(*(_bool_to_formula(a, atom) for a in e.args))
    if isinstance(e, BOr):
        return disj(*(_bool_to_formula(a, atom) for a in e.args))
    raise TypeError(f"not a Boolean expression: {e!r}")


# -- SAT -> Sigma_1 -----------------------------------------------------------------

def sat_to_sigma1(cnf, num_vars: Optional[int] = None, z: str = "z", prefix: str = "x") -> Formula:
    """E z, x1..xn. phi[p_i := x_i <= z].

    Every x_i up to the largest index (or ``num_vars``) is quantified, even
    when it does not occur.
    """
    e = as_expr(cnf)
    n = max(bool_vars(e) | {num_vars or 0})
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    if z in names:
        raise ValueError(f"variable name {z!r} clashes with the x-variables")
    body = _bool_to_formula(e, lambda i: subeq(Var(f"{prefix}{i}"), Var(z)))
    return exists([z] + names, body)


# -- PCP -----------------------------------------------------------------------------

@dataclass(frozen=True)
class PcpInstance:
    gamma: Alphabet
    pairs: Tuple[Tuple[str, str], ...]
    prefix: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((u, v) for u, v in self.pairs))
        if not self.pairs:
            raise ValueError("a PCP instance needs at least one pair")
        for u, v in self.pairs:
            self.gamma.check(u, v)
        if self.prefix is not None:
            self.gamma.check(self.prefix)

    @property
    def indices(self) -> List[str]:
        """Index symbols for N = {1..n}: digits first, fresh symbols after 9."""
        digits = [d for d in "123456789" if d not in self.gamma]
        n = len(self.pairs)
        out = digits[:n]
        if len(out) < n:
            out += self.gamma.fresh(n - len(out), avoid=out)
        return out

    def solves(self, seq: Sequence[int]) -> bool:
        """Check a 1-based index sequence (with the prefix, if any)."""
        if not seq:
            return False
        top = (self.prefix or "") + "".join(self.pairs[i - 1][0] for i in seq)
        return top == "".join(self.pairs[i - 1][1] for i in seq)


def pcp_language(inst: PcpInstance, side: int) -> rx.Regex:
    """(1 w_1 + ... + n w_n)^+ with w = u (side 0) or v (side 1)."""
    N = inst.indices
    return rx.plus(rx.union(*(rx.concat(rx.Sym(N[i]), rx.word(p[side]))
                              for i, p in enumerate(inst.pairs))))


def pcp_to_sigma2(inst: PcpInstance, dialect=Dialect.EXTENDED) -> Tuple[Formula, Alphabet]:
    """The Sigma_2 sentence that holds iff the instance has a solution.

    The extended form keeps the two membership atoms; the basic form
    replaces each by the run formula of a minimal automaton, which adds
    state letters to the alphabet.
    """
    dialect = Dialect(dialect)
    if dialect is Dialect.PURE:
        raise ValueError("use purify() on the basic encoding for a pure sentence")
    N = inst.indices
    G = list(inst.gamma)
    A = inst.gamma.union(N)
    l1, l2 = pcp_language(inst, 0), pcp_language(inst, 1)
    if dialect is Dialect.EXTENDED:
        body = conj(MemberAtom(Var("x"), l1), MemberAtom(Var("x'"), l2),
                    p4(A, N, "x", "x'", "z"), p4(A, G, "x", "x'", "z"))
        return exists(["x", "x'"], body), A
    m1 = au.compact(au.minimize(au.regex_to_nfa(l1, A)))
    m2 = au.compact(au.minimize(au.regex_to_nfa(l2, A)))
    q1 = A.fresh(m1.num_states)
    q2 = A.fresh(m2.num_states, avoid=q1)
    U = A.union(q1 + q2)
    phi1, _ = regular_to_formula(m1, "x", "x'", "z", states=q1, universe=U)
    phi2, _ = regular_to_formula(m2, "x'", "x", "z", states=q2, universe=U)
    body = conj(phi1, phi2, p4(U, N, "x", "x'", "z"), p4(U, G, "x", "x'", "z"))
    return exists(["x", "x'"], body), U


def hat_letters(inst: PcpInstance) -> Dict[str, str]:
    """A renamed copy of Gamma, preferring the upper-case letter."""
    taken = set(inst.gamma) | set(inst.indices)
    out = {}
    for a in inst.gamma:
        up = a.upper()
        if up != a and up not in taken:
            out[a] = up
            taken.add(up)
    rest = [a for a in inst.gamma if a not in out]
    for a, h in zip(rest, inst.gamma.fresh(len(rest), avoid=taken)):
        out[a] = h
    return out


def variant_alphabet(inst: PcpInstance) -> Alphabet:
    hat = hat_letters(inst)
    return inst.gamma.union([hat[a] for a in inst.gamma]).union(inst.indices)


def rho(inst: PcpInstance):
    """Letter substitution a -> a | hat(a) on Gamma, identity on N."""
    hat = hat_letters(inst)
    A = variant_alphabet(inst)
    pairs = [(a, a) for a in inst.gamma] + [(a, hat[a]) for a in inst.gamma]
    pairs += [(d, d) for d in inst.indices]
    return relabel(A, pairs)


def variant_pcp_to_sigma2(inst: PcpInstance) -> Tuple[Formula, Alphabet]:
    """Fixed-alphabet variant: x carries the hatted prefix, x' may hat any Gamma letter."""
    if inst.prefix is None:
        raise ValueError("the variant encoding needs a prefix word w")
    hat = hat_letters(inst)
    A = variant_alphabet(inst)
    N = inst.indices
    G = list(inst.gamma)
    H = [hat[a] for a in G]
    lx = rx.concat(rx.Star(rx.any_of(H)), pcp_language(inst, 0))
    lv = au.regex_to_nfa(pcp_language(inst, 1), A)
    lx2 = au.compact(au.minimize(image(rho(inst), lv)))
    w_hat = "".join(hat[a] for a in inst.prefix)
    body = conj(MemberAtom(Var("x"), lx), MemberAtom(Var("x'"), lx2),
                p3(A, H, Const(w_hat), "x", "z"),
                p4(A, N, "x", "x'", "z"), p4(A, G + H, "x", "x'", "z"))
    return exists(["x", "x'"], body), A


_PCP_TOKEN = re.compile(r'""|[^\s"]+')


def parse_pcp(text: str, gamma: Optional[Alphabet] = None) -> PcpInstance:
    """Lines ``u v`` (``""`` for the empty word), ``prefix: w``, ``alphabet: ...``, ``#`` comments."""
    pairs, prefix, declared = [], None, None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if sep and key.strip() in ("prefix", "alphabet"):
            value = rest.strip()
            value = "" if value == '""' else value
            if key.strip() == "prefix":
                prefix = value
            else:
                declared = value
            continue
        tokens = _PCP_TOKEN.findall(line)
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two words, got {line!r}")
        pairs.append(tuple("" if t == '""' else t for t in tokens))
    if gamma is None:
        if declared is not None:
            gamma = Alphabet.of(declared)
        else:
            seen = "".join(u + v for u, v in pairs) + (prefix or "")
            if not seen:
                raise ParseError("cannot infer an alphabet from empty words")
            gamma = Alphabet.of(dict.fromkeys(seen))
    if not pairs:
        raise ParseError("no pairs given")
    return PcpInstance(gamma, tuple(pairs), prefix)


# -- TQBF -> FO^2 --------------------------------------------------------------------

def tqbf_letters(count: int) -> List[Tuple[str, str]]:
    """(T_i, F_i) letter pairs: upper and lower case of successive letters."""
    if count > 26:
        raise ValueError(f"at most 26 Boolean variables are supported, got {count}")
    return [(chr(ord("A") + i), chr(ord("a") + i)) for i in range(count)]


def _domain(i: int, letters, w: str) -> Formula:
    """The valuation encoded by w is defined on exactly p_1..p_i."""
    t = Var(w)
    parts = []
    for j, (T, F) in enumerate(letters, 1):
        has_t, has_f = subeq(Const(T), t), subeq(Const(F), t)
        if j <= i:
            parts += [disj(has_t, has_f), Not(conj(has_t, has_f))]
        else:
            parts += [Not(has_t), Not(has_f)]
    return conj(*parts)


def tqbf_to_fo2(q: Qbf) -> Tuple[Formula, Alphabet]:
    """FO^2 sentence over 4n letters that is true iff the QBF is."""
    q = alternate(q)
    order = [v for _, v in q.prefix]
    letters = tqbf_letters(len(order))
    position = {v: i for i, v in enumerate(order)}
    matrix = _bool_to_formula(q.matrix, lambda v: subeq(Const(letters[position[v]][0]), Var("y")))
    body = matrix
    for i in range(len(order), 0, -1):
        if i % 2 == 0:
            body = Forall("y", Implies(conj(_domain(i, letters, "y"), subeq(Var("x"), Var("y"))), body))
        else:
            link = [subeq(Var("y"), Var("x"))] if i > 1 else []
            body = Exists("x", conj(_domain(i, letters, "x"), *link, body))
    alphabet = Alphabet.of([c for pair in letters for c in pair])
    return body, alphabet
