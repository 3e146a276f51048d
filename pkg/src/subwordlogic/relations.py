"""Rational relations over A* x A* as asynchronous two-tape transducers.

Tape convention: the *input* label of a transition belongs to the left
component of a pair (the relation's domain), the *output* label to the right
component.  ``preimage`` therefore synchronizes a language with the output
tape and keeps the input tape; ``image`` does the converse.
"""
from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Optional

from .automata import nfa as au
from .automata.nfa import EPS, Nfa
from .errors import AlphabetError
from .words import Alphabet, Word

DOMAIN_IS_INPUT = "input=domain"


class Transducer:
    __slots__ = ("alphabet", "num_states", "initial", "final", "delta", "convention")

    def __init__(self, alphabet: Alphabet, num_states: int, initial, final, delta, convention=DOMAIN_IS_INPUT):
        self.alphabet = alphabet
        self.num_states = num_states
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        # delta[p] is a frozenset of (in_label, out_label, q)
        self.delta = tuple(frozenset(d) for d in delta)
        self.convention = convention

    @classmethod
    def build(cls, alphabet: Alphabet, num_states: int, initial, final, transitions: Iterable) -> "Transducer":
        delta = [set() for _ in range(num_states)]
        for p, a, b, q in transitions:
            if not (0 <= p < num_states and 0 <= q < num_states):
                raise ValueError(f"transition ({p}, {a}, {b}, {q}) leaves the state set")
            for lab in (a, b):
                if lab is not EPS and lab not in alphabet:
                    raise AlphabetError(f"label {lab!r} not in alphabet {alphabet}")
            delta[p].add((a, b, q))
        return cls(alphabet, num_states, initial, final, delta)

    @property
    def transitions(self) -> list:
        order = self.alphabet.index
        key = lambda lab: -1 if lab is EPS else order(lab)
        out = [(p, a, b, q) for p, d in enumerate(self.delta) for a, b, q in d]
        out.sort(key=lambda t: (t[0], key(t[1]), key(t[2]), t[3]))
        return out

    def __repr__(self):
        return f"Transducer(alphabet={str(self.alphabet)!r}, states={self.num_states}, transitions={len(self.transitions)})"

    def accepts(self, u: Word, v: Word) -> bool:
        return rel_member(self, u, v)


def _check_convention(t: Transducer):
    if t.convention != DOMAIN_IS_INPUT:
        raise ValueError(f"unsupported tape convention {t.convention!r}")


def _same(t1, t2):
    if t1.alphabet != t2.alphabet:
        raise AlphabetError(f"alphabet mismatch: {t1.alphabet} vs {t2.alphabet}")
    _check_convention(t1)
    _check_convention(t2)


# -- relation algebra -----------------------------------------------------------

class Build(enum.Enum):
    UNION = "union"
    CONCAT = "concat"
    STAR = "star"
    FROM_PAIRS = "from_pairs"
    SWAP = "swap"


def _shift(t: Transducer, off: int):
    return [{(a, b, q + off) for a, b, q in d} for d in t.delta]


def rel_union(t1: Transducer, t2: Transducer) -> Transducer:
    _same(t1, t2)
    off = t1.num_states
    return _eps_free(Transducer(t1.alphabet, off + t2.num_states,
                                set(t1.initial) | {q + off for q in t2.initial},
                                set(t1.final) | {q + off for q in t2.final},
                                _shift(t1, 0) + _shift(t2, off)))


def rel_concat(t1: Transducer, t2: Transducer) -> Transducer:
    _same(t1, t2)
    off = t1.num_states
    delta = _shift(t1, 0) + _shift(t2, off)
    for f in t1.final:
        for q in t2.initial:
            delta[f].add((EPS, EPS, q + off))
    return _eps_free(Transducer(t1.alphabet, off + t2.num_states, t1.initial,
                                {q + off for q in t2.final}, delta))


def rel_star(t: Transducer) -> Transducer:
    _check_convention(t)
    n = t.num_states
    delta = _shift(t, 0) + [{(EPS, EPS, q) for q in t.initial}]
    for f in t.final:
        delta[f].add((EPS, EPS, n))
    return _eps_free(Transducer(t.alphabet, n + 1, {n}, {n}, delta))


def from_pairs(pairs: Iterable, alphabet: Alphabet) -> Transducer:
    """Finite relation: each (u, v) reads u on the input tape, then v on the output tape."""
    trans = []
    final = []
    n = 1
    for u, v in pairs:
        alphabet.check(u, v)
        cur = 0
        steps = [(c, EPS) for c in u] + [(EPS, c) for c in v]
        if not steps:
            final.append(0)
            continue
        for a, b in steps:
            trans.append((cur, a, b, n))
            cur = n
            n += 1
        final.append(cur)
    return _eps_free(Transducer.build(alphabet, n, {0}, final, trans))


def swap(t: Transducer) -> Transducer:
    _check_convention(t)
    return Transducer(t.alphabet, t.num_states, t.initial, t.final,
                      [{(b, a, q) for a, b, q in d} for d in t.delta])


def rel_build(op, *args, alphabet: Optional[Alphabet] = None) -> Transducer:
    op = Build(op) if not isinstance(op, Build) else op
    if op is Build.UNION:
        return rel_union(*args)
    if op is Build.CONCAT:
        out = args[0]
        for t in args[1:]:
            out = rel_concat(out, t)
        return out
    if op is Build.STAR:
        (t,) = args
        return rel_star(t)
    if op is Build.SWAP:
        (t,) = args
        return swap(t)
    (pairs,) = args
    if alphabet is None:
        raise ValueError("FROM_PAIRS needs an alphabet")
    return from_pairs(pairs, alphabet)


def _letters(alphabet: Alphabet, pairs: Iterable) -> Transducer:
    """One-step relation: a union of single letter pairs (either side may be EPS)."""
    pairs = list(pairs)
    return Transducer.build(alphabet, 2, {0}, {1}, [(0, a, b, 1) for a, b in pairs])


def _eps_free(t: Transducer) -> Transducer:
    """Remove (EPS, EPS) moves, trim, and renumber canonically."""
    closures = []
    for p in range(t.num_states):
        seen = {p}
        todo = [p]
        while todo:
            s = todo.pop()
            for a, b, q in t.delta[s]:
                if a is EPS and b is EPS and q not in seen:
                    seen.add(q)
                    todo.append(q)
        closures.append(seen)
    delta = []
    final = set()
    for p in range(t.num_states):
        d = set()
        for s in closures[p]:
            if s in t.final:
                final.add(p)
            d.update((a, b, q) for a, b, q in t.delta[s] if not (a is EPS and b is EPS))
        delta.append(d)
    return _trim(Transducer(t.alphabet, t.num_states, t.initial, final, delta, t.convention))


def _trim(t: Transducer) -> Transducer:
    fwd = set(t.initial)
    todo = list(fwd)
    while todo:
        p = todo.pop()
        for _, _, q in t.delta[p]:
            if q not in fwd:
                fwd.add(q)
                todo.append(q)
    rev = [[] for _ in range(t.num_states)]
    for p, d in enumerate(t.delta):
        for _, _, q in d:
            rev[q].append(p)
    bwd = set(t.final)
    todo = list(bwd)
    while todo:
        q = todo.pop()
        for p in rev[q]:
            if p not in bwd:
                bwd.add(p)
                todo.append(p)
    keep = fwd & bwd
    if not keep:
        return Transducer(t.alphabet, 1, {0}, (), [set()], t.convention)
    order = t.alphabet.index
    key = lambda lab: -1 if lab is EPS else order(lab)
    mapping = {}
    queue = deque()
    for p in sorted(t.initial):
        if p in keep:
            mapping[p] = len(mapping)
            queue.append(p)
    while queue:
        p = queue.popleft()
        for a, b, q in sorted(t.delta[p], key=lambda x: (key(x[0]), key(x[1]), x[2])):
            if q in keep and q not in mapping:
                mapping[q] = len(mapping)
                queue.append(q)
    delta = [None] * len(mapping)
    for p, i in mapping.items():
        delta[i] = {(a, b, mapping[q]) for a, b, q in t.delta[p] if q in mapping}
    return Transducer(t.alphabet, len(mapping), {mapping[p] for p in t.initial if p in mapping},
                      {mapping[p] for p in t.final if p in mapping}, delta, t.convention)


# -- the builtin relations --------------------------------------------------------

class Kind(enum.Enum):
    SUBWORD = "subword"
    STRICT = "strict"
    STRICT_INV = "strict_inv"
    EQUALITY = "equality"
    INCOMPARABLE = "incomparable"
    T1 = "t1"
    T2 = "t2"


def subword_relation(alphabet: Alphabet) -> Transducer:
    # (U_a [eps/a] u [a/a])*
    step = _letters(alphabet, [(EPS, a) for a in alphabet] + [(a, a) for a in alphabet])
    return rel_star(step)


def strict_relation(alphabet: Alphabet) -> Transducer:
    sub = subword_relation(alphabet)
    insert = _letters(alphabet, [(EPS, a) for a in alphabet])
    return rel_concat(rel_concat(sub, insert), sub)


def equality_relation(alphabet: Alphabet) -> Transducer:
    return rel_star(_letters(alphabet, [(a, a) for a in alphabet]))


def t1_relation(alphabet: Alphabet) -> Transducer:
    """{(u, v) : u not a subword of v and |u| <= |v|}.

    Pairs factor as u = a1..al a u', v = v1 a1 .. vl al w b v' where a_i is
    absent from v_i, a is absent from w, a != b and |u'| = |v'|.  The block w
    is what lets v be strictly longer than the unmatched part of u.
    """
    syms = list(alphabet)
    if len(syms) < 2:
        return Transducer(alphabet, 1, {0}, (), [set()])

    def avoiding(a):
        return rel_star(_letters(alphabet, [(EPS, b) for b in syms if b != a]))

    blocks = mismatch = None
    for a in syms:
        block = rel_concat(avoiding(a), _letters(alphabet, [(a, a)]))
        miss = rel_concat(avoiding(a), _letters(alphabet, [(a, b) for b in syms if b != a]))
        blocks = block if blocks is None else rel_union(blocks, block)
        mismatch = miss if mismatch is None else rel_union(mismatch, miss)
    tail = rel_star(_letters(alphabet, [(a, b) for a in syms for b in syms]))
    return rel_concat(rel_concat(rel_star(blocks), mismatch), tail)


def builtin_relation(kind, alphabet: Alphabet) -> Transducer:
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    if kind is Kind.SUBWORD:
        return subword_relation(alphabet)
    if kind is Kind.STRICT:
        return strict_relation(alphabet)
    if kind is Kind.STRICT_INV:
        return swap(strict_relation(alphabet))
    if kind is Kind.EQUALITY:
        return equality_relation(alphabet)
    if kind is Kind.T1:
        return t1_relation(alphabet)
    if kind is Kind.T2:
        return swap(t1_relation(alphabet))
    return rel_union(t1_relation(alphabet), swap(t1_relation(alphabet)))


# -- membership, preimage, image ------------------------------------------------------

def rel_member(t: Transducer, u: Word, v: Word) -> bool:
    """Reachability in the (position in u, position in v, state) graph."""
    _check_convention(t)
    t.alphabet.check(u, v)
    start = [(0, 0, q) for q in t.initial]
    seen = set(start)
    todo = list(start)
    target = (len(u), len(v))
    while todo:
        i, j, p = todo.pop()
        if (i, j) == target and p in t.final:
            return True
        for a, b, q in t.delta[p]:
            ni, nj = i, j
            if a is not EPS:
                if i >= len(u) or u[i] != a:
                    continue
                ni = i + 1
            if b is not EPS:
                if j >= len(v) or v[j] != b:
                    continue
                nj = j + 1
            node = (ni, nj, q)
            if node not in seen:
                seen.add(node)
                todo.append(node)
    return False


def _apply(t: Transducer, m: Nfa, keep_input: bool) -> Nfa:
    _check_convention(t)
    if t.alphabet != m.alphabet:
        raise AlphabetError(f"alphabet mismatch: {t.alphabet} vs {m.alphabet}")
    m = au.remove_epsilon(m)
    ids = {}
    pairs = []
    for p in sorted(t.initial):
        for q in sorted(m.initial):
            ids[(p, q)] = len(pairs)
            pairs.append((p, q))
    n_init = len(pairs)
    trans = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        for a, b, p2 in t.delta[p]:
            kept, synced = (a, b) if keep_input else (b, a)
            if synced is EPS:
                targets = (q,)
            else:
                targets = m.delta[q].get(synced, ())
            for q2 in targets:
                j = ids.get((p2, q2))
                if j is None:
                    j = ids[(p2, q2)] = len(pairs)
                    pairs.append((p2, q2))
                trans.append((i, kept, j))
        i += 1
    final = [j for j, (p, q) in enumerate(pairs) if p in t.final and q in m.final]
    result = Nfa.build(t.alphabet, len(pairs), range(n_init), final, trans)
    return au.compact(result)


def preimage(t: Transducer, m: Nfa) -> Nfa:
    """{u : (u, v) in t for some v accepted by m}."""
    return _apply(t, m, keep_input=True)


def image(t: Transducer, m: Nfa) -> Nfa:
    """{v : (u, v) in t for some u accepted by m}."""
    return _apply(t, m, keep_input=False)


def relabel(alphabet: Alphabet, pairs: Iterable) -> Transducer:
    """(U [a/b] over the given letter pairs)* -- a letter-to-letter substitution relation."""
    return rel_star(_letters(alphabet, list(pairs)))
