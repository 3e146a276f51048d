"""Replace word constants by variables pinned down with pure subword formulas.

Letters of the alphabet become variables x1..xn, the empty word becomes z,
short powers x1_2, x1_3, x1_4, and any other word a_i a_j ... becomes
y_i_j_....  The defining conjuncts only fix the valuation up to renaming of
letters and up to mirroring all words at once.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional

from ..errors import FragmentError
from ..formulas.ast import (Const, Exists, Forall, Formula, Implies, MemberAtom, Not, RelAtom, Var,
                            children, conj, constants, disj, exists, free_vars, rebuild, rename_bound, subeq,
                            variables)
from ..words import Alphabet, canonical_sorted, mirror, subwords

DEFAULT_MAX_LEN = 4


def _v(name: str) -> Var:
    return Var(name)


def _nsub(a, b) -> Formula:
    return Not(subeq(a, b))


def _same(a, b) -> Formula:
    return conj(subeq(a, b), subeq(b, a))


class Namer:
    """Variable names for the constant words over a fixed alphabet."""

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def idx(self, a: str) -> int:
        return self.alphabet.index(a) + 1

    def letter(self, i: int) -> str:
        return f"x{i}"

    def power(self, i: int, k: int) -> str:
        return self.letter(i) if k == 1 else f"x{i}_{k}"

    def __call__(self, w: str) -> str:
        if not w:
            return "z"
        if len(set(w)) == 1 and len(w) <= 4:
            return self.power(self.idx(w[0]), len(w))
        return "y_" + "_".join(str(self.idx(c)) for c in w)


@dataclass
class Purification:
    formula: Formula
    parts: Dict[str, Formula]
    names: Dict[str, str]  # constant word -> variable
    bound: List[str]  # the existential block Z, in order
    alphabet: Alphabet
    payload: Formula = field(repr=False, default=None)


def _letter_parts(n: int, nm: Namer) -> Dict[str, Formula]:
    z, y = _v("z"), _v("y")
    x = [None] + [_v(nm.letter(i)) for i in range(1, n + 1)]
    P = lambda i, k: _v(nm.power(i, k))
    parts = {"psi1": Forall("y", subeq(z, y))}
    parts["psi2"] = conj(*(_nsub(x[i], x[j]) for i in range(1, n + 1) for j in range(1, n + 1) if i != j))
    parts["psi3"] = conj(*(Forall("y", Implies(subeq(y, x[i]), disj(subeq(x[i], y), subeq(y, z))))
                           for i in range(1, n + 1)))
    for label, k in (("psi4", 2), ("psi5", 3), ("psi6", 4)):
        parts[label] = conj(*(
            conj(subeq(P(i, k - 1), P(i, k)), _nsub(P(i, k), P(i, k - 1)),
                 Forall("y", Implies(subeq(y, P(i, k)), disj(subeq(y, P(i, k - 1)), subeq(P(i, k), y)))))
            for i in range(1, n + 1)))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    Y = lambda i, j: _v(f"y_{i}_{j}")
    parts["psi8"] = conj(*(Forall("y", Implies(subeq(y, Y(i, j)),
                                               disj(subeq(y, z), subeq(x[i], y), subeq(x[j], y))))
                           for i, j in pairs))
    parts["psi9"] = conj(*(conj(subeq(x[i], Y(i, j)), subeq(x[j], Y(i, j)),
                                _nsub(P(i, 2), Y(i, j)), _nsub(P(j, 2), Y(i, j)))
                           for i, j in pairs))
    parts["psi10"] = conj(*(_nsub(Y(i, j), Y(j, i)) for i, j in pairs))
    parts["psi11"] = conj(*(xi(i, j, k, nm) for i, j in pairs
                            for k in range(1, n + 1) if k not in (i, j)))
    return parts


def xi(i: int, j: int, k: int, nm: Namer) -> Formula:
    """y_{i,k} and y_{j,k} have the same orientation (witness t = x_i x_j x_i x_k or its mirror)."""
    t, y, z = _v("t"), _v("y"), _v("z")
    x = lambda m: _v(nm.letter(m))
    Y = lambda a, b: _v(f"y_{a}_{b}")
    only = Forall("y", Implies(subeq(y, t), disj(subeq(y, z), subeq(x(i), y), subeq(x(j), y),
                                                  subeq(x(k), y))))
    counts = conj(subeq(_v(nm.power(i, 2)), t), _nsub(_v(nm.power(i, 3)), t),
                  subeq(x(j), t), _nsub(_v(nm.power(j, 2)), t),
                  subeq(x(k), t), _nsub(_v(nm.power(k, 2)), t))
    order = conj(subeq(Y(i, j), t), subeq(Y(j, i), t), subeq(Y(i, k), t), _nsub(Y(k, i), t),
                 subeq(Y(j, k), t), _nsub(Y(k, j), t))
    return Exists("t", conj(only, counts, order))


def definer(w: str, known: Iterable[str], nm: Namer) -> Formula:
    """Pin the variable of w (|w| >= 3) given variables for the shorter words ``known``.

    ``known`` must contain every proper subword of w. Equal-length words
    with the same subwords of length |w|-1 coincide, so this pins w up to
    the global mirror.
    """
    V, y = _v(nm(w)), _v("y")
    shorter = [u for u in known if len(u) < len(w)]
    subs = [u for u in shorter if u in subwords(w)]
    facts = [subeq(_v(nm(u)), V) if u in subwords(w) else _nsub(_v(nm(u)), V)
             for u in shorter if u]
    closed = Forall("y", Implies(subeq(y, V),
                                 disj(subeq(V, y), *(subeq(y, _v("z")) if not u else _same(y, _v(nm(u)))
                                                     for u in subs))))
    distinct = [_nsub(V, _v(nm(u))) for u in shorter]
    return conj(*facts, closed, *distinct)


def closure_of(words: Iterable[str]) -> List[str]:
    out = set()
    for w in words:
        out |= subwords(w)
    return list(out)


def _replace_constants(f: Formula, names: Dict[str, str]) -> Formula:
    if isinstance(f, MemberAtom):
        raise FragmentError("membership atoms cannot be purified")
    if isinstance(f, RelAtom):
        sub = lambda t: Var(names[t.word]) if isinstance(t, Const) else t
        return RelAtom(sub(f.left), f.rel, sub(f.right))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_replace_constants(k, names) for k in kids])


def purify_parts(words: Iterable[str], payload: Formula, alphabet: Alphabet,
                 max_len: int = DEFAULT_MAX_LEN) -> Purification:
    nm = Namer(alphabet)
    words = set(words)
    missing = constants(payload) - words
    if missing:
        raise ValueError(f"payload constants {sorted(missing)} are not among the given words")
    for w in words:
        alphabet.check(w)
        if len(w) > max_len:
            raise ValueError(f"constant {w!r} is longer than the supported length {max_len}")
    closed = canonical_sorted(closure_of(words | {""}), alphabet)
    n = len(alphabet)
    parts = _letter_parts(n, nm)
    labels = {}
    for w in closed:
        if len(w) < 3 or nm(w).startswith("x"):
            continue
        label = f"psi{len(w) + 9}"
        labels.setdefault(label, []).append(definer(w, closed, nm))
    for label in sorted(labels, key=lambda s: int(s[3:])):
        parts[label] = conj(*labels[label])

    names = {w: nm(w) for w in closed}
    reserved = set(variables(conj(*parts.values()))) | set(names.values()) | {"t", "y", "z"}
    clash = free_vars(payload) & reserved
    if clash:
        raise ValueError(f"free payload variables {sorted(clash)} clash with generated names")
    taken = set(reserved) | variables(payload)
    for v in sorted(variables(payload) & reserved):
        new = _fresh_name(v, taken)
        taken.add(new)
        payload = rename_bound(payload, v, new)
    body_payload = _replace_constants(payload, names)

    matrix = conj(*parts.values(), body_payload)
    inner = free_vars(conj(*parts.values())) | (free_vars(body_payload) - free_vars(payload))
    bound = _order_bound(inner, n, closed, nm)
    return Purification(exists(bound, matrix), parts, names, bound, alphabet, body_payload)


def _fresh_name(base: str, taken) -> str:
    i = 1
    while f"{base}_{i}'" in taken:
        i += 1
    return f"{base}_{i}'"


def _order_bound(names, n, closed, nm) -> List[str]:
    order = ["z"] + [nm.letter(i) for i in range(1, n + 1)]
    for k in (2, 3, 4):
        order += [nm.power(i, k) for i in range(1, n + 1)]
    order += [f"y_{i}_{j}" for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    order += [nm(w) for w in closed]
    seen, out = set(), []
    for v in order:
        if v in names and v not in seen:
            seen.add(v)
            out.append(v)
    return out


def purify(words: Iterable[str], payload: Formula, alphabet: Alphabet,
           max_len: int = DEFAULT_MAX_LEN) -> Formula:
    """A pure sentence E Z (psi_1 & ... & payload') equisatisfiable with the payload."""
    return purify_parts(words, payload, alphabet, max_len).formula


def intended_valuation(alphabet: Alphabet, words: Iterable[str] = (), mirrored: bool = False,
                       letters: Optional[Iterable[str]] = None) -> Dict[str, str]:
    """The valuation the defining conjuncts are designed for.

    Covers z, the letters, their squares to fourth powers, all two-letter
    words of distinct letters and the given longer words.  ``letters``
    renames the alphabet (any injective choice also satisfies the conjuncts).
    """
    nm = Namer(alphabet)
    image = dict(zip(alphabet, letters)) if letters is not None else {a: a for a in alphabet}
    val = {"z": ""}
    for a in alphabet:
        i = nm.idx(a)
        for k in (1, 2, 3, 4):
            val[nm.power(i, k)] = image[a] * k
        for b in alphabet:
            if b != a:
                val[nm(a + b)] = image[a] + image[b]
    for w in closure_of(words):
        val[nm(w)] = "".join(image[c] for c in w)
    if mirrored:
        val = {k: mirror(v) for k, v in val.items()}
    return val
