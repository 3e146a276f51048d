"""Nondeterministic finite automata with epsilon moves.

States are the integers ``0 .. num_states-1``.  Transition labels are
alphabet symbols or :data:`EPS` (``None``).  Automata are treated as
immutable values; every operation returns a new automaton.
"""
from __future__ import annotations

import enum
from collections import deque
from typing import Iterable, Iterator, Optional

from ..errors import AlphabetError
from ..words import Alphabet, Word, canonical_sorted
from . import regex as rx

EPS = None


class Nfa:
    __slots__ = ("alphabet", "num_states", "initial", "final", "delta", "is_dfa", "_hash")

    def __init__(self, alphabet: Alphabet, num_states: int, initial, final, delta, is_dfa: bool = False):
        self.alphabet = alphabet
        self.num_states = num_states
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        # delta[p] maps a label to the frozenset of successor states
        self.delta = tuple(delta)
        self.is_dfa = is_dfa
        self._hash = None

    @classmethod
    def build(cls, alphabet: Alphabet, num_states: int, initial, final, transitions: Iterable, is_dfa=False) -> "Nfa":
        delta = [dict() for _ in range(num_states)]
        for p, a, q in transitions:
            if not (0 <= p < num_states and 0 <= q < num_states):
                raise ValueError(f"transition ({p}, {a}, {q}) leaves the state set")
            if a is not EPS and a not in alphabet:
                raise AlphabetError(f"label {a!r} not in alphabet {alphabet}")
            delta[p].setdefault(a, set()).add(q)
        delta = [{a: frozenset(qs) for a, qs in d.items()} for d in delta]
        for q in list(initial) + list(final):
            if not 0 <= q < num_states:
                raise ValueError(f"state {q} is not in the state set")
        return cls(alphabet, num_states, initial, final, delta, is_dfa)

    @property
    def transitions(self) -> list:
        out = []
        for p, d in enumerate(self.delta):
            for a, qs in d.items():
                for q in qs:
                    out.append((p, a, q))
        order = self.alphabet.index
        out.sort(key=lambda t: (t[0], -1 if t[1] is EPS else order(t[1]), t[2]))
        return out

    @property
    def has_epsilon(self) -> bool:
        return any(EPS in d for d in self.delta)

    def _key(self):
        return (self.alphabet, self.num_states, self.initial, self.final, tuple(self.transitions))

    def __eq__(self, other):
        return isinstance(other, Nfa) and self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        return (f"Nfa(alphabet={str(self.alphabet)!r}, states={self.num_states}, "
                f"initial={sorted(self.initial)}, final={sorted(self.final)}, "
                f"transitions={len(self.transitions)})")

    def accepts(self, w: Word) -> bool:
        return accepts(self, w)


def _same_alphabet(m1: Nfa, m2: Nfa):
    if m1.alphabet != m2.alphabet:
        raise AlphabetError(f"alphabet mismatch: {m1.alphabet} vs {m2.alphabet}")


# -- basic languages ----------------------------------------------------------

def empty(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, {0}, (), [{}])


def universal(alphabet: Alphabet) -> Nfa:
    return Nfa(alphabet, 1, {0}, {0}, [{a: frozenset({0}) for a in alphabet}], is_dfa=True)


def from_word(w: Word, alphabet: Alphabet) -> Nfa:
    alphabet.check(w)
    return Nfa.build(alphabet, len(w) + 1, {0}, {len(w)}, [(i, c, i + 1) for i, c in enumerate(w)])


def from_words(words: Iterable[Word], alphabet: Alphabet) -> Nfa:
    result = empty(alphabet)
    for w in words:
        result = union(result, from_word(w, alphabet))
    return compact(result)


def length_between(alphabet: Alphabet, lo: int, hi: Optional[int] = None) -> Nfa:
    """Words with ``lo <= |w| <= hi`` (``hi=None`` for no upper bound)."""
    if hi is None:
        n = lo + 1
        trans = [(i, a, min(i + 1, lo)) for i in range(n) for a in alphabet]
        return Nfa.build(alphabet, n, {0}, {lo}, trans)
    if hi < lo:
        return empty(alphabet)
    n = hi + 1
    trans = [(i, a, i + 1) for i in range(hi) for a in alphabet]
    return Nfa.build(alphabet, n, {0}, range(lo, hi + 1), trans)


# -- regex front end ----------------------------------------------------------

def regex_to_nfa(r, alphabet: Alphabet) -> Nfa:
    """Thompson construction followed by epsilon removal and trimming."""
    if isinstance(r, str):
        r = rx.parse_regex(r, alphabet)
    rx.check_alphabet(r, alphabet)
    trans = []
    counter = [0]

    def new():
        counter[0] += 1
        return counter[0] - 1

    def build(node):
        s, t = new(), new()
        if isinstance(node, rx.EmptySet):
            pass
        elif isinstance(node, rx.Epsilon):
            trans.append((s, EPS, t))
        elif isinstance(node, rx.Sym):
            trans.append((s, node.symbol, t))
        elif isinstance(node, rx.Union):
            for p in node.parts:
                ps, pt = build(p)
                trans.append((s, EPS, ps))
                trans.append((pt, EPS, t))
        elif isinstance(node, rx.Concat):
            cur = s
            for p in node.parts:
                ps, pt = build(p)
                trans.append((cur, EPS, ps))
                cur = pt
            trans.append((cur, EPS, t))
        elif isinstance(node, rx.Star):
            ps, pt = build(node.inner)
            trans.append((s, EPS, t))
            trans.append((s, EPS, ps))
            trans.append((pt, EPS, ps))
            trans.append((pt, EPS, t))
        else:
            raise TypeError(node)
        return s, t

    s, t = build(r)
    return compact(Nfa.build(alphabet, counter[0], {s}, {t}, trans))


# -- structural helpers -------------------------------------------------------

def epsilon_closure(m: Nfa, states: Iterable[int]) -> frozenset:
    seen = set(states)
    todo = list(seen)
    while todo:
        p = todo.pop()
        for q in m.delta[p].get(EPS, ()):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return frozenset(seen)


def remove_epsilon(m: Nfa) -> Nfa:
    if not m.has_epsilon:
        return m
    closures = [epsilon_closure(m, [p]) for p in range(m.num_states)]
    delta = []
    final = set()
    for p in range(m.num_states):
        d = {}
        for q in closures[p]:
            if q in m.final:
                final.add(p)
            for a, qs in m.delta[q].items():
                if a is EPS:
                    continue
                d.setdefault(a, set()).update(qs)
        delta.append({a: frozenset(qs) for a, qs in d.items()})
    return Nfa(m.alphabet, m.num_states, m.initial, final, delta)


def _reachable(m: Nfa) -> set:
    seen = set(m.initial)
    todo = list(seen)
    while todo:
        p = todo.pop()
        for qs in m.delta[p].values():
            for q in qs:
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    return seen


def _coreachable(m: Nfa) -> set:
    rev = [[] for _ in range(m.num_states)]
    for p, d in enumerate(m.delta):
        for qs in d.values():
            for q in qs:
                rev[q].append(p)
    seen = set(m.final)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in rev[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def renumber(m: Nfa, keep: Optional[set] = None) -> Nfa:
    """Canonical BFS renumbering from the initial states (labels in alphabet order).

    States outside ``keep`` (default: all reachable) are dropped.
    """
    order = {a: i for i, a in enumerate(m.alphabet)}
    labels = sorted((a for d in m.delta for a in d), key=lambda a: -1 if a is EPS else order[a])
    labels = list(dict.fromkeys(labels))
    allowed = keep if keep is not None else None
    mapping = {}
    queue = deque()
    for p in sorted(m.initial):
        if allowed is None or p in allowed:
            mapping[p] = len(mapping)
            queue.append(p)
    while queue:
        p = queue.popleft()
        d = m.delta[p]
        for a in labels:
            for q in sorted(d.get(a, ())):
                if (allowed is None or q in allowed) and q not in mapping:
                    mapping[q] = len(mapping)
                    queue.append(q)
    if not mapping:
        return empty(m.alphabet)
    delta = [None] * len(mapping)
    for p, i in mapping.items():
        nd = {}
        for a, qs in m.delta[p].items():
            tgt = frozenset(mapping[q] for q in qs if q in mapping)
            if tgt:
                nd[a] = tgt
        delta[i] = nd
    return Nfa(m.alphabet, len(mapping), (mapping[p] for p in m.initial if p in mapping),
               (mapping[p] for p in m.final if p in mapping), delta, m.is_dfa and keep is None)


def trim(m: Nfa) -> Nfa:
    useful = _reachable(m) & _coreachable(m)
    if not useful:
        return empty(m.alphabet)
    return renumber(m, useful)


def compact(m: Nfa) -> Nfa:
    """Epsilon removal, trimming and canonical renumbering."""
    return trim(remove_epsilon(m))


# -- determinization and minimization ------------------------------------------

def determinize(m: Nfa) -> Nfa:
    """Subset construction; the result is complete (the empty subset is a sink)."""
    if m.is_dfa:
        return m
    m = remove_epsilon(m)
    symbols = m.alphabet.symbols
    start = frozenset(m.initial)
    ids = {start: 0}
    subsets = [start]
    delta = []
    i = 0
    while i < len(subsets):
        cur = subsets[i]
        d = {}
        for a in symbols:
            nxt = set()
            for p in cur:
                nxt.update(m.delta[p].get(a, ()))
            nxt = frozenset(nxt)
            j = ids.get(nxt)
            if j is None:
                j = ids[nxt] = len(subsets)
                subsets.append(nxt)
            d[a] = frozenset((j,))
        delta.append(d)
        i += 1
    final = [j for j, s in enumerate(subsets) if s & m.final]
    return Nfa(m.alphabet, len(subsets), {0}, final, delta, is_dfa=True)


def minimize(m: Nfa) -> Nfa:
    """Hopcroft partition refinement on the (determinized, complete) automaton."""
    d = determinize(m)
    n = d.num_states
    symbols = d.alphabet.symbols
    k = len(symbols)
    step = [[next(iter(d.delta[p][a])) for a in symbols] for p in range(n)]
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for p in range(n):
        for i in range(k):
            inv[i][step[p][i]].append(p)
    fin = set(d.final)
    non = set(range(n)) - fin
    blocks = [b for b in (fin, non) if b]
    block_of = [0] * n
    for bid, b in enumerate(blocks):
        for p in b:
            block_of[p] = bid
    work = set()
    if len(blocks) == 2:
        small = 0 if len(blocks[0]) <= len(blocks[1]) else 1
        work = {(small, i) for i in range(k)}
    while work:
        bid, i = work.pop()
        pre = set()
        col = inv[i]
        for q in blocks[bid]:
            pre.update(col[q])
        touched = {}
        for p in pre:
            touched.setdefault(block_of[p], []).append(p)
        for y, inside in touched.items():
            if len(inside) == len(blocks[y]):
                continue
            new_block = set(inside)
            blocks[y] = blocks[y] - new_block
            nid = len(blocks)
            blocks.append(new_block)
            for p in new_block:
                block_of[p] = nid
            smaller = nid if len(new_block) <= len(blocks[y]) else y
            for j in range(k):
                if (y, j) in work:
                    work.add((nid, j))
                else:
                    work.add((smaller, j))
    delta = []
    for b in blocks:
        rep = next(iter(b))
        delta.append({a: frozenset((block_of[step[rep][i]],)) for i, a in enumerate(symbols)})
    final = {block_of[p] for p in fin}
    result = Nfa(d.alphabet, len(blocks), {block_of[0]}, final, delta, is_dfa=True)
    return renumber(result)


# -- Boolean closure --------------------------------------------------------------

class Op(enum.Enum):
    UNION = "union"
    INTERSECTION = "intersection"
    COMPLEMENT = "complement"
    CONCAT = "concat"
    STAR = "star"


def complement(m: Nfa, minimal: bool = True) -> Nfa:
    d = determinize(m)
    flipped = Nfa(d.alphabet, d.num_states, d.initial, set(range(d.num_states)) - d.final, d.delta, is_dfa=True)
    return minimize(flipped) if minimal else flipped


def union(m1: Nfa, m2: Nfa) -> Nfa:
    _same_alphabet(m1, m2)
    off = m1.num_states
    delta = list(m1.delta) + [{a: frozenset(q + off for q in qs) for a, qs in d.items()} for d in m2.delta]
    return Nfa(m1.alphabet, off + m2.num_states, set(m1.initial) | {q + off for q in m2.initial},
               set(m1.final) | {q + off for q in m2.final}, delta)


def intersection(m1: Nfa, m2: Nfa) -> Nfa:
    _same_alphabet(m1, m2)
    a1, a2 = remove_epsilon(m1), remove_epsilon(m2)
    ids = {}
    pairs = []
    for p in sorted(a1.initial):
        for q in sorted(a2.initial):
            ids[(p, q)] = len(pairs)
            pairs.append((p, q))
    delta = []
    i = 0
    while i < len(pairs):
        p, q = pairs[i]
        d = {}
        d1, d2 = a1.delta[p], a2.delta[q]
        for a, ps in d1.items():
            qs = d2.get(a)
            if not qs:
                continue
            tgt = set()
            for p2 in ps:
                for q2 in qs:
                    j = ids.get((p2, q2))
                    if j is None:
                        j = ids[(p2, q2)] = len(pairs)
                        pairs.append((p2, q2))
                    tgt.add(j)
            d[a] = frozenset(tgt)
        delta.append(d)
        i += 1
    final = [j for j, (p, q) in enumerate(pairs) if p in a1.final and q in a2.final]
    is_dfa = a1.is_dfa and a2.is_dfa
    res = Nfa(m1.alphabet, len(pairs), range(len(a1.initial) * len(a2.initial)), final, delta, is_dfa=is_dfa)
    return res


def concatenation(m1: Nfa, m2: Nfa) -> Nfa:
    _same_alphabet(m1, m2)
    off = m1.num_states
    delta = [dict(d) for d in m1.delta] + [{a: frozenset(q + off for q in qs) for a, qs in d.items()}
                                           for d in m2.delta]
    bridge = frozenset(q + off for q in m2.initial)
    for f in m1.final:
        delta[f][EPS] = delta[f].get(EPS, frozenset()) | bridge
    return Nfa(m1.alphabet, off + m2.num_states, m1.initial, {q + off for q in m2.final}, delta)


def star(m: Nfa) -> Nfa:
    n = m.num_states
    delta = [dict(d) for d in m.delta] + [{EPS: frozenset(m.initial)}]
    for f in m.final:
        delta[f][EPS] = delta[f].get(EPS, frozenset()) | {n}
    return Nfa(m.alphabet, n + 1, {n}, {n}, delta)


def combine(op, m1: Nfa, m2: Optional[Nfa] = None) -> Nfa:
    op = Op(op) if not isinstance(op, Op) else op
    unary = op in (Op.COMPLEMENT, Op.STAR)
    if unary != (m2 is None):
        raise ValueError(f"{op.value} takes {'one operand' if unary else 'two operands'}")
    if op is Op.COMPLEMENT:
        return complement(m1)
    if op is Op.STAR:
        return compact(star(m1))
    fn = {Op.UNION: union, Op.INTERSECTION: intersection, Op.CONCAT: concatenation}[op]
    return compact(fn(m1, m2))


# -- queries --------------------------------------------------------------------

class Query(enum.Enum):
    MEMBER = "member"
    EMPTY = "empty"
    UNIVERSAL = "universal"
    EQUIVALENT = "equivalent"


def accepts(m: Nfa, w: Word) -> bool:
    for c in w:
        if c not in m.alphabet:
            raise AlphabetError(f"letter {c!r} not in alphabet {m.alphabet}")
    cur = epsilon_closure(m, m.initial)
    for c in w:
        nxt = set()
        for p in cur:
            nxt.update(m.delta[p].get(c, ()))
        if not nxt:
            return False
        cur = epsilon_closure(m, nxt)
    return bool(cur & m.final)


def is_empty(m: Nfa) -> bool:
    return not (_reachable(m) & m.final)


def is_universal(m: Nfa) -> bool:
    e = remove_epsilon(m)
    symbols = e.alphabet.symbols
    start = frozenset(e.initial)
    seen = {start}
    todo = [start]
    while todo:
        cur = todo.pop()
        if not (cur & e.final):
            return False
        for a in symbols:
            nxt = set()
            for p in cur:
                nxt.update(e.delta[p].get(a, ()))
            nxt = frozenset(nxt)
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return True


def counterexample(m1: Nfa, m2: Nfa) -> Optional[Word]:
    """Shortest (canonical) word in the symmetric difference, or None."""
    _same_alphabet(m1, m2)
    e1, e2 = remove_epsilon(m1), remove_epsilon(m2)
    start = (frozenset(e1.initial), frozenset(e2.initial))
    seen = {start}
    queue = deque([(start, "")])
    while queue:
        (s1, s2), w = queue.popleft()
        if bool(s1 & e1.final) != bool(s2 & e2.final):
            return w
        for a in e1.alphabet.symbols:
            n1 = frozenset(q for p in s1 for q in e1.delta[p].get(a, ()))
            n2 = frozenset(q for p in s2 for q in e2.delta[p].get(a, ()))
            key = (n1, n2)
            if key not in seen:
                seen.add(key)
                queue.append((key, w + a))
    return None


def equivalent(m1: Nfa, m2: Nfa) -> bool:
    return counterexample(m1, m2) is None


def query(kind, m: Nfa, arg=None) -> bool:
    kind = Query(kind) if not isinstance(kind, Query) else kind
    if kind is Query.MEMBER:
        if not isinstance(arg, str):
            raise TypeError("MEMBER needs a word")
        return accepts(m, arg)
    if kind is Query.EQUIVALENT:
        if not isinstance(arg, Nfa):
            raise TypeError("EQUIVALENT needs an automaton")
        return equivalent(m, arg)
    if arg is not None:
        raise TypeError(f"{kind.value} takes no argument")
    return is_empty(m) if kind is Query.EMPTY else is_universal(m)


def enumerate_members(m: Nfa, max_len: int) -> list:
    """Accepted words of length <= max_len, in canonical order."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    e = compact(m)
    if is_empty(e):
        return []
    out = []
    layer = [("", frozenset(e.initial))]
    for n in range(max_len + 1):
        nxt = []
        for w, states in layer:
            if states & e.final:
                out.append(w)
            if n == max_len:
                continue
            for a in e.alphabet.symbols:
                s = frozenset(q for p in states for q in e.delta[p].get(a, ()))
                if s:
                    nxt.append((w + a, s))
        layer = nxt
    return out


def iter_members(m: Nfa) -> Iterator[Word]:
    """Accepted words in canonical order (possibly infinitely many)."""
    e = compact(m)
    if is_empty(e):
        return
    layer = [("", frozenset(e.initial))]
    while layer:
        nxt = []
        for w, states in layer:
            if states & e.final:
                yield w
            for a in e.alphabet.symbols:
                s = frozenset(q for p in states for q in e.delta[p].get(a, ()))
                if s:
                    nxt.append((w + a, s))
        layer = nxt


# -- closures of a single word under the subword order ------------------------------

class Closure(enum.Enum):
    UP = "up"
    STRICT_UP = "strict_up"
    DOWN = "down"
    STRICT_DOWN = "strict_down"
    EXACT = "exact"
    INCOMPARABLE = "incomparable"


def word_closure(kind, w: Word, alphabet: Alphabet) -> Nfa:
    """UP: superwords of w; DOWN: subwords of w; INCOMPARABLE: neither."""
    kind = Closure(kind) if not isinstance(kind, Closure) else kind
    alphabet.check(w)
    k = len(w)
    if kind is Closure.EXACT:
        return from_word(w, alphabet)
    if kind is Closure.UP:
        trans = [(i, a, i) for i in range(k + 1) for a in alphabet]
        trans += [(i, c, i + 1) for i, c in enumerate(w)]
        return Nfa.build(alphabet, k + 1, {0}, {k}, trans)
    if kind is Closure.STRICT_UP:
        return compact(intersection(word_closure(Closure.UP, w, alphabet), length_between(alphabet, k + 1)))
    if kind is Closure.DOWN:
        trans = [(i, c, i + 1) for i, c in enumerate(w)] + [(i, EPS, i + 1) for i in range(k)]
        return compact(Nfa.build(alphabet, k + 1, {0}, {k}, trans))
    if kind is Closure.STRICT_DOWN:
        if k == 0:
            return empty(alphabet)
        return compact(intersection(word_closure(Closure.DOWN, w, alphabet), length_between(alphabet, 0, k - 1)))
    up_or_down = union(word_closure(Closure.UP, w, alphabet), word_closure(Closure.DOWN, w, alphabet))
    return complement(up_or_down)


def sorted_members(words, alphabet: Alphabet) -> list:
    return canonical_sorted(words, alphabet)


# -- automaton to regular expression (state elimination) ------------------------------

def _r_union(x, y):
    if isinstance(x, rx.EmptySet):
        return y
    if isinstance(y, rx.EmptySet) or x == y:
        return x
    parts = []
    for r in (x, y):
        for p in (r.parts if isinstance(r, rx.Union) else (r,)):
            if p not in parts:
                parts.append(p)
    return rx.union(*parts)


def _r_concat(x, y):
    if isinstance(x, rx.EmptySet) or isinstance(y, rx.EmptySet):
        return rx.EmptySet()
    if isinstance(x, rx.Epsilon):
        return y
    if isinstance(y, rx.Epsilon):
        return x
    parts = []
    for r in (x, y):
        parts.extend(r.parts if isinstance(r, rx.Concat) else (r,))
    return rx.concat(*parts)


def _r_star(x):
    if isinstance(x, (rx.EmptySet, rx.Epsilon)):
        return rx.Epsilon()
    if isinstance(x, rx.Star):
        return x
    return rx.Star(x)


def nfa_to_regex(m: Nfa) -> "rx.Regex":
    """Regular expression for L(m), by eliminating states in reverse canonical order."""
    m = compact(m)
    if is_empty(m):
        return rx.EmptySet()
    n = m.num_states
    start, end = n, n + 1
    edges = {}

    def add(p, q, r):
        edges[(p, q)] = _r_union(edges.get((p, q), rx.EmptySet()), r)

    for p, a, q in m.transitions:
        add(p, q, rx.Sym(a))
    for p in m.initial:
        add(start, p, rx.Epsilon())
    for p in m.final:
        add(p, end, rx.Epsilon())
    for k in reversed(range(n)):
        loop = _r_star(edges.pop((k, k), rx.EmptySet()))
        ins = [(p, r) for (p, q), r in edges.items() if q == k]
        outs = [(q, r) for (p, q), r in edges.items() if p == k]
        for p, _ in ins:
            del edges[(p, k)]
        for q, _ in outs:
            del edges[(k, q)]
        for p, r_in in ins:
            for q, r_out in outs:
                add(p, q, _r_concat(_r_concat(r_in, loop), r_out))
    return edges.get((start, end), rx.EmptySet())
