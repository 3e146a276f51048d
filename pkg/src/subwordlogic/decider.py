"""Decision procedures.

* ``fo2_language`` / ``fo2_decide``: exact automata-based procedure for the
  two-variable fragment (extended dialect allowed).
* ``sigma1_search``: bounded witness search for existential sentences.
* ``bounded_eval``: Tarskian evaluation over the finite universe A^{<=L},
  the oracle used to cross-check everything else.
* ``guardedness_check``: when does bounded evaluation agree with A*?
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Union

from .automata import nfa as au
from .automata.nfa import Nfa
from .errors import EvaluationError, FragmentError
from .formulas.ast import (And, Bool, Const, Exists, Forall, Formula, Iff, Implies, MemberAtom, Not, Or,
                           Rel, RelAtom, Var, children, constants, free_vars, rebuild, terms_of)
from .formulas.normalize import dnf_clauses, eliminate_constants, holds, is_quantifier_free, lang_nfa
from .relations import Kind, builtin_relation, preimage
from .words import Alphabet, Word, subwords

Valuation = Dict[str, Word]


# -- FO2 ----------------------------------------------------------------------------

_KIND = {Rel.STRICT: Kind.STRICT, Rel.STRICT_INV: Kind.STRICT_INV, Rel.INC: Kind.INCOMPARABLE}


@functools.lru_cache(maxsize=None)
def _relation(r: Rel, alphabet: Alphabet):
    return builtin_relation(_KIND[r], alphabet)


def two_variable_form(f: Formula, names=("x", "y")) -> Formula:
    """Rename bound variables so that only the two given names occur.

    Free variables must already be among ``names``.  Raises FragmentError if
    some subformula has more than two free variables.
    """
    extra = free_vars(f) - set(names)
    if extra:
        raise FragmentError(f"free variables {sorted(extra)} outside {list(names)}")
    return _rename2(f, {n: n for n in names}, names)


def _rename2(f: Formula, env: dict, names) -> Formula:
    if isinstance(f, (RelAtom, MemberAtom)):
        mapping = {t.name: Var(env[t.name]) for t in terms_of(f) if isinstance(t, Var)}
        if isinstance(f, RelAtom):
            return RelAtom(_rn(f.left, mapping), f.rel, _rn(f.right, mapping))
        return MemberAtom(_rn(f.term, mapping), f.lang)
    if isinstance(f, (Exists, Forall)):
        live = {env[v] for v in free_vars(f)}
        if len(live) > 1:
            raise FragmentError(f"quantifier over {f.var!r} sees {len(live) + 1} variables")
        fresh = next(n for n in names if n not in live)
        inner = dict(env)
        inner[f.var] = fresh
        return type(f)(fresh, _rename2(f.body, inner, names))
    kids = children(f)
    if not kids:
        return f
    return rebuild(f, [_rename2(k, env, names) for k in kids])


def _rn(t, mapping):
    return mapping.get(t.name, t) if isinstance(t, Var) else t


def fo2_language(f: Formula, free: str, alphabet: Alphabet) -> Nfa:
    """Minimal DFA for {u : f(u)} where ``free`` is the only free variable."""
    extra = free_vars(f) - {free}
    if extra:
        raise FragmentError(f"free variables {sorted(extra)} besides {free!r}")
    other = "y" if free != "y" else "x"
    g = two_variable_form(eliminate_constants(f, alphabet), (free, other))
    return au.minimize(_lang(g, free, alphabet))


def _lang(f: Formula, x: str, A: Alphabet) -> Nfa:
    if isinstance(f, Bool):
        return au.universal(A) if f.value else au.empty(A)
    if isinstance(f, MemberAtom):
        return lang_nfa(f.lang, A)
    if isinstance(f, RelAtom):
        # both sides are x here; constants were eliminated earlier
        return au.universal(A) if f.rel in (Rel.SUBEQ, Rel.EQ) else au.empty(A)
    if isinstance(f, Not):
        return au.complement(_lang(f.arg, x, A))
    if isinstance(f, And):
        out = _lang(f.args[0], x, A)
        for a in f.args[1:]:
            if au.is_empty(out):
                break
            out = au.minimize(au.intersection(out, _lang(a, x, A)))
        return out
    if isinstance(f, Or):
        out = _lang(f.args[0], x, A)
        for a in f.args[1:]:
            out = au.minimize(au.union(out, _lang(a, x, A)))
        return out
    if isinstance(f, Implies):
        return au.minimize(au.union(au.complement(_lang(f.left, x, A)), _lang(f.right, x, A)))
    if isinstance(f, Iff):
        left, right = _lang(f.left, x, A), _lang(f.right, x, A)
        both = au.intersection(left, right)
        neither = au.intersection(au.complement(left), au.complement(right))
        return au.minimize(au.union(both, neither))
    if isinstance(f, Forall):
        return au.complement(_lang(Exists(f.var, Not(f.body)), x, A))
    if isinstance(f, Exists):
        if f.var == x or x not in free_vars(f):
            # a sentence: its truth value is a constant language
            truth = not au.is_empty(_lang(f.body, f.var, A))
            return au.universal(A) if truth else au.empty(A)
        return _exists(f.body, x, f.var, A)
    raise TypeError(f"not a formula: {f!r}")


def _collapse(f: Formula, x: str, y: str, A: Alphabet) -> Formula:
    """Replace every quantified subformula by a membership atom or a truth value.

    A quantifier node has at most one free variable, so this leaves a
    quantifier-free formula over x and y.
    """
    if not isinstance(f, (Exists, Forall)):
        if is_quantifier_free(f):
            return f
        return rebuild(f, [_collapse(k, x, y, A) for k in children(f)])
    fv = free_vars(f)
    if not fv:
        return Bool(_truth(f, A))
    (v,) = fv
    return MemberAtom(Var(v), au.minimize(_lang(f, v, A)))


def _truth(f: Formula, A: Alphabet) -> bool:
    if isinstance(f, Exists):
        return not au.is_empty(_lang(f.body, f.var, A))
    return au.is_universal(_lang(f.body, f.var, A))


def _group(f: Formula, x: str, y: str, A: Alphabet) -> Formula:
    """Fold every maximal subformula over a single variable into one membership atom.

    Keeps the DNF small: only x-y relation atoms stay as separate literals.
    """
    fv = free_vars(f)
    if len(fv) < 2:
        if not fv or isinstance(f, MemberAtom):
            return f
        (v,) = fv
        return MemberAtom(Var(v), au.minimize(_lang(f, v, A)))
    if isinstance(f, (And, Or)):
        make = au.intersection if isinstance(f, And) else au.union
        mixed, single = [], {x: [], y: []}
        for a in f.args:
            fa = free_vars(a)
            if len(fa) == 1:
                single[next(iter(fa))].append(a)
            else:
                mixed.append(a)
        args = [_group(a, x, y, A) for a in mixed]
        for v in (x, y):
            if single[v]:
                langs = [_lang(a, v, A) for a in single[v]]
                out = langs[0]
                for m in langs[1:]:
                    out = au.minimize(make(out, m))
                args.append(MemberAtom(Var(v), au.minimize(out)))
        return type(f)(tuple(args)) if len(args) > 1 else args[0]
    if isinstance(f, RelAtom):
        return f
    return rebuild(f, [_group(k, x, y, A) for k in children(f)])


def _exists(body: Formula, x: str, y: str, A: Alphabet) -> Nfa:
    qf = _group(_collapse(body, x, y, A), x, y, A)
    result = au.empty(A)
    for clause in dnf_clauses(qf, A):
        lx, ly, kinds = au.universal(A), au.universal(A), set()
        dead = False
        for atom in clause:
            if isinstance(atom, MemberAtom):
                m = lang_nfa(atom.lang, A)
                if atom.term.name == x:
                    lx = au.intersection(lx, m)
                else:
                    ly = au.intersection(ly, m)
                continue
            left, right = atom.left.name, atom.right.name
            if left == right:
                if atom.rel is not Rel.EQ:
                    dead = True
                continue
            kinds.add(atom.rel if left == x else atom.rel.inverse)
        if dead or len(kinds) > 1:
            continue  # two distinct partition relations never hold together
        ly = au.minimize(ly)
        if au.is_empty(ly):
            continue
        if kinds:
            (r,) = kinds
            reach = ly if r is Rel.EQ else au.minimize(preimage(_relation(r, A), ly))
            lx = au.intersection(lx, reach)
        result = au.minimize(au.union(result, lx))
    return result


def fo2_decide(f: Formula, alphabet: Alphabet) -> bool:
    """Truth of a closed two-variable sentence over (A*, subword order)."""
    if free_vars(f):
        raise FragmentError(f"not a sentence: free variables {sorted(free_vars(f))}")
    g = two_variable_form(eliminate_constants(f, alphabet))
    return _decide(g, alphabet)


def _decide(f: Formula, A: Alphabet) -> bool:
    if isinstance(f, Bool):
        return f.value
    if isinstance(f, Not):
        return not _decide(f.arg, A)
    if isinstance(f, And):
        return all(_decide(a, A) for a in f.args)
    if isinstance(f, Or):
        return any(_decide(a, A) for a in f.args)
    if isinstance(f, Implies):
        return (not _decide(f.left, A)) or _decide(f.right, A)
    if isinstance(f, Iff):
        return _decide(f.left, A) == _decide(f.right, A)
    if isinstance(f, (Exists, Forall)):
        return _truth(f, A)
    raise FragmentError(f"closed atom without constants cannot occur: {f!r}")


# -- bounded evaluation --------------------------------------------------------------

def guard_terms(f: Formula, z: str, positive: bool = True):
    """Terms t with: f(z) implies z <= t for some t (or, if not positive, not-f(z) does).

    Returns a tuple of terms, or None if no such bound is visible
    syntactically.  An empty tuple means f is never true (resp. never false).
    """
    if isinstance(f, Bool):
        return () if f.value != positive else None
    if isinstance(f, RelAtom):
        if not positive:
            return None
        t = _guard_of(f, z)
        return (t,) if t is not None else None
    if isinstance(f, Not):
        return guard_terms(f.arg, z, not positive)
    if isinstance(f, (And, Or)):
        # a conjunction is bounded if one conjunct is; a disjunction if all are
        any_suffices = isinstance(f, And) == positive
        parts = [guard_terms(a, z, positive) for a in f.args]
        if any_suffices:
            found = [p for p in parts if p is not None]
            return min(found, key=len) if found else None
        if any(p is None for p in parts):
            return None
        return tuple(dict.fromkeys(t for p in parts for t in p))
    if isinstance(f, Implies):
        return guard_terms(Or((Not(f.left), f.right)), z, positive)
    return None


def _guard_of(a: RelAtom, z: str):
    """The term t if the atom forces z below t."""
    l, r = a.left, a.right
    if a.rel in (Rel.SUBEQ, Rel.STRICT, Rel.EQ) and l == Var(z) and r != Var(z):
        return r
    if a.rel in (Rel.STRICT_INV, Rel.EQ) and r == Var(z) and l != Var(z):
        return l
    return None


class Certificate(enum.Enum):
    EXACT = "exact"
    SOUND_FOR_TRUE = "sound_for_true"
    HEURISTIC = "heuristic"


BoundCertificate = Certificate


def guardedness_check(f: Formula) -> Certificate:
    unguarded = []
    _scan(f, True, unguarded)
    if not unguarded:
        return Certificate.EXACT
    if all(ok for ok in unguarded):
        return Certificate.SOUND_FOR_TRUE
    return Certificate.HEURISTIC


def _scan(f: Formula, polarity, out: list):
    """Collect, for each unguarded quantifier, whether it acts existentially.

    polarity is True, False, or None (both, under <->).
    """
    if isinstance(f, (Exists, Forall)):
        is_exists = isinstance(f, Exists)
        if guard_terms(f.body, f.var, is_exists) is None:
            out.append(polarity is not None and is_exists == polarity)
        _scan(f.body, polarity, out)
    elif isinstance(f, Not):
        _scan(f.arg, None if polarity is None else not polarity, out)
    elif isinstance(f, Implies):
        _scan(f.left, None if polarity is None else not polarity, out)
        _scan(f.right, polarity, out)
    elif isinstance(f, Iff):
        _scan(f.left, None, out)
        _scan(f.right, None, out)
    else:
        for k in children(f):
            _scan(k, polarity, out)


Env = Dict[str, Word]


class _Compiler:
    """Turns a formula into nested closures evaluated against an environment."""

    def __init__(self, alphabet: Alphabet, L: int):
        self.A = alphabet
        self.L = L
        self._universe = None

    @property
    def universe(self):
        if self._universe is None:
            self._universe = tuple(self.A.words(self.L))
        return self._universe

    def term(self, t) -> Callable[[Env], Word]:
        if isinstance(t, Const):
            w = t.word
            return lambda env: w
        name = t.name

        def get(env):
            try:
                return env[name]
            except KeyError:
                raise EvaluationError(f"unbound variable {name!r}") from None
        return get

    def compile(self, f: Formula) -> Callable[[Env], bool]:
        if isinstance(f, Bool):
            v = f.value
            return lambda env: v
        if isinstance(f, RelAtom):
            return self.rel(f)
        if isinstance(f, MemberAtom):
            m = lang_nfa(f.lang, self.A)
            m = au.minimize(m)
            get = self.term(f.term)
            test = functools.lru_cache(maxsize=None)(m.accepts)
            return lambda env: test(get(env))
        if isinstance(f, Not):
            g = self.compile(f.arg)
            return lambda env: not g(env)
        if isinstance(f, And):
            gs = [self.compile(a) for a in _cheap_first(f.args)]
            return lambda env: all(g(env) for g in gs)
        if isinstance(f, Or):
            gs = [self.compile(a) for a in _cheap_first(f.args)]
            return lambda env: any(g(env) for g in gs)
        if isinstance(f, Implies):
            a, b = self.compile(f.left), self.compile(f.right)
            return lambda env: (not a(env)) or b(env)
        if isinstance(f, Iff):
            a, b = self.compile(f.left), self.compile(f.right)
            return lambda env: a(env) == b(env)
        if isinstance(f, (Exists, Forall)):
            return self.quantifier(f)
        raise TypeError(f"not a formula: {f!r}")

    def rel(self, f: RelAtom):
        left, right = self.term(f.left), self.term(f.right)
        r = f.rel
        test = functools.lru_cache(maxsize=None)(lambda u, v: holds(r, u, v))
        return lambda env: test(left(env), right(env))

    def quantifier(self, f):
        is_exists = isinstance(f, Exists)
        var = f.var
        body = self.compile(f.body)
        bound = guard_terms(f.body, var, is_exists)
        domain = self.domain_fn(bound)

        if is_exists:
            def ev(env):
                inner = dict(env)
                for w in domain(env):
                    inner[var] = w
                    if body(inner):
                        return True
                return False
        else:
            def ev(env):
                inner = dict(env)
                for w in domain(env):
                    inner[var] = w
                    if not body(inner):
                        return False
                return True
        return self.memo(ev, sorted(free_vars(f)))

    @staticmethod
    def memo(ev, names, limit=200_000):
        """Cache a quantifier's truth by the values of its free variables."""
        seen = {}

        def cached(env):
            try:
                key = tuple(env[n] for n in names)
            except KeyError:
                return ev(env)  # let the body report the unbound name
            r = seen.get(key)
            if r is None:
                if len(seen) >= limit:
                    seen.clear()
                r = seen[key] = ev(env)
            return r
        return cached

    def domain_fn(self, bound):
        if bound is None:
            universe = self.universe
            return lambda env: universe
        getters = [self.term(t) for t in bound]
        L = self.L
        key = self.A.sort_key

        @functools.lru_cache(maxsize=4096)
        def below(words):
            out = set()
            for w in words:
                out.update(s for s in subwords(w) if len(s) <= L)
            return tuple(sorted(out, key=key))
        return lambda env: below(tuple(g(env) for g in getters))


def _cheap_first(args):
    """Quantifier-free conjuncts first, preserving order otherwise."""
    return sorted(args, key=lambda a: not is_quantifier_free(a))


def compile_formula(f: Formula, alphabet: Alphabet, L: int) -> Callable[[Env], bool]:
    return _Compiler(alphabet, L).compile(f)


def bounded_eval(f: Formula, v: Mapping[str, Word], L: int, alphabet: Alphabet) -> bool:
    """Truth of f under v when quantifiers range over words of length <= L.

    Quantifiers guarded by a subword atom range over the subwords of the
    guard's value only; this is equivalent, since other words falsify
    (resp. satisfy) the body.
    """
    missing = free_vars(f) - set(v)
    if missing:
        raise EvaluationError(f"unbound free variables {sorted(missing)}")
    if L < 0:
        raise ValueError("universe bound must be >= 0")
    for w in v.values():
        alphabet.check(w)
    return compile_formula(f, alphabet, L)(dict(v))


# -- Sigma_1 witness search -------------------------------------------------------------

@dataclass(frozen=True)
class Sat:
    valuation: Dict[str, Word] = field(default_factory=dict)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class UnsatUpToBound:
    bound: int

    def __bool__(self):
        return False


SearchResult = Union[Sat, UnsatUpToBound]


def sigma1_split(f: Formula):
    """(variables of the leading existential block, matrix); free variables count as existential."""
    block = []
    g = f
    while isinstance(g, Exists):
        if g.var not in block:
            block.append(g.var)
        g = g.body
    if not is_quantifier_free(g):
        raise FragmentError("not an existential block over a quantifier-free matrix")
    extra = sorted(free_vars(f))
    return extra + block, g


def default_bound(f: Formula) -> int:
    names, matrix = sigma1_split(f)
    return 2 * (len(names) + sum(len(w) for w in constants(matrix)))


def sigma1_search(f: Formula, alphabet: Alphabet, max_len: Optional[int] = None) -> SearchResult:
    """First satisfying valuation (in canonical tuple order) with words of length <= max_len.

    Tuples are ordered lexicographically with the first variable varying
    slowest, each coordinate in shortlex order.  Partial assignments that
    already falsify the matrix are pruned, which preserves that order.
    """
    names, matrix = sigma1_split(f)
    if max_len is None:
        max_len = default_bound(f)
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    for w in constants(matrix):
        alphabet.check(w)
    words = tuple(alphabet.words(max_len))
    partial = _partial_evaluator(matrix, alphabet)
    env: Dict[str, Word] = {}

    def search(i):
        if i == len(names):
            return True
        name = names[i]
        for w in words:
            env[name] = w
            if partial(env) is not False and search(i + 1):
                return True
        del env[name]
        return False

    if not search(0):
        return UnsatUpToBound(max_len)
    witness = dict(env)
    if not compile_formula(matrix, alphabet, max_len)(witness):
        raise AssertionError(f"search produced a non-witness {witness}")
    return Sat(witness)


def _partial_evaluator(f: Formula, A: Alphabet) -> Callable[[Env], Optional[bool]]:
    """Kleene three-valued evaluation: None when an unassigned variable matters."""
    if isinstance(f, Bool):
        v = f.value
        return lambda env: v
    if isinstance(f, (RelAtom, MemberAtom)):
        names = [t.name for t in terms_of(f) if isinstance(t, Var)]
        full = compile_formula(f, A, 0)
        return lambda env: full(env) if all(n in env for n in names) else None
    if isinstance(f, Not):
        g = _partial_evaluator(f.arg, A)

        def neg(env):
            r = g(env)
            return None if r is None else not r
        return neg
    if isinstance(f, Implies):
        return _partial_evaluator(Or((Not(f.left), f.right)), A)
    if isinstance(f, Iff):
        a, b = _partial_evaluator(f.left, A), _partial_evaluator(f.right, A)

        def iff(env):
            x, y = a(env), b(env)
            return None if x is None or y is None else x == y
        return iff
    if isinstance(f, (And, Or)):
        gs = [_partial_evaluator(a, A) for a in f.args]
        stop = isinstance(f, Or)

        def junction(env):
            unknown = False
            for g in gs:
                r = g(env)
                if r is None:
                    unknown = True
                elif r is stop:
                    return stop
            return None if unknown else not stop
        return junction
    raise FragmentError("quantifier inside a quantifier-free matrix")


__all__ = [
    "BoundCertificate", "Certificate", "Sat", "SearchResult", "UnsatUpToBound", "Valuation",
    "bounded_eval", "compile_formula", "default_bound", "fo2_decide", "fo2_language", "guard_terms",
    "guardedness_check", "sigma1_search", "sigma1_split", "two_variable_form",
]
