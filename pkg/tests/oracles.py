"""Independent reference implementations used by the tests.

These avoid the library's own algorithms: subwords via index subsets,
regexes via Python's ``re``, relations via their definitions.
"""
import itertools
import re

from subwordlogic.automata import regex as rx


def subword_by_positions(u, v):
    """u is obtained from v by deleting letters (search over position subsets)."""
    return any("".join(v[i] for i in idx) == u for idx in itertools.combinations(range(len(v)), len(u)))


def all_subwords(v):
    return {"".join(v[i] for i in idx) for k in range(len(v) + 1)
            for idx in itertools.combinations(range(len(v)), k)}


def words(alphabet, max_len):
    for n in range(max_len + 1):
        for t in itertools.product(alphabet, repeat=n):
            yield "".join(t)


def to_python_regex(r):
    if isinstance(r, rx.EmptySet):
        return "(?!)"
    if isinstance(r, rx.Epsilon):
        return "(?:)"
    if isinstance(r, rx.Sym):
        return re.escape(r.symbol)
    if isinstance(r, rx.Concat):
        return "(?:" + "".join(to_python_regex(p) for p in r.parts) + ")"
    if isinstance(r, rx.Union):
        return "(?:" + "|".join(to_python_regex(p) for p in r.parts) + ")"
    if isinstance(r, rx.Star):
        return "(?:" + to_python_regex(r.inner) + ")*"
    raise TypeError(r)


def regex_matches(r, w):
    return re.fullmatch(to_python_regex(r), w) is not None


def relation_oracle(kind, u, v):
    """Definitions of the builtin relations, written from scratch."""
    su, sv = subword_by_positions(u, v), subword_by_positions(v, u)
    return {
        "SUBWORD": su,
        "STRICT": su and u != v,
        "STRICT_INV": sv and u != v,
        "EQUALITY": u == v,
        "INCOMPARABLE": not su and not sv,
        "T1": not su and len(u) <= len(v),
        "T2": not sv and len(v) <= len(u),
    }[kind]


_REL_NAMES = {"<=": "SUBWORD", "<": "STRICT", ">": "STRICT_INV", "=": "EQUALITY", "><": "INCOMPARABLE"}


def naive_eval(f, env, max_len, alphabet):
    """Tarskian truth with every quantifier ranging over all words of length <= max_len.

    No guard shortcuts; relation atoms use relation_oracle, membership atoms
    Python's ``re`` (or plain acceptance when the payload is an automaton).
    """
    from subwordlogic.automata import nfa as au
    from subwordlogic.formulas import ast

    universe = list(words(alphabet, max_len))

    def val(t, e):
        return t.word if isinstance(t, ast.Const) else e[t.name]

    def ev(g, e):
        if isinstance(g, ast.Bool):
            return g.value
        if isinstance(g, ast.RelAtom):
            return relation_oracle(_REL_NAMES[g.rel.value], val(g.left, e), val(g.right, e))
        if isinstance(g, ast.MemberAtom):
            w = val(g.term, e)
            if isinstance(g.lang, au.Nfa):
                return au.accepts(g.lang, w)
            return regex_matches(g.lang, w)
        if isinstance(g, ast.Not):
            return not ev(g.arg, e)
        if isinstance(g, ast.And):
            return all(ev(a, e) for a in g.args)
        if isinstance(g, ast.Or):
            return any(ev(a, e) for a in g.args)
        if isinstance(g, ast.Implies):
            return not ev(g.left, e) or ev(g.right, e)
        if isinstance(g, ast.Iff):
            return ev(g.left, e) == ev(g.right, e)
        if isinstance(g, ast.Exists):
            return any(ev(g.body, {**e, g.var: w}) for w in universe)
        if isinstance(g, ast.Forall):
            return all(ev(g.body, {**e, g.var: w}) for w in universe)
        raise TypeError(g)

    return ev(f, dict(env))
