import pytest
from hypothesis import given, strategies as st

from subwordlogic.automata import nfa as au
from subwordlogic.automata import regex as rx
from subwordlogic.automata.nfa import EPS, Closure, Nfa
from subwordlogic.automata.serialize import (nfa_from_text, nfa_to_dot, nfa_to_text,
                                             transducer_from_text, transducer_to_text)
from subwordlogic.errors import AlphabetError, ParseError
from subwordlogic.relations import subword_relation
from subwordlogic.words import Alphabet

from oracles import regex_matches, subword_by_positions, words

AB = Alphabet.of("ab")
WORDS4 = list(words("ab", 4))

regexes = st.recursive(
    st.sampled_from([rx.Sym("a"), rx.Sym("b"), rx.Epsilon(), rx.EmptySet()]),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda p: rx.Concat(p)),
        st.tuples(inner, inner).map(lambda p: rx.Union(p)),
        inner.map(rx.Star),
    ),
    max_leaves=6,
)


def lang(m, n=4):
    return {w for w in words("ab", n) if au.accepts(m, w)}


def rlang(r, n=4):
    return {w for w in words("ab", n) if regex_matches(r, w)}


class TestRegex:
    @pytest.mark.parametrize("text", ["(ab)*", "a+b", "a^+b", "@", "#", "(a+@)(b*a)*"])
    def test_print_parse_roundtrip(self, text):
        r = rx.parse_regex(text, AB)
        assert rx.parse_regex(rx.to_text(r), AB) == r

    @pytest.mark.parametrize("bad", ["", "(a", "a)", "a^", "+a", "*"])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            rx.parse_regex(bad)

    def test_alphabet_check(self):
        with pytest.raises(AlphabetError):
            rx.parse_regex("ac", AB)

    @given(regexes)
    def test_printer_roundtrip_semantics(self, r):
        again = rx.parse_regex(rx.to_text(r), AB)
        assert rlang(again) == rlang(r)

    @given(regexes)
    def test_builtin_matcher_agrees_with_re(self, r):
        for w in words("ab", 3):
            assert rx.matches(r, w) == regex_matches(r, w)


class TestConstruction:
    @given(regexes)
    def test_thompson_language(self, r):
        assert lang(au.regex_to_nfa(r, AB)) == rlang(r)

    @given(regexes)
    def test_epsilon_removal_determinize_minimize_preserve_language(self, r):
        m = au.regex_to_nfa(r, AB)
        expected = rlang(r)
        assert not au.remove_epsilon(m).has_epsilon
        assert lang(au.remove_epsilon(m)) == expected
        assert lang(au.determinize(m)) == expected
        assert lang(au.minimize(m)) == expected

    @given(regexes)
    def test_minimal_dfa_is_canonical(self, r):
        m1 = au.minimize(au.regex_to_nfa(r, AB))
        m2 = au.minimize(au.regex_to_nfa(rx.Union((r, r)), AB))
        assert m1 == m2
        assert m1.num_states <= au.determinize(au.regex_to_nfa(r, AB)).num_states

    @given(regexes, regexes)
    def test_boolean_operations(self, r1, r2):
        m1, m2 = au.regex_to_nfa(r1, AB), au.regex_to_nfa(r2, AB)
        l1, l2 = rlang(r1), rlang(r2)
        universe = set(words("ab", 4))
        assert lang(au.union(m1, m2)) == l1 | l2
        assert lang(au.intersection(m1, m2)) == l1 & l2
        assert lang(au.complement(m1)) == universe - l1
        cat = {w for w in universe if any(w[:i] in rlang(r1, 4) and w[i:] in rlang(r2, 4)
                                          for i in range(len(w) + 1))}
        assert lang(au.concatenation(m1, m2)) == cat

    @given(regexes)
    def test_star(self, r):
        assert lang(au.star(au.regex_to_nfa(r, AB))) == rlang(rx.Star(r))

    def test_basic_automata(self):
        assert lang(au.empty(AB)) == set()
        assert lang(au.universal(AB)) == set(WORDS4)
        assert lang(au.from_word("ab", AB)) == {"ab"}
        assert lang(au.from_words(["", "ba"], AB)) == {"", "ba"}
        assert lang(au.length_between(AB, 1, 2)) == {w for w in WORDS4 if 1 <= len(w) <= 2}

    def test_build_validates(self):
        with pytest.raises(ValueError):
            Nfa.build(AB, 1, {0}, {0}, [(0, "a", 1)])
        with pytest.raises(AlphabetError):
            Nfa.build(AB, 1, {0}, {0}, [(0, "c", 0)])


class TestQueries:
    def test_empty_universal_equivalent(self):
        m = au.regex_to_nfa(rx.parse_regex("(a+b)*"), AB)
        assert au.is_universal(m) and not au.is_empty(m)
        assert au.is_empty(au.regex_to_nfa(rx.parse_regex("#"), AB))
        m1 = au.regex_to_nfa(rx.parse_regex("(ab)*a"), AB)
        m2 = au.regex_to_nfa(rx.parse_regex("a(ba)*"), AB)
        assert au.equivalent(m1, m2)
        assert au.query("equivalent", m1, m2) and au.query("member", m1, "aba")

    def test_counterexample_is_shortest(self):
        m1 = au.regex_to_nfa(rx.parse_regex("a*"), AB)
        m2 = au.regex_to_nfa(rx.parse_regex("a*+b"), AB)
        assert au.counterexample(m1, m2) == "b"
        assert au.counterexample(m1, m1) is None

    def test_enumerate_members_canonical(self):
        m = au.regex_to_nfa(rx.parse_regex("(ab)*+b"), AB)
        assert au.enumerate_members(m, 4) == ["", "b", "ab", "abab"]
        it = au.iter_members(m)
        assert [next(it) for _ in range(4)] == ["", "b", "ab", "abab"]


class TestClosures:
    @pytest.mark.parametrize("w", ["", "a", "ab", "aba"])
    def test_word_closures_match_definitions(self, w):
        sub = lambda u, v: subword_by_positions(u, v)
        expected = {
            Closure.UP: lambda u: sub(w, u),
            Closure.STRICT_UP: lambda u: sub(w, u) and u != w,
            Closure.DOWN: lambda u: sub(u, w),
            Closure.STRICT_DOWN: lambda u: sub(u, w) and u != w,
            Closure.EXACT: lambda u: u == w,
            Closure.INCOMPARABLE: lambda u: not sub(u, w) and not sub(w, u),
        }
        for kind, pred in expected.items():
            m = au.word_closure(kind, w, AB)
            assert lang(m, 5) == {u for u in words("ab", 5) if pred(u)}, kind


class TestStateElimination:
    @given(regexes)
    def test_nfa_to_regex_preserves_language(self, r):
        back = au.nfa_to_regex(au.regex_to_nfa(r, AB))
        assert rlang(back) == rlang(r)


class TestSerialization:
    @given(regexes)
    def test_text_roundtrip(self, r):
        m = au.compact(au.regex_to_nfa(r, AB))
        again = nfa_from_text(nfa_to_text(m))
        assert lang(again) == lang(m)
        assert nfa_to_text(again) == nfa_to_text(m)

    def test_epsilon_label_roundtrip(self):
        m = Nfa.build(AB, 2, {0}, {1}, [(0, EPS, 1), (1, "a", 1)])
        text = nfa_to_text(m)
        assert "0 @ 1" in text
        assert lang(nfa_from_text(text)) == lang(m)

    def test_header_errors(self):
        with pytest.raises(ParseError):
            nfa_from_text("alphabet: ab\nstates: 1\n")
        with pytest.raises(ParseError):
            nfa_from_text("alphabet: ab\nstates: 1\ninitial: 0\nfinal: 0\n0 a\n")

    def test_dot_output(self):
        dot = nfa_to_dot(au.from_word("ab", AB))
        assert dot.startswith("digraph") and "doublecircle" in dot and '[label="a"]' in dot

    def test_transducer_roundtrip(self):
        t = subword_relation(AB)
        again = transducer_from_text(transducer_to_text(t))
        assert again.transitions == t.transitions
