import itertools

import pytest
from hypothesis import given, strategies as st

from subwordlogic.automata import nfa as au
from subwordlogic.automata import regex as rx
from subwordlogic.errors import AlphabetError
from subwordlogic.relations import (Build, Kind, builtin_relation, from_pairs, image, preimage, rel_build,
                                    rel_concat, rel_member, rel_star, rel_union, relabel, swap,
                                    t1_relation)
from subwordlogic.words import Alphabet

from oracles import relation_oracle, words

AB = Alphabet.of("ab")
ABC = Alphabet.of("abc")
pairs_ab = st.lists(st.tuples(st.text("ab", max_size=3), st.text("ab", max_size=3)), max_size=3)


def rel_set(t, n=3):
    ws = list(words(str(t.alphabet), n))
    return {(u, v) for u in ws for v in ws if rel_member(t, u, v)}


class TestBuiltins:
    @pytest.mark.parametrize("kind", list(Kind))
    def test_against_definitions_ab(self, kind):
        t = builtin_relation(kind, AB)
        for u, v in itertools.product(words("ab", 4), repeat=2):
            assert rel_member(t, u, v) == relation_oracle(kind.name, u, v), (kind, u, v)

    @pytest.mark.parametrize("kind", [Kind.T1, Kind.INCOMPARABLE])
    def test_against_definitions_abc(self, kind):
        t = builtin_relation(kind, ABC)
        for u, v in itertools.product(words("abc", 3), repeat=2):
            assert rel_member(t, u, v) == relation_oracle(kind.name, u, v), (kind, u, v)

    def test_unary_alphabet_has_no_incomparable_pairs(self):
        A = Alphabet.of("a")
        assert rel_set(t1_relation(A), 4) == set()
        assert rel_set(builtin_relation(Kind.INCOMPARABLE, A), 4) == set()

    def test_counterexamples_to_the_naive_t1_shape(self):
        # pairs where v keeps letters after the first mismatch
        t = t1_relation(AB)
        assert rel_member(t, "a", "bb") and rel_member(t, "ab", "aaa")
        assert not rel_member(t, "ab", "aab")

    def test_swap_of_t1_is_t2(self):
        assert rel_set(swap(t1_relation(AB))) == rel_set(builtin_relation(Kind.T2, AB))


class TestAlgebra:
    @given(pairs_ab)
    def test_from_pairs_is_exactly_the_pairs(self, pairs):
        t = from_pairs(pairs, AB)
        assert rel_set(t) == set(pairs)

    @given(pairs_ab, pairs_ab)
    def test_union_and_concat(self, p1, p2):
        t1, t2 = from_pairs(p1, AB), from_pairs(p2, AB)
        assert rel_set(rel_union(t1, t2)) == set(p1) | set(p2)
        cat = {(a + c, b + d) for a, b in p1 for c, d in p2}
        assert rel_set(rel_concat(t1, t2), 6) == cat

    def test_star(self):
        t = rel_star(from_pairs([("a", "bb")], AB))
        got = rel_set(t, 4)
        assert got == {("", ""), ("a", "bb"), ("aa", "bbbb")}

    def test_rel_build_dispatch(self):
        p = [("a", "b")]
        t = rel_build(Build.FROM_PAIRS, p, alphabet=AB)
        assert rel_set(rel_build("swap", t)) == {("b", "a")}
        assert rel_set(rel_build("concat", t, t)) == {("aa", "bb")}
        with pytest.raises(ValueError):
            rel_build("from_pairs", p)

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetError):
            rel_union(from_pairs([], AB), from_pairs([], ABC))


class TestPreimageImage:
    @pytest.mark.parametrize("kind", list(Kind))
    @pytest.mark.parametrize("text", ["(ab)*", "ba", "a*b", "#"])
    def test_preimage_matches_definition(self, kind, text):
        t = builtin_relation(kind, AB)
        m = au.regex_to_nfa(rx.parse_regex(text), AB)
        pre = preimage(t, m)
        img = image(t, m)
        targets = [w for w in words("ab", 6) if au.accepts(m, w)]
        for u in words("ab", 3):
            # completeness against short partners, soundness against partners up to length 7
            expected = any(relation_oracle(kind.name, u, v) for v in targets)
            if expected:
                assert au.accepts(pre, u), (kind, text, u)
            expected_img = any(relation_oracle(kind.name, v, u) for v in targets)
            if expected_img:
                assert au.accepts(img, u), (kind, text, u)
        for u in words("ab", 3):
            if au.accepts(pre, u):
                assert any(relation_oracle(kind.name, u, v) for v in words("ab", 7) if au.accepts(m, v))
            if au.accepts(img, u):
                assert any(relation_oracle(kind.name, v, u) for v in words("ab", 7) if au.accepts(m, v))

    def test_downward_closure_via_preimage(self):
        m = au.regex_to_nfa(rx.parse_regex("(ab)*"), AB)
        down = preimage(builtin_relation(Kind.SUBWORD, AB), m)
        assert au.is_universal(down)

    def test_relabel_image(self):
        A = Alphabet.of("abAB1")
        rho = relabel(A, [("a", "a"), ("b", "b"), ("a", "A"), ("b", "B"), ("1", "1")])
        m = au.regex_to_nfa(rx.parse_regex("(1ab)^+"), A)
        img = image(rho, m)
        assert au.enumerate_members(img, 3) == ["1ab", "1aB", "1Ab", "1AB"]
