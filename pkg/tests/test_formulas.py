import itertools

import pytest
from hypothesis import given, strategies as st

from subwordlogic.automata import nfa as au
from subwordlogic.automata.regex import parse_regex
from subwordlogic.decider import bounded_eval
from subwordlogic.errors import AlphabetError, FragmentError, ParseError
from subwordlogic.formulas import (FALSE, PARTITION, And, Bool, Const, Dialect, Exists, Forall, Form,
                                   Iff, Implies, MemberAtom, Not, Or, Rel, RelAtom, Var, classify,
                                   constants, dnf_clauses, eliminate_constants, free_vars,
                                   is_quantifier_free, nnf, normalize, parse, parse_batch,
                                   parse_document, to_text, variables, walk)
from subwordlogic.words import Alphabet

from oracles import relation_oracle, subword_by_positions, words

AB = Alphabet.of("ab")
WORDS3 = list(words("ab", 3))

REGEXES = [parse_regex(t, AB) for t in ("(ab)*", "a*b", "(a+b)*a", "@", "#")]

terms = st.sampled_from([Var("x"), Var("y"), Const(""), Const("a"), Const("ab"), Const("ba")])
atoms = st.one_of(
    st.builds(RelAtom, terms, st.sampled_from(list(Rel)), terms),
    st.builds(MemberAtom, st.sampled_from([Var("x"), Var("y")]), st.sampled_from(REGEXES)),
    st.sampled_from([Bool(True), Bool(False)]),
)


def _tree(leaves, quantifiers):
    def extend(inner):
        pair = st.tuples(inner, inner)
        opts = [inner.map(Not), pair.map(And), pair.map(Or),
                pair.map(lambda p: Implies(*p)), pair.map(lambda p: Iff(*p))]
        if quantifiers:
            v = st.sampled_from(["x", "y"])
            opts += [st.builds(Exists, v, inner), st.builds(Forall, v, inner)]
        return st.one_of(*opts)
    return st.recursive(leaves, extend, max_leaves=6)


formulas = _tree(atoms, quantifiers=True)
qf_formulas = _tree(atoms, quantifiers=False)
valuations = st.fixed_dictionaries({"x": st.sampled_from(WORDS3), "y": st.sampled_from(WORDS3)})


class TestParser:
    def test_basic_sentence(self):
        f = parse('E x. ("ab" <= x & "bc" <= x & !("abc" <= x))', Alphabet.of("abc"))
        assert isinstance(f, Exists) and f.var == "x"
        assert constants(f) == {"ab", "bc", "abc"}
        assert classify(f).dialect is Dialect.BASIC

    def test_pure_sentence(self):
        f = parse("A x. A y. (x <= y | y <= x)")
        assert classify(f).dialect is Dialect.PURE
        assert variables(f) == {"x", "y"}

    def test_extended_sentence(self):
        f = parse("A x. ((E y. (y in /(ab)*/ & x <= y)) <-> x in /(a+b)*/)", AB)
        assert classify(f).dialect is Dialect.EXTENDED
        assert any(isinstance(g, Iff) for g in walk(f))

    @pytest.mark.parametrize("text,expected", [
        ("x <= y", RelAtom(Var("x"), Rel.SUBEQ, Var("y"))),
        ("x < y", RelAtom(Var("x"), Rel.STRICT, Var("y"))),
        ("x > y", RelAtom(Var("x"), Rel.STRICT_INV, Var("y"))),
        ("x = y", RelAtom(Var("x"), Rel.EQ, Var("y"))),
        ("x >< y", RelAtom(Var("x"), Rel.INC, Var("y"))),
        ('x <= ""', RelAtom(Var("x"), Rel.SUBEQ, Const(""))),
    ])
    def test_atoms(self, text, expected):
        assert parse(text, AB) == expected

    def test_geq_means_reversed_subword(self):
        f = parse("x >= y")
        for u, v in itertools.product(WORDS3, repeat=2):
            assert bounded_eval(f, {"x": u, "y": v}, 3, AB) == subword_by_positions(v, u)

    def test_precedence(self):
        f = parse("!a1 & b1 | c1 -> d1 <-> e1".replace("1", " = x"))
        assert isinstance(f, Iff)
        assert isinstance(f.left, Implies)
        assert isinstance(f.left.left, Or)
        assert isinstance(f.left.left.args[0], And)
        assert isinstance(f.left.left.args[0].args[0], Not)

    def test_implication_is_right_associative(self):
        f = parse("x = x -> y = y -> x = y")
        assert isinstance(f.right, Implies)

    def test_quantifier_body_extends_right(self):
        f = parse("E x. x = y & y = y")
        assert isinstance(f, Exists) and isinstance(f.body, And)

    def test_quantifier_lists(self):
        assert parse("E x y. x = y") == parse("E x, y. x = y") == parse("E x. E y. x = y")

    def test_header_sets_alphabet(self):
        f, A = parse_document('alphabet: a b c\n# comment\nE x. "abc" <= x')
        assert A == Alphabet.of("abc")
        assert classify(f).sigma_level == 1

    def test_header_conflict(self):
        with pytest.raises(AlphabetError):
            parse('alphabet: ab\nx = x', Alphabet.of("abc"))

    @pytest.mark.parametrize("text", ["E x x = y", "x <=", "(x = y", "x = y)", "x ?? y",
                                      "E . x = x", 'x in /(ab/', ""])
    def test_syntax_errors(self, text):
        with pytest.raises(ParseError):
            parse(text, AB)

    def test_error_position(self):
        with pytest.raises(ParseError) as e:
            parse("x = y & & x = y")
        assert "8" in str(e.value)

    def test_unknown_symbol(self):
        with pytest.raises(AlphabetError):
            parse('"abc" <= x', AB)

    def test_batch(self):
        fs, A = parse_batch('alphabet: ab;\nE x. x in /a;b/ ; A y. "a;" = y ;; x = x')
        assert A == Alphabet.of("ab;")
        assert len(fs) == 3
        assert isinstance(fs[0], Exists) and isinstance(fs[1], Forall)

    @given(formulas)
    def test_roundtrip(self, f):
        assert parse(to_text(f), AB) == f


class TestClassify:
    def test_pi2_fo2_example(self):
        p = classify(parse("A x. E y. (x <= y & E x. !(x <= y))"))
        assert (p.pi_level, p.fo_vars) == (2, 2)

    def test_atom(self):
        p = classify(parse('"ab" <= x', AB))
        assert (p.sigma_level, p.pi_level, p.fo_vars) == (0, 0, 1)

    def test_sigma1_basic(self):
        p = classify(parse('E x. ("ab" <= x & "bc" <= x & !("abc" <= x))', Alphabet.of("abc")))
        assert (p.sigma_level, p.fo_vars, p.dialect) == (1, 1, Dialect.BASIC)

    @pytest.mark.parametrize("text,sigma,pi", [
        ("E x. x = x", 1, 2),
        ("A x. x = x", 2, 1),
        ("!(E x. x = x)", 2, 1),
        ("E x. A y. x <= y", 2, 3),
        ("A x. E y. x <= y", 3, 2),
        ("(E x. x = x) & (A y. y = y)", 2, 2),
        ("(E x. x = x) -> (E y. y = y)", 2, 2),
        ("(E x. x = x) <-> x = x", 2, 2),
    ])
    def test_levels(self, text, sigma, pi):
        p = classify(parse(text))
        assert (p.sigma_level, p.pi_level) == (sigma, pi)

    def test_free_variables_count(self):
        assert classify(parse("E x. x <= y & y <= z")).fo_vars == 3

    @given(formulas)
    def test_profile_invariants(self, f):
        p = classify(f)
        assert abs(p.sigma_level - p.pi_level) <= 1
        assert p.fo_vars == len(variables(f))
        if is_quantifier_free(f):
            assert p.sigma_level == p.pi_level == 0

    @given(formulas)
    def test_negation_swaps(self, f):
        p, q = classify(f), classify(Not(f))
        assert (p.sigma_level, p.pi_level) == (q.pi_level, q.sigma_level)

    @given(formulas)
    def test_vacuous_exists_monotone(self, f):
        p, q = classify(f), classify(Exists("fresh", f))
        assert q.sigma_level >= p.sigma_level
        assert q.fo_vars >= p.fo_vars


def _same_semantics(f, g, valuation):
    return bounded_eval(f, valuation, 3, AB) == bounded_eval(g, valuation, 3, AB)


class TestConstantElimination:
    def test_upward(self):
        g = eliminate_constants(parse('"ab" <= x', AB), AB)
        assert isinstance(g, MemberAtom)
        assert {w for w in words("ab", 4) if au.accepts(g.lang, w)} == \
               {w for w in words("ab", 4) if subword_by_positions("ab", w)}

    def test_downward(self):
        g = eliminate_constants(parse('x <= "ab"', AB), AB)
        assert au.enumerate_members(g.lang, 4) == ["", "a", "b", "ab"]

    def test_two_constants(self):
        assert eliminate_constants(parse('"ab" <= "ba"', AB), AB) == FALSE

    @pytest.mark.parametrize("r", list(Rel))
    @pytest.mark.parametrize("w", ["", "a", "ab", "bab"])
    def test_each_relation(self, r, w):
        name = {Rel.SUBEQ: "SUBWORD", Rel.STRICT: "STRICT", Rel.STRICT_INV: "STRICT_INV",
                Rel.EQ: "EQUALITY", Rel.INC: "INCOMPARABLE"}[r]
        left = eliminate_constants(RelAtom(Const(w), r, Var("x")), AB)
        right = eliminate_constants(RelAtom(Var("x"), r, Const(w)), AB)
        for u in words("ab", 4):
            assert au.accepts(left.lang, u) == relation_oracle(name, w, u)
            assert au.accepts(right.lang, u) == relation_oracle(name, u, w)

    @given(formulas, valuations)
    def test_preserves_semantics(self, f, v):
        g = eliminate_constants(f, AB)
        assert classify(g).dialect is not Dialect.BASIC
        assert _same_semantics(f, g, v)


class TestNormalForms:
    def test_double_negation(self):
        assert nnf(parse("!!(x < y)")) == parse("x < y")

    def test_negated_strict(self):
        g = nnf(parse("!(x < y)"))
        assert isinstance(g, Or)
        assert {a.rel for a in g.args} == {Rel.EQ, Rel.STRICT_INV, Rel.INC}

    def test_negated_membership(self):
        g = nnf(parse("!(x in /(ab)*/)", AB), AB)
        assert isinstance(g, MemberAtom)
        for w in words("ab", 5):
            assert au.accepts(g.lang, w) != (w == "ab" * (len(w) // 2))

    def test_negated_membership_needs_alphabet(self):
        with pytest.raises(FragmentError):
            nnf(parse("!(x in /a/)", AB))

    def test_dnf_needs_quantifier_free(self):
        with pytest.raises(FragmentError):
            dnf_clauses(parse("E x. x = x"))

    @given(formulas)
    def test_nnf_shape(self, f):
        g = nnf(f, AB)
        for h in walk(g):
            assert not isinstance(h, (Not, Implies, Iff))
            if isinstance(h, RelAtom):
                assert h.rel in PARTITION
        assert free_vars(g) <= free_vars(f)

    @given(formulas, valuations)
    def test_nnf_preserves_semantics(self, f, v):
        assert _same_semantics(f, nnf(f, AB), v)

    @given(qf_formulas, valuations)
    def test_dnf_preserves_semantics(self, f, v):
        g = normalize(f, Form.DNF_QF, AB)
        assert _same_semantics(f, g, v)
        for clause in dnf_clauses(f, AB):
            assert all(isinstance(a, (RelAtom, MemberAtom)) for a in clause)
