import json

import pytest

from subwordlogic.cli import main
from subwordlogic.formulas import parse_document

TOTAL = "A x. A y. (x <= y | y <= x)"
DOWNWARD = "A x. ((E y. (y in /(ab)*/ & x <= y)) <-> x in /(a+b)*/)"
SIGMA1 = 'E x. ("ab" <= x & "bc" <= x & !("abc" <= x))'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestDecide:
    def test_total_order(self, capsys):
        assert run(capsys, "decide", "-a", "ab", TOTAL)[:2] == (1, "FALSE\n")
        assert run(capsys, "decide", "-a", "a", TOTAL)[:2] == (0, "TRUE\n")

    def test_downward_closure(self, capsys):
        assert run(capsys, "decide", "-a", "ab", DOWNWARD)[:2] == (0, "TRUE\n")

    def test_free_variable_prints_automaton(self, capsys):
        code, out, _ = run(capsys, "decide", "-a", "ab", "E y. y < x")
        assert code == 0 and "states:" in out

    def test_dot_output(self, capsys):
        code, out, _ = run(capsys, "decide", "-a", "ab", "--format", "dot", "E y. y < x")
        assert out.startswith("digraph")

    def test_parse_error(self, capsys):
        code, out, err = run(capsys, "decide", "-a", "ab", "A x. (x <=")
        assert code == 2 and "error" in err

    def test_fragment_error(self, capsys):
        code, _, err = run(capsys, "decide", "-a", "ab", "E x. E y. E z. (x < y & y < z & x < z)")
        assert code == 2 and err

    def test_missing_alphabet(self, capsys):
        assert run(capsys, "decide", TOTAL)[0] == 2

    def test_batch_file_and_json(self, capsys, tmp_path):
        p = tmp_path / "batch.txt"
        p.write_text(f"alphabet: ab\n{TOTAL};\n{DOWNWARD}\n")
        code, out, _ = run(capsys, "decide", "--file", str(p), "--format", "json")
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["verdict"] for r in records] == ["FALSE", "TRUE"]
        assert [r["index"] for r in records] == [0, 1]
        assert code == 1

    def test_jobs_keep_order(self, capsys, tmp_path):
        p = tmp_path / "batch.txt"
        p.write_text(f"{DOWNWARD}; {TOTAL}; {DOWNWARD}")
        code, out, _ = run(capsys, "decide", "-a", "ab", "--file", str(p), "--jobs", "2")
        assert out.split() == ["TRUE", "FALSE", "TRUE"]


class TestSat:
    def test_worked_example(self, capsys):
        code, out, _ = run(capsys, "sat", "-a", "abc", "--max-len", "4", SIGMA1)
        lines = out.splitlines()
        assert code == 0 and lines[0] == "SAT"
        assert lines[1].startswith('x="') and len(lines[1]) == len('x=""') + 4

    def test_contradiction(self, capsys):
        code, out, _ = run(capsys, "sat", "-a", "ab", "--max-len", "3", 'E x. ("a" <= x & !("a" <= x))')
        assert (code, out) == (1, "UNKNOWN (bound 3)\n")

    def test_not_sigma1(self, capsys):
        assert run(capsys, "sat", "-a", "ab", "E x. A y. x <= y")[0] == 2


class TestOtherCommands:
    def test_classify_p6_shape(self, capsys):
        from subwordlogic.encoders.properties import p6
        from subwordlogic.formulas import to_text
        from subwordlogic.words import Alphabet
        text = to_text(p6(Alphabet.of("ab"), "a"))
        code, out, _ = run(capsys, "classify", text)
        assert out == "dialect=basic sigma=2 pi=3 vars=3\n" and code == 0

    def test_classify_json(self, capsys):
        _, out, _ = run(capsys, "classify", "--format", "json", "A x. E y. (x <= y & E x. !(x <= y))")
        assert json.loads(out) == {"dialect": "pure", "sigma": 3, "pi": 2, "vars": 2}

    def test_eval(self, capsys):
        code, out, _ = run(capsys, "eval", "-a", "abc", "--let", "x=bcab",
                           '"ab" <= x & "bc" <= x & !("abc" <= x)')
        assert (code, out) == (0, "TRUE (exact)\n")

    def test_eval_heuristic(self, capsys):
        code, out, _ = run(capsys, "eval", "-a", "ab", "--let", "z=a", "A y. z <= y")
        assert (code, out) == (1, "FALSE (heuristic)\n")

    def test_distinguish(self, capsys):
        assert run(capsys, "distinguish", "aab", "aba", "2")[:2] == (0, "ba\n")
        assert run(capsys, "distinguish", "ab", "ba", "1")[:2] == (1, "NONE\n")

    def test_relation_member(self, capsys):
        assert run(capsys, "relation", "incomparable", "member", "ba", "ab")[:2] == (0, "true\n")
        assert run(capsys, "relation", "subword", "member", "ba", "ab")[:2] == (1, "false\n")

    def test_relation_preimage(self, capsys):
        code, out, _ = run(capsys, "relation", "-a", "ab", "strict", "preimage", "ab")
        assert code == 0 and "states:" in out

    def test_relation_needs_alphabet(self, capsys):
        assert run(capsys, "relation", "t1", "show")[0] == 2


class TestEncode:
    def _roundtrip(self, out):
        f, A = parse_document(out)
        assert A is not None
        return f, A

    def test_sat(self, capsys):
        code, out, _ = run(capsys, "encode", "sat", "1 -2 0\n2 0\n")
        self._roundtrip(out)
        assert run(capsys, "sat", "--max-len", "2", out)[0] == 0

    def test_qbf_decides(self, capsys):
        _, out, _ = run(capsys, "encode", "qbf", "e 1 0\na 2 0\n1 0\n")
        assert run(capsys, "decide", out)[:2] == (0, "TRUE\n")
        _, out, _ = run(capsys, "encode", "qbf", "e 1 0\na 2 0\n2 0\n")
        assert run(capsys, "decide", out)[:2] == (1, "FALSE\n")

    @pytest.mark.parametrize("dialect,expected", [("extended", "dialect=extended sigma=2"),
                                                  ("basic", "dialect=basic sigma=2")])
    def test_pcp(self, capsys, dialect, expected):
        _, out, _ = run(capsys, "encode", "pcp", "--dialect", dialect, "a ab\nba a\n")
        self._roundtrip(out)
        assert run(capsys, "classify", out)[1].startswith(expected)

    def test_pcp_variant(self, capsys):
        _, out, _ = run(capsys, "encode", "pcp-variant", "prefix: b\na ba\n")
        f, A = self._roundtrip(out)
        assert set(str(A)) >= set("abAB1")

    def test_purify(self, capsys):
        _, out, _ = run(capsys, "encode", "purify", "-a", "ab", 'E u. ("bab" <= u & !("aab" <= u))')
        assert run(capsys, "classify", out)[1].startswith("dialect=pure sigma=2")

    def test_regular(self, capsys):
        _, out, _ = run(capsys, "encode", "regular", "-a", "ab", "(ab)*")
        assert run(capsys, "classify", out)[1].startswith("dialect=basic sigma=2")

    def test_file_input(self, capsys, tmp_path):
        p = tmp_path / "inst.pcp"
        p.write_text("a a\n")
        code, out, _ = run(capsys, "encode", "pcp", "--file", str(p), "--format", "json")
        assert code == 0 and set(json.loads(out)) == {"alphabet", "formula"}

    def test_bad_input(self, capsys):
        assert run(capsys, "encode", "pcp", "a b c\n")[0] == 2
