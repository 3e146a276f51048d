"""Command-line interface.

Exit status: 0 for TRUE/SAT/found, 1 for FALSE/UNKNOWN/none, 2 for errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional

from . import decider, encoders, relations
from .automata import nfa as au
from .automata.regex import parse_regex
from .automata.serialize import (nfa_from_text, nfa_to_dot, nfa_to_text, transducer_to_dot,
                                 transducer_to_text)
from .errors import SubwordLogicError
from .formulas import Dialect, classify, constants, free_vars, parse_batch, parse_document, to_text
from .words import Alphabet, find_distinguisher

OK, NO, ERROR = 0, 1, 2


class Result:
    """One verdict: the text lines to print, a JSON record and a status."""

    def __init__(self, status: int, lines: List[str], record: dict):
        self.status, self.lines, self.record = status, lines, record


def _read(arg: Optional[str], path: Optional[str]) -> str:
    if path is not None:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    if arg is None:
        raise SubwordLogicError("give an input argument or --file")
    return arg


def _alphabet(args, header: Optional[Alphabet] = None) -> Alphabet:
    if args.alphabet:
        given = Alphabet.of(args.alphabet)
        if header is not None and header != given:
            raise SubwordLogicError(f"-a {given} disagrees with the file header alphabet {header}")
        return given
    if header is None:
        raise SubwordLogicError("no alphabet: pass -a or add an 'alphabet:' header")
    return header


def _formulas(args):
    text = _read(getattr(args, "formula", None), args.file)
    fs, header = parse_batch(text, Alphabet.of(args.alphabet) if args.alphabet else None)
    return fs, header


def _automaton_out(m, fmt: str) -> List[str]:
    if fmt == "dot":
        return nfa_to_dot(m).rstrip("\n").split("\n")
    return nfa_to_text(m).rstrip("\n").split("\n")


# -- per-formula workers (module level so that process pools can pickle them) -------

def _decide_one(job) -> Result:
    f, A, opts = job
    free = sorted(free_vars(f))
    if not free:
        verdict = decider.fo2_decide(f, A)
        word = "TRUE" if verdict else "FALSE"
        return Result(OK if verdict else NO, [word], {"verdict": word})
    if len(free) > 1:
        raise SubwordLogicError(f"at most one free variable allowed, got {free}")
    m = decider.fo2_language(f, free[0], A)
    return Result(OK, _automaton_out(m, opts["format"]),
                  {"variable": free[0], "automaton": nfa_to_text(m)})


def _sat_one(job) -> Result:
    f, A, opts = job
    res = decider.sigma1_search(f, A, opts["max_len"])
    if res:
        lines = ["SAT"] + [f'{k}="{v}"' for k, v in res.valuation.items()]
        return Result(OK, lines, {"verdict": "SAT", "valuation": res.valuation})
    return Result(NO, [f"UNKNOWN (bound {res.bound})"], {"verdict": "UNKNOWN", "bound": res.bound})


def _classify_one(job) -> Result:
    f, _, _ = job
    p = classify(f)
    return Result(OK, [str(p)], p.as_dict())


def _eval_one(job) -> Result:
    f, A, opts = job
    cert = decider.guardedness_check(f)
    verdict = decider.bounded_eval(f, opts["valuation"], opts["universe"], A)
    word = "TRUE" if verdict else "FALSE"
    return Result(OK if verdict else NO, [f"{word} ({cert.value})"],
                  {"verdict": word, "certificate": cert.value})


def _call(fn: Callable, job):
    try:
        return fn(job)
    except (SubwordLogicError, ValueError) as e:
        return Result(ERROR, [f"error: {e}"], {"error": str(e)})


def _batch(args, fn: Callable, opts: dict, need_alphabet: bool = True) -> int:
    fs, header = _formulas(args)
    A = _alphabet(args, header) if need_alphabet else header
    jobs = [(f, A, {**opts, "format": args.format}) for f in fs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_call, [fn] * len(jobs), jobs))
    else:
        results = [_call(fn, j) for j in jobs]
    for i, r in enumerate(results):
        _emit(args, r, i if len(results) > 1 else None)
    statuses = {r.status for r in results}
    return ERROR if ERROR in statuses else (NO if NO in statuses else OK)


def _emit(args, r: Result, index: Optional[int] = None):
    stream = sys.stderr if r.status == ERROR and args.format != "json" else sys.stdout
    if args.format == "json":
        rec = dict(r.record)
        if index is not None:
            rec = {"index": index, **rec}
        print(json.dumps(rec, sort_keys=True), file=stream)
        return
    for line in r.lines:
        print(line, file=stream)


# -- commands ------------------------------------------------------------------------

def cmd_decide(args) -> int:
    return _batch(args, _decide_one, {})


def cmd_sat(args) -> int:
    return _batch(args, _sat_one, {"max_len": args.max_len})


def cmd_classify(args) -> int:
    return _batch(args, _classify_one, {}, need_alphabet=False)


def cmd_eval(args) -> int:
    valuation = {}
    for item in args.assign:
        name, sep, word = item.partition("=")
        if not sep:
            raise SubwordLogicError(f"assignment {item!r} is not of the form var=word")
        valuation[name] = word.strip('"')
    return _batch(args, _eval_one, {"valuation": valuation, "universe": args.universe})


def cmd_distinguish(args) -> int:
    w = find_distinguisher(args.u, args.v, args.n,
                           Alphabet.of(args.alphabet) if args.alphabet else None)
    word = "NONE" if w is None else (w or '""')
    _emit(args, Result(OK if w is not None else NO, [word], {"distinguisher": w}))
    return OK if w is not None else NO


_KINDS = {
    "subword": relations.Kind.SUBWORD, "strict": relations.Kind.STRICT,
    "strict-inv": relations.Kind.STRICT_INV, "equality": relations.Kind.EQUALITY,
    "incomparable": relations.Kind.INCOMPARABLE, "t1": relations.Kind.T1, "t2": relations.Kind.T2,
}


def cmd_relation(args) -> int:
    words = [a.strip('"') for a in args.args]
    A = Alphabet.of(args.alphabet) if args.alphabet else None
    if A is None:
        letters = "".join(words) if args.op == "member" else ""
        if not letters:
            raise SubwordLogicError("pass -a to fix the alphabet")
        A = Alphabet.of(dict.fromkeys(letters))
    t = relations.builtin_relation(_KINDS[args.kind], A)
    if args.op == "member":
        if len(words) != 2:
            raise SubwordLogicError("member needs two words")
        verdict = relations.rel_member(t, words[0], words[1])
        _emit(args, Result(OK if verdict else NO, ["true" if verdict else "false"], {"member": verdict}))
        return OK if verdict else NO
    if args.op == "show":
        lines = (transducer_to_dot(t) if args.format == "dot" else transducer_to_text(t)).rstrip("\n")
        _emit(args, Result(OK, lines.split("\n"), {"transducer": transducer_to_text(t)}))
        return OK
    if len(words) != 1:
        raise SubwordLogicError(f"{args.op} needs one regular expression")
    m = au.regex_to_nfa(parse_regex(words[0], A), A)
    out = relations.preimage(t, m) if args.op == "preimage" else relations.image(t, m)
    out = au.minimize(out)
    _emit(args, Result(OK, _automaton_out(out, args.format), {"automaton": nfa_to_text(out)}))
    return OK


def cmd_encode(args) -> int:
    text = _read(args.input, args.file)
    kind = args.kind
    if kind == "sat":
        formula, alphabet = encoders.sat_to_sigma1(encoders.parse_dimacs(text)), Alphabet.of(args.alphabet or "a")
    elif kind == "qbf":
        formula, alphabet = encoders.tqbf_to_fo2(encoders.parse_qdimacs(text))
    elif kind == "pcp":
        inst = encoders.parse_pcp(text, Alphabet.of(args.alphabet) if args.alphabet else None)
        formula, alphabet = encoders.pcp_to_sigma2(inst, Dialect(args.dialect))
    elif kind == "pcp-variant":
        inst = encoders.parse_pcp(text, Alphabet.of(args.alphabet) if args.alphabet else None)
        formula, alphabet = encoders.variant_pcp_to_sigma2(inst)
    elif kind == "regular":
        if "states:" in text:
            m = nfa_from_text(text)
        else:
            if not args.alphabet:
                raise SubwordLogicError("encode regular needs -a for a regular expression")
            A = Alphabet.of(args.alphabet)
            m = au.regex_to_nfa(parse_regex(text.strip(), A), A)
        formula, alphabet = encoders.regular_to_formula(au.minimize(m))
    elif kind == "purify":
        payload, header = parse_document(text, Alphabet.of(args.alphabet) if args.alphabet else None)
        alphabet = _alphabet(args, header)
        words = constants(payload)
        formula = encoders.purify(words, payload, alphabet, max(4, args.max_len or 4))
    else:  # argparse restricts the choices
        raise SubwordLogicError(f"unknown encoding {kind!r}")
    body = to_text(formula)
    if args.format == "json":
        print(json.dumps({"alphabet": str(alphabet), "formula": body}, sort_keys=True))
    else:
        print(f"alphabet: {alphabet}")
        print(body)
    return OK


# -- argument parsing ----------------------------------------------------------------

def _common(p: argparse.ArgumentParser, formula: bool = True):
    p.add_argument("-a", "--alphabet", help="alphabet as a string of symbols, e.g. ab")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    if formula:
        p.add_argument("formula", nargs="?", help="formula text (or use --file)")
        p.add_argument("--file", help="read formulas from a file ('-' for stdin); ';' separates several")
        p.add_argument("--jobs", type=int, default=1, help="worker processes for several formulas")


def _nonneg(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subwordlogic",
                                 description="First-order logic of the subword ordering.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide a two-variable sentence (or build L(phi) for one free variable)")
    _common(p)
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("sat", help="bounded witness search for an existential formula")
    _common(p)
    p.add_argument("--max-len", type=_nonneg, default=None, help="longest candidate word")
    p.set_defaults(run=cmd_sat)

    p = sub.add_parser("classify", help="dialect, Sigma/Pi levels and variable count")
    _common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("eval", help="evaluate over words of length <= --universe")
    _common(p)
    p.add_argument("--universe", type=_nonneg, default=4, help="quantifier range bound L")
    p.add_argument("--let", dest="assign", action="append", default=[], metavar="VAR=WORD",
                   help="value of a free variable (repeatable)")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("distinguish", help="shortest word of length <= n that is a subword of exactly one input")
    _common(p, formula=False)
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("n", type=_nonneg)
    p.set_defaults(run=cmd_distinguish)

    p = sub.add_parser("relation", help="builtin rational relations")
    _common(p, formula=False)
    p.add_argument("kind", choices=sorted(_KINDS))
    p.add_argument("op", choices=("member", "preimage", "image", "show"))
    p.add_argument("args", nargs="*")
    p.set_defaults(run=cmd_relation)

    p = sub.add_parser("encode", help="generate a reduction formula")
    _common(p, formula=False)
    p.add_argument("kind", choices=("sat", "pcp", "pcp-variant", "qbf", "purify", "regular"))
    p.add_argument("input", nargs="?", help="inline input (or use --file)")
    p.add_argument("--file", help="input file ('-' for stdin)")
    p.add_argument("--dialect", choices=("extended", "basic"), default="extended")
    p.add_argument("--max-len", type=_nonneg, default=None, help="longest constant for purify")
    p.set_defaults(run=cmd_encode)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args, extra = parser.parse_known_args(argv)
    if extra:
        # argparse leaves positionals that follow an option unparsed
        slot = next((n for n in ("formula", "input") if getattr(args, n, 1) is None), None)
        if any(e.startswith("-") for e in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        if args.command == "relation":
            args.args = list(args.args) + extra
        elif slot and len(extra) == 1:
            setattr(args, slot, extra[0])
        else:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return args.run(args)
    except (SubwordLogicError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
