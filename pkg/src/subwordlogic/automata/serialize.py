"""Line-based text format and DOT export for automata and transducers.

::

    alphabet: ab
    states: 3
    initial: 0
    final: 2
    0 a 1
    1 @ 2

Transducer labels are written ``in/out`` (``a/@`` reads ``a`` and writes
nothing).  ``@`` stands for the empty word.
"""
from __future__ import annotations

from ..errors import ParseError
from ..words import Alphabet
from .nfa import EPS, Nfa, renumber


def _label(a):
    return "@" if a is EPS else a


def _unlabel(s):
    return EPS if s == "@" else s


def _header(alphabet, n, initial, final):
    return [
        f"alphabet: {alphabet}",
        f"states: {n}",
        "initial: " + " ".join(map(str, sorted(initial))),
        "final: " + " ".join(map(str, sorted(final))),
    ]


def nfa_to_text(m: Nfa, canonical: bool = True) -> str:
    if canonical:
        m = renumber(m)
    lines = _header(m.alphabet, m.num_states, m.initial, m.final)
    lines += [f"{p} {_label(a)} {q}" for p, a, q in m.transitions]
    return "\n".join(lines) + "\n"


def _read_header(text):
    fields = {}
    body = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, rest = line.partition(":")
        if sep and key in ("alphabet", "states", "initial", "final"):
            fields[key] = rest.strip()
        else:
            body.append((lineno, line))
    missing = {"alphabet", "states", "initial", "final"} - fields.keys()
    if missing:
        raise ParseError(f"automaton text lacks header fields {sorted(missing)}")
    alphabet = Alphabet(tuple(fields["alphabet"]))
    n = int(fields["states"])
    initial = [int(t) for t in fields["initial"].split()]
    final = [int(t) for t in fields["final"].split()]
    return alphabet, n, initial, final, body


def nfa_from_text(text: str) -> Nfa:
    alphabet, n, initial, final, body = _read_header(text)
    trans = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'src label dst'")
        trans.append((int(parts[0]), _unlabel(parts[1]), int(parts[2])))
    return Nfa.build(alphabet, n, initial, final, trans)


def transducer_to_text(t) -> str:
    lines = _header(t.alphabet, t.num_states, t.initial, t.final)
    lines += [f"{p} {_label(a)}/{_label(b)} {q}" for p, a, b, q in t.transitions]
    return "\n".join(lines) + "\n"


def transducer_from_text(text: str):
    from ..relations import Transducer

    alphabet, n, initial, final, body = _read_header(text)
    trans = []
    for lineno, line in body:
        parts = line.split()
        if len(parts) != 3 or "/" not in parts[1]:
            raise ParseError(f"line {lineno}: expected 'src in/out dst'")
        a, b = parts[1].split("/", 1)
        trans.append((int(parts[0]), _unlabel(a), _unlabel(b), int(parts[2])))
    return Transducer.build(alphabet, n, initial, final, trans)


def _dot(n, initial, final, edges, name):
    out = [f"digraph {name} {{", "  rankdir=LR;", '  node [shape=circle];']
    for q in sorted(final):
        out.append(f"  {q} [shape=doublecircle];")
    for q in sorted(initial):
        out.append(f'  init{q} [shape=point]; init{q} -> {q};')
    grouped = {}
    for p, label, q in edges:
        grouped.setdefault((p, q), []).append(label)
    for (p, q), labels in sorted(grouped.items()):
        text = ",".join(labels).replace('"', '\\"')
        out.append(f'  {p} -> {q} [label="{text}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def nfa_to_dot(m: Nfa, name: str = "nfa") -> str:
    m = renumber(m)
    edges = [(p, "ε" if a is EPS else a, q) for p, a, q in m.transitions]
    return _dot(m.num_states, m.initial, m.final, edges, name)


def transducer_to_dot(t, name: str = "transducer") -> str:
    edges = [(p, f"{'ε' if a is EPS else a}/{'ε' if b is EPS else b}", q) for p, a, b, q in t.transitions]
    return _dot(t.num_states, t.initial, t.final, edges, name)
