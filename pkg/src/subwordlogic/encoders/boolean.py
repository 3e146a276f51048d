"""Propositional formulas, quantified Boolean formulas and their text formats."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple, Union

from ..errors import ParseError


class BoolExpr:
    __slots__ = ()


@dataclass(frozen=True)
class BVar(BoolExpr):
    index: int


@dataclass(frozen=True)
class BConst(BoolExpr):
    value: bool


@dataclass(frozen=True)
class BNot(BoolExpr):
    arg: BoolExpr


@dataclass(frozen=True)
class BAnd(BoolExpr):
    args: tuple


@dataclass(frozen=True)
class BOr(BoolExpr):
    args: tuple


Cnf = List[List[int]]


def cnf_to_expr(clauses: Iterable[Sequence[int]]) -> BoolExpr:
    """DIMACS-style clauses (nonzero ints, negative = negated) to an expression."""
    conj = []
    for clause in clauses:
        lits = []
        for lit in clause:
            if lit == 0:
                raise ValueError("literal 0 is not allowed inside a clause")
            lits.append(BVar(lit) if lit > 0 else BNot(BVar(-lit)))
        conj.append(BOr(tuple(lits)))
    return BAnd(tuple(conj))


def as_expr(phi: Union[BoolExpr, Iterable[Sequence[int]]]) -> BoolExpr:
    return phi if isinstance(phi, BoolExpr) else cnf_to_expr(phi)


def bool_vars(e: BoolExpr) -> set:
    if isinstance(e, BVar):
        return {e.index}
    if isinstance(e, BNot):
        return bool_vars(e.arg)
    if isinstance(e, (BAnd, BOr)):
        out = set()
        for a in e.args:
            out |= bool_vars(a)
        return out
    return set()


def evaluate(e: BoolExpr, assignment) -> bool:
    if isinstance(e, BVar):
        return bool(assignment[e.index])
    if isinstance(e, BConst):
        return e.value
    if isinstance(e, BNot):
        return not evaluate(e.arg, assignment)
    if isinstance(e, BAnd):
        return all(evaluate(a, assignment) for a in e.args)
    if isinstance(e, BOr):
        return any(evaluate(a, assignment) for a in e.args)
    raise TypeError(f"not a Boolean expression: {e!r}")


def brute_force_sat(phi, num_vars: int = None) -> bool:
    e = as_expr(phi)
    names = sorted(bool_vars(e) | set(range(1, (num_vars or 0) + 1)))
    for bits in itertools.product((False, True), repeat=len(names)):
        if evaluate(e, dict(zip(names, bits))):
            return True
    return False


@dataclass(frozen=True)
class Qbf:
    """prefix: sequence of ('e' | 'a', variable index), outermost first."""
    prefix: Tuple[Tuple[str, int], ...]
    matrix: BoolExpr

    def __post_init__(self):
        seen = set()
        for q, v in self.prefix:
            if q not in ("e", "a"):
                raise ValueError(f"quantifier must be 'e' or 'a', got {q!r}")
            if v in seen:
                raise ValueError(f"variable {v} quantified twice")
            seen.add(v)
        loose = bool_vars(self.matrix) - seen
        if loose:
            raise ValueError(f"matrix mentions unquantified variables {sorted(loose)}")


def qbf_truth(q: Qbf) -> bool:
    """Brute-force evaluation by recursion on the prefix."""
    def go(i, assignment):
        if i == len(q.prefix):
            return evaluate(q.matrix, assignment)
        kind, v = q.prefix[i]
        results = (go(i + 1, {**assignment, v: b}) for b in (False, True))
        return any(results) if kind == "e" else all(results)
    return go(0, {})


def alternate(q: Qbf) -> Qbf:
    """Pad the prefix to strict e/a alternation starting with e and of even length.

    Dummy variables get fresh indices above every existing one and do not
    occur in the matrix, so truth is unchanged.
    """
    nxt = max([v for _, v in q.prefix] + list(bool_vars(q.matrix)) + [0]) + 1
    out = []
    for kind, v in q.prefix:
        want = "e" if len(out) % 2 == 0 else "a"
        if kind != want:
            out.append((want, nxt))
            nxt += 1
        out.append((kind, v))
    if not out:
        out.append(("e", nxt))
        nxt += 1
    if len(out) % 2:
        out.append(("a", nxt))
    return Qbf(tuple(out), q.matrix)


def parse_qdimacs(text: str) -> Qbf:
    """Minimal QDIMACS: optional ``p cnf`` line, ``e``/``a`` prefix lines, clauses.

    Variables occurring only in clauses are existential and outermost.
    """
    prefix: List[Tuple[str, int]] = []
    clauses: List[List[int]] = []
    current: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("p"):
            continue
        tokens = line.split()
        if tokens[0] in ("e", "a"):
            try:
                nums = [int(t) for t in tokens[1:]]
            except ValueError:
                raise ParseError(f"line {lineno}: bad quantifier line {line!r}") from None
            if nums and nums[-1] == 0:
                nums.pop()
            if any(n <= 0 for n in nums):
                raise ParseError(f"line {lineno}: quantified variables must be positive")
            prefix.extend((tokens[0], n) for n in nums)
            continue
        try:
            nums = [int(t) for t in tokens]
        except ValueError:
            raise ParseError(f"line {lineno}: bad clause {line!r}") from None
        for n in nums:
            if n == 0:
                clauses.append(current)
                current = []
            else:
                current.append(n)
    if current:
        clauses.append(current)
    matrix = cnf_to_expr(clauses)
    bound = {v for _, v in prefix}
    free = sorted(bool_vars(matrix) - bound)
    return Qbf(tuple([("e", v) for v in free] + prefix), matrix)


def parse_dimacs(text: str) -> Cnf:
    clauses, current = [], []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line[0] in "cp%":
            continue
        for tok in line.split():
            n = int(tok)
            if n == 0:
                clauses.append(current)
                current = []
            else:
                current.append(n)
    if current:
        clauses.append(current)
    return clauses
