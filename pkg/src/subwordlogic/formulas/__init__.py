from .ast import (ATOMS, FALSE, PARTITION, QUANTIFIERS, TRUE, And, Bool, Const, Exists, Forall, Formula,
                  Iff, Implies, MemberAtom, Not, Or, Rel, RelAtom, Term, Var, children, conj, constants,
                  disj, eq, exists, forall, free_vars, member, rebuild, rel, rename_bound, size, strict,
                  subeq, substitute, term, variables, walk)
from .classify import Dialect, FragmentProfile, classify, dialect, levels
from .normalize import (Form, dnf_clauses, eliminate_constants, holds, is_quantifier_free, lang_nfa, nnf,
                        normalize)
from .parser import parse, parse_batch, parse_document
from .printer import to_text

__all__ = [
    "ATOMS", "FALSE", "PARTITION", "QUANTIFIERS", "TRUE", "And", "Bool", "Const", "Dialect", "Exists",
    "Forall", "Form", "Formula", "FragmentProfile", "Iff", "Implies", "MemberAtom", "Not", "Or", "Rel",
    "RelAtom", "Term", "Var", "children", "classify", "conj", "constants", "dialect", "disj",
    "dnf_clauses", "eliminate_constants", "eq", "exists", "forall", "free_vars", "holds",
    "is_quantifier_free", "lang_nfa", "levels", "member", "nnf", "normalize", "parse", "parse_batch",
    "parse_document", "rebuild", "rel", "rename_bound", "size", "strict", "subeq", "substitute", "term",
    "to_text", "variables", "walk",
]
