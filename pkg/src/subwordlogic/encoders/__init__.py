"""Formula generators: simple properties, regular languages and the hardness reductions."""
from .boolean import (BAnd, BConst, BNot, BOr, BVar, Qbf, alternate, as_expr, bool_vars,
                      brute_force_sat, cnf_to_expr, evaluate, parse_dimacs, parse_qdimacs, qbf_truth)
from .properties import (Prop, p1, p2, p3, p4, p5, p6, p7, p8, p_formula, regular_to_formula,
                         run_alphabet, run_formula)
from .purify import (DEFAULT_MAX_LEN, Namer, Purification, closure_of, definer, intended_valuation,
                     purify, purify_parts, xi)
from .reductions import (PcpInstance, hat_letters, parse_pcp, pcp_language, pcp_to_sigma2, rho,
                         sat_to_sigma1, tqbf_letters, tqbf_to_fo2, variant_alphabet,
                         variant_pcp_to_sigma2)

__all__ = [
    "BAnd", "BConst", "BNot", "BOr", "BVar", "DEFAULT_MAX_LEN", "Namer", "PcpInstance", "Prop",
    "Purification", "Qbf", "alternate", "as_expr", "bool_vars", "brute_force_sat", "closure_of",
    "cnf_to_expr", "definer", "evaluate", "hat_letters", "intended_valuation", "p1", "p2", "p3", "p4",
    "p5", "p6", "p7", "p8", "p_formula", "parse_dimacs", "parse_pcp", "parse_qdimacs", "pcp_language",
    "pcp_to_sigma2", "purify", "purify_parts", "qbf_truth", "regular_to_formula", "rho", "run_alphabet",
    "run_formula", "sat_to_sigma1", "tqbf_letters", "tqbf_to_fo2", "variant_alphabet",
    "variant_pcp_to_sigma2", "xi",
]
