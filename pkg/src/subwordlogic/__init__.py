"""First-order logic over finite words ordered by the subword (subsequence) relation."""
from .errors import AlphabetError, EvaluationError, FragmentError, ParseError, SubwordLogicError
from .words import Alphabet, Relation, compare, is_subword, project

__version__ = "0.1.0"

__all__ = ["Alphabet", "AlphabetError", "EvaluationError", "FragmentError", "ParseError", "Relation",
           "SubwordLogicError", "compare", "is_subword", "project", "__version__"]
