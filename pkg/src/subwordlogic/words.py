"""Word combinatorics for the subword (subsequence) ordering.

Words are plain ``str`` values whose characters are the letters; the empty
string is the empty word.  An :class:`Alphabet` fixes the letter order used
for every canonical enumeration in the package (shorter words first, then
lexicographic by alphabet position).
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .errors import AlphabetError

Word = str

# Characters with a meaning in the formula or regex syntax.
RESERVED = frozenset('"/+*()@#^\\')

DEFAULT_MAX_WORD = 20
DEFAULT_MAX_N = 6


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        if isinstance(self.symbols, str):
            object.__setattr__(self, "symbols", tuple(self.symbols))
        syms = self.symbols
        if not syms:
            raise AlphabetError("alphabet must be nonempty")
        if len(set(syms)) != len(syms):
            raise AlphabetError(f"duplicate symbols in alphabet {''.join(syms)!r}")
        for s in syms:
            if not isinstance(s, str) or len(s) != 1:
                raise AlphabetError(f"symbols must be single characters, got {s!r}")
            if s.isspace() or s in RESERVED:
                raise AlphabetError(f"symbol {s!r} is reserved")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(syms)})

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "Alphabet":
        return cls(tuple(symbols))

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._index

    def __str__(self):
        return "".join(self.symbols)

    def index(self, symbol: str) -> int:
        return self._index[symbol]

    def check(self, *words: Word) -> None:
        for w in words:
            for c in w:
                if c not in self._index:
                    raise AlphabetError(f"letter {c!r} of {w!r} is not in alphabet {self}")

    def union(self, other: Iterable[str]) -> "Alphabet":
        extra = [s for s in other if s not in self._index]
        return Alphabet(self.symbols + tuple(dict.fromkeys(extra)))

    def sort_key(self, w: Word):
        return (len(w), tuple(self._index[c] for c in w))

    def words(self, max_len: int, min_len: int = 0) -> Iterator[Word]:
        """All words with ``min_len <= |w| <= max_len`` in canonical order."""
        for n in range(min_len, max_len + 1):
            for letters in itertools.product(self.symbols, repeat=n):
                yield "".join(letters)

    def fresh(self, count: int, avoid: Iterable[str] = (), pool: Optional[str] = None) -> list:
        """Pick ``count`` symbols that are neither in this alphabet nor in ``avoid``."""
        taken = set(self.symbols) | set(avoid)
        if pool is None:
            pool = _FRESH_POOL
        out = []
        if count <= 0:
            return out
        for c in pool:
            if c not in taken and c not in RESERVED and not c.isspace():
                out.append(c)
                taken.add(c)
                if len(out) == count:
                    return out
        raise AlphabetError(f"cannot find {count} fresh symbols")


_FRESH_POOL = (
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "abcdefghijklmnopqrstuvwxyz"
    "0123456789"
    "αβγδεζηθικλμνξοπρστυφχψω"
    "ΓΔΘΛΞΠΣΦΨΩ"
)


class Relation(enum.Enum):
    """The four mutually exclusive relations between two words."""

    EQ = "="
    LT = "<"
    GT = ">"
    INC = "><"


def _check_same(alphabet, *words):
    if alphabet is not None:
        alphabet.check(*words)


def is_subword(u: Word, v: Word, alphabet: Optional[Alphabet] = None) -> bool:
    """Greedy left-to-right embedding test, O(|u| + |v|)."""
    _check_same(alphabet, u, v)
    if len(u) > len(v):
        return False
    it = iter(v)
    return all(c in it for c in u)


def compare(u: Word, v: Word, alphabet: Optional[Alphabet] = None) -> Relation:
    _check_same(alphabet, u, v)
    if u == v:
        return Relation.EQ
    if is_subword(u, v):
        return Relation.LT
    if is_subword(v, u):
        return Relation.GT
    return Relation.INC


def project(letters: Iterable[str], u: Word, alphabet: Optional[Alphabet] = None) -> Word:
    keep = frozenset(letters)
    if alphabet is not None:
        alphabet.check(u)
        foreign = [c for c in keep if c not in alphabet]
        if foreign:
            raise AlphabetError(f"projection set has foreign symbols {sorted(foreign)}")
    return "".join(c for c in u if c in keep)


def is_factor(u: Word, v: Word, alphabet: Optional[Alphabet] = None) -> bool:
    _check_same(alphabet, u, v)
    return u in v


def block_factorize(u: Word) -> list:
    """Maximal runs of equal letters as ``(letter, multiplicity)`` pairs."""
    return [(c, len(list(run))) for c, run in itertools.groupby(u)]


def expand_blocks(blocks) -> Word:
    return "".join(c * n for c, n in blocks)


def mirror(u: Word) -> Word:
    return u[::-1]


def prefix(u: Word, k: int) -> Word:
    if not 0 <= k <= len(u):
        raise ValueError(f"prefix length {k} out of range for word of length {len(u)}")
    return u[:k]


@lru_cache(maxsize=4096)
def _all_subwords(u: Word) -> frozenset:
    subs = {""}
    for c in u:
        subs |= {s + c for s in subs}
    return frozenset(subs)


def subwords(u: Word) -> frozenset:
    """Every subword of ``u`` (no length bound).  Cached; at most 2^|u| entries."""
    return _all_subwords(u)


def subwords_upto(u: Word, n: int, max_word: int = DEFAULT_MAX_WORD, max_n: int = DEFAULT_MAX_N) -> frozenset:
    """``{w : w is a subword of u, |w| <= n}``.

    ``max_word`` and ``max_n`` guard against accidental blowup; pass larger
    values to lift them.
    """
    if n < 0:
        raise ValueError("length bound must be nonnegative")
    if len(u) > max_word or n > max_n:
        raise ValueError(f"subwords_upto limited to |u|<={max_word}, n<={max_n}")
    subs = {""}
    for c in u:
        subs |= {s + c for s in subs if len(s) < n}
    return frozenset(subs)


def canonical_sorted(words: Iterable[Word], alphabet: Optional[Alphabet] = None) -> list:
    if alphabet is None:
        return sorted(words, key=lambda w: (len(w), w))
    return sorted(words, key=alphabet.sort_key)


def find_distinguisher(u: Word, v: Word, n: int, alphabet: Optional[Alphabet] = None) -> Optional[Word]:
    """Shortest word of length <= n that is a subword of exactly one of u, v.

    Returns None when u and v have the same subwords up to length n.  Ties are
    broken by canonical order; without an alphabet, letters order by code point.
    """
    _check_same(alphabet, u, v)
    diff = subwords_upto(u, n, max_word=max(len(u), len(v), DEFAULT_MAX_WORD), max_n=max(n, DEFAULT_MAX_N)) ^ \
        subwords_upto(v, n, max_word=max(len(u), len(v), DEFAULT_MAX_WORD), max_n=max(n, DEFAULT_MAX_N))
    if not diff:
        return None
    return canonical_sorted(diff, alphabet)[0]


def simon_equivalent(u: Word, v: Word, n: int) -> bool:
    return find_distinguisher(u, v, n) is None
