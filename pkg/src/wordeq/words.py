"""Alphabets, words, and finite languages under elementwise concatenation.

Words store dense symbol indices into their alphabet; the alphabet's
declaration order fixes the lexicographic order used everywhere else.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

DEFAULT_PRODUCT_LIMIT = 1_000_000


class WordEqError(Exception):
    """Base class for errors raised by this library."""


class AlphabetMismatch(WordEqError):
    """Operands belong to different alphabets."""


class ProductLimitExceeded(WordEqError):
    """A language product would exceed the configured size limit."""


class EnumerationGuardExceeded(WordEqError):
    """An exhaustive sweep would enumerate more items than allowed."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of distinct symbol names.

    Declaration order defines symbol indices and thereby the lexicographic
    order of words; symbol names play no role in comparisons.
    """

    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, symbols: Iterable[str]):
        syms = tuple(symbols)
        if not syms:
            raise ValueError("alphabet needs at least one symbol")
        for s in syms:
            if not s or any(c.isspace() for c in s):
                raise ValueError(f"bad symbol name: {s!r}")
        if len(set(syms)) != len(syms):
            raise ValueError("alphabet symbols must be distinct")
        object.__setattr__(self, "symbols", syms)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(syms)})

    def __len__(self) -> int:
        return len(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None

    def word(self, text: str | Sequence[str] = "") -> Word:
        """Build a word from a string (single-character symbols) or a symbol sequence.

        A string is split into characters when every alphabet symbol is a
        single character, otherwise on whitespace.
        """
        if isinstance(text, str):
            if all(len(s) == 1 for s in self.symbols):
                parts: Sequence[str] = [c for c in text if not c.isspace()]
            else:
                parts = text.split()
        else:
            parts = text
        return Word(self, tuple(self.index(p) for p in parts))

    def epsilon(self) -> Word:
        return Word(self, ())

    def words_of_length(self, n: int) -> Iterator[Word]:
        """All words of length n in lexicographic order."""
        k = len(self.symbols)
        if n == 0:
            yield Word(self, ())
            return
        letters = [0] * n
        while True:
            yield Word(self, tuple(letters))
            i = n - 1
            while i >= 0 and letters[i] == k - 1:
                letters[i] = 0
                i -= 1
            if i < 0:
                return
            letters[i] += 1

    def words_up_to(self, max_len: int) -> Iterator[Word]:
        """All words of length 0..max_len in shortlex order."""
        for n in range(max_len + 1):
            yield from self.words_of_length(n)


@dataclass(frozen=True)
class Word:
    """Finite sequence of symbol indices over an alphabet; () is the empty word."""

    alphabet: Alphabet
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        k = len(self.alphabet)
        for i in self.letters:
            if not 0 <= i < k:
                raise ValueError(f"letter index {i} out of range for alphabet of size {k}")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __getitem__(self, item: int | slice) -> Word:
        if isinstance(item, slice):
            return Word(self.alphabet, self.letters[item])
        return Word(self.alphabet, (self.letters[item],))

    def __add__(self, other: Word) -> Word:
        return concat(self, other)

    def __lt__(self, other: Word) -> bool:
        _require_same_alphabet(self, other)
        return self.letters < other.letters

    def __le__(self, other: Word) -> bool:
        _require_same_alphabet(self, other)
        return self.letters <= other.letters

    def __str__(self) -> str:
        syms = self.alphabet.symbols
        if not self.letters:
            return "ε"
        if all(len(s) == 1 for s in syms):
            return "".join(syms[i] for i in self.letters)
        return " ".join(syms[i] for i in self.letters)

    def __repr__(self) -> str:
        return f"Word({self})"

    def reverse(self) -> Word:
        return Word(self.alphabet, self.letters[::-1])

    def shortlex_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.letters), self.letters)


def _require_same_alphabet(u: Word | FiniteLanguage, v: Word | FiniteLanguage) -> None:
    if u.alphabet != v.alphabet:
        raise AlphabetMismatch(f"mixed alphabets: {u.alphabet.symbols} vs {v.alphabet.symbols}")


def concat(u: Word, v: Word) -> Word:
    """Concatenation u·v."""
    _require_same_alphabet(u, v)
    return Word(u.alphabet, u.letters + v.letters)


def split(w: Word, i: int) -> tuple[Word, Word]:
    """Cut w into (prefix of length i, remaining suffix)."""
    if not 0 <= i <= len(w):
        raise ValueError(f"cut position {i} out of range for word of length {len(w)}")
    return Word(w.alphabet, w.letters[:i]), Word(w.alphabet, w.letters[i:])


@dataclass(frozen=True)
class FiniteLanguage:
    """Duplicate-free, lexicographically sorted set of words over one alphabet.

    The sorted tuple is the canonical form; two languages are equal iff
    their canonical forms are.
    """

    alphabet: Alphabet
    words: tuple[Word, ...]

    @classmethod
    def of(cls, alphabet: Alphabet, words: Iterable[Word] = ()) -> FiniteLanguage:
        ws = []
        for w in words:
            if w.alphabet != alphabet:
                raise AlphabetMismatch("word from a different alphabet")
            ws.append(w)
        dedup = sorted({w.letters for w in ws})
        return cls(alphabet, tuple(Word(alphabet, ls) for ls in dedup))

    @classmethod
    def unit(cls, alphabet: Alphabet) -> FiniteLanguage:
        """The language {ε}, the unit of the product."""
        return cls.of(alphabet, [alphabet.epsilon()])

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, w: Word) -> bool:
        return isinstance(w, Word) and w.alphabet == self.alphabet and w in self.words

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.words) + "}"


def product(
    k: FiniteLanguage, l: FiniteLanguage, limit: int = DEFAULT_PRODUCT_LIMIT
) -> FiniteLanguage:
    """Elementwise concatenation {u·v | u in K, v in L}, canonicalized."""
    _require_same_alphabet(k, l)
    if len(k) * len(l) > limit:
        raise ProductLimitExceeded(f"product of {len(k)} x {len(l)} words exceeds limit {limit}")
    combined = sorted({u.letters + v.letters for u in k.words for v in l.words})
    return FiniteLanguage(k.alphabet, tuple(Word(k.alphabet, ls) for ls in combined))


def factorizations(w: Word, basis: Iterable[Word]) -> list[tuple[Word, ...]]:
    """All ways to write w as a product of basis words.

    Results are ordered lexicographically by the index sequence of factors
    into the sorted basis. Empty list means w is outside the generated
    monoid; factorizing ε yields the single empty sequence.
    """
    bs = sorted({b.letters for b in basis})
    if () in bs:
        raise ValueError("empty word not allowed in a factorization basis")
    target = w.letters
    n = len(target)
    # starts[i] = basis indices whose word matches target at position i
    starts: list[list[int]] = [[] for _ in range(n)]
    for bi, b in enumerate(bs):
        m = len(b)
        for i in range(n - m + 1):
            if target[i : i + m] == b:
                starts[i].append(bi)

    out: list[tuple[Word, ...]] = []
    stack: list[int] = []

    def walk(pos: int) -> None:
        if pos == n:
            out.append(tuple(Word(w.alphabet, bs[bi]) for bi in stack))
            return
        for bi in starts[pos]:
            stack.append(bi)
            walk(pos + len(bs[bi]))
            stack.pop()

    walk(0)
    return out


def is_in_monoid(w: Word, basis: Iterable[Word]) -> bool:
    """Membership of w in the monoid generated by basis (reachability check)."""
    bs = sorted({b.letters for b in basis if b.letters})
    target = w.letters
    n = len(target)
    reach = [False] * (n + 1)
    reach[0] = True
    for i in range(n):
        if not reach[i]:
            continue
        for b in bs:
            j = i + len(b)
            if j <= n and target[i:j] == b:
                reach[j] = True
    return reach[n]
