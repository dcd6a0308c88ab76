"""Class-closed free monoids: pseudo-free hulls, bases, and class factorization.

A monoid M is class-closed for a relation when it contains the whole
equivalence class of each of its elements. For a free class-closed monoid
the basis is itself a union of classes, and every element factors into a
unique sequence of basis classes; that sequence is the class factorization
computed here. The pseudo-free hull of a word set is the smallest
class-closed free monoid containing it, and the pseudo-rank counts the
classes of its basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .anticongruence import Anticongruence, EqClass
from .freeness import Basis, is_code, minimal_generators, _stability_word
from .words import (
    DEFAULT_PRODUCT_LIMIT,
    FiniteLanguage,
    Word,
    WordEqError,
    factorizations,
    product,
)


class NotInMonoid(WordEqError):
    """A word lies outside the monoid generated by the basis at hand."""


@dataclass(frozen=True)
class ClassWord:
    """A word over the class alphabet: a finite sequence of equivalence classes."""

    classes: tuple[EqClass, ...]

    def __post_init__(self) -> None:
        rels = {c.rel for c in self.classes}
        if len(rels) > 1:
            raise ValueError("classes from different relations in one class word")

    def __len__(self) -> int:
        return len(self.classes)

    def __iter__(self) -> Iterator[EqClass]:
        return iter(self.classes)

    def __add__(self, other: ClassWord) -> ClassWord:
        return ClassWord(self.classes + other.classes)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.classes) + ")" if self.classes else "()"

    def language(self, limit: int = DEFAULT_PRODUCT_LIMIT) -> FiniteLanguage:
        """The set product of the member classes, c1 ⊙ c2 ⊙ ... ⊙ cm."""
        if not self.classes:
            raise ValueError("empty class word has no alphabet to build {ε} over")
        acc = FiniteLanguage.unit(self.classes[0].rep.alphabet)
        for c in self.classes:
            acc = product(acc, c.language(), limit=limit)
        return acc


@dataclass(frozen=True)
class PseudoFreeBasis:
    """Free basis of a class-closed free monoid, together with its class set.

    basis_words is a code closed under the relation's classes; classes
    holds one EqClass per basis class, sorted by representative.
    """

    rel: Anticongruence
    basis_words: Basis
    classes: tuple[EqClass, ...]

    def pseudo_rank(self) -> int:
        return len(self.classes)

    def class_of_basis_word(self, b: Word) -> EqClass:
        c = EqClass.of(self.rel, b)
        if c not in self.classes:
            raise ValueError(f"{b} is not a basis word")
        return c


def class_closure(rel: Anticongruence, words: Iterable[Word]) -> frozenset[Word]:
    """The input together with every class member of each input word.

    One pass reaches the fixpoint: members of a class all have the same
    class.
    """
    out: set[Word] = set()
    for w in words:
        out.update(Word(w.alphabet, ls) for ls in rel.class_letters(w.letters))
    return frozenset(out)


def pseudo_free_hull(rel: Anticongruence, words: Iterable[Word]) -> PseudoFreeBasis:
    """Basis and classes of the smallest class-closed free monoid containing words.

    Alternates class closure with the stability reduction of the free
    hull: class members are forced by closedness, overhang words by
    freeness, and both only add words no longer than the longest input, so
    the forced set converges.
    """
    return _pseudo_free_hull_cached(rel, frozenset(w for w in words if w.letters))


@lru_cache(maxsize=1 << 14)
def _pseudo_free_hull_cached(rel: Anticongruence, words: frozenset[Word]) -> PseudoFreeBasis:
    forced = set(words)
    while True:
        forced = set(class_closure(rel, forced))
        basis = minimal_generators(forced)
        verdict = is_code(basis)
        if verdict.is_code:
            break
        forced.add(_stability_word(verdict))

    basis_words = Basis(tuple(sorted(basis)))
    for b in basis_words:
        if not all(Word(b.alphabet, ls) in basis for ls in rel.class_letters(b.letters)):
            raise AssertionError(f"basis not class-closed at {b}")
    classes = sorted({EqClass.of(rel, b) for b in basis_words}, key=lambda c: c.rep.shortlex_key())
    return PseudoFreeBasis(rel, basis_words, tuple(classes))


def class_factorization(pfb: PseudoFreeBasis, w: Word) -> ClassWord:
    """The unique class sequence whose product contains w.

    Factorizes w over the basis (unique, the basis is a code) and maps
    each factor to its class. Raises NotInMonoid outside the monoid.
    """
    if not w.letters:
        return ClassWord(())
    facts = factorizations(w, pfb.basis_words.words)
    if not facts:
        raise NotInMonoid(f"{w} is not in the monoid of {pfb.basis_words}")
    return ClassWord(tuple(EqClass.of(pfb.rel, b) for b in facts[0]))


def factorization_is_morphism(pfb: PseudoFreeBasis, u: Word, v: Word) -> bool:
    """Whether the class factorization of u·v is the two factorizations joined."""
    return class_factorization(pfb, u + v) == class_factorization(pfb, u) + class_factorization(pfb, v)


def class_factor_stability(pfb: PseudoFreeBasis, w: Word) -> bool:
    """Whether the whole class of w sits inside the product of w's class sequence."""
    cw = class_factorization(pfb, w)
    if not cw.classes:
        return True
    lang = cw.language()
    for ls in pfb.rel.class_letters(w.letters):
        other = Word(w.alphabet, ls)
        if other not in lang or class_factorization(pfb, other) != cw:
            return False
    return True


def pseudo_rank(rel: Anticongruence, words: Iterable[Word]) -> int:
    """Number of classes in the pseudo-free basis of the hull of words."""
    return pseudo_free_hull(rel, words).pseudo_rank()
