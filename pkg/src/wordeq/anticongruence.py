"""Length-preserving equivalences on words that split along every cut.

An anticongruence is an equivalence on Σ* such that equivalent words have
equal length, and whenever u·v is equivalent to u'·v' with |u| = |u'|, the
pieces u, u' and v, v' are equivalent as well. Three kinds are supported:
plain equality, orbits of a morphic permutation, and finite pair tables
closed under cutting.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .words import (
    Alphabet,
    AlphabetMismatch,
    EnumerationGuardExceeded,
    FiniteLanguage,
    Word,
)

DEFAULT_WORD_GUARD = 2_000


class Anticongruence:
    """Base interface: equivalence queries plus finite class materialization."""

    kind = "abstract"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def equiv(self, u: Word, v: Word) -> bool:
        raise NotImplementedError

    def class_letters(self, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        """Sorted letter tuples of the full class of a word, as raw tuples."""
        raise NotImplementedError

    def class_of(self, u: Word) -> FiniteLanguage:
        """The full equivalence class [u] as a language; always finite here."""
        self._check(u)
        members = self.class_letters(u.letters)
        return FiniteLanguage(self.alphabet, tuple(Word(self.alphabet, ls) for ls in members))

    def canonical(self, u: Word) -> Word:
        """Lexicographically least member of [u]."""
        self._check(u)
        return Word(self.alphabet, self.class_letters(u.letters)[0])

    def _check(self, *words: Word) -> None:
        for w in words:
            if w.alphabet != self.alphabet:
                raise AlphabetMismatch("word from a different alphabet than the relation")

    def describe(self) -> str:
        return self.kind


class Identity(Anticongruence):
    """Equality of words, the trivial anticongruence."""

    kind = "identity"

    def equiv(self, u: Word, v: Word) -> bool:
        self._check(u, v)
        return u.letters == v.letters

    def class_letters(self, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        return (letters,)


class MorphicPermutation(Anticongruence):
    """Orbit equivalence of the letterwise extension of an alphabet permutation.

    u ~ v iff v = f^i(u) for some i >= 0; classes are orbits and class sizes
    divide the lcm of the cycle lengths of the letters involved.
    """

    kind = "permutation"

    def __init__(self, alphabet: Alphabet, mapping: Iterable[int]):
        super().__init__(alphabet)
        m = tuple(mapping)
        if sorted(m) != list(range(len(alphabet))):
            raise ValueError("mapping is not a permutation of the alphabet indices")
        self.mapping = m
        self._class_cache: dict[tuple[int, ...], tuple[tuple[int, ...], ...]] = {}

    @classmethod
    def from_cycles(cls, alphabet: Alphabet, text: str) -> MorphicPermutation:
        """Parse cycle notation like "(a b)(c)"; fixed points may be omitted."""
        mapping = list(range(len(alphabet)))
        body = text.strip()
        if not re.fullmatch(r"(\s*\([^()]*\)\s*)*", body):
            raise ValueError(f"bad cycle notation: {text!r}")
        seen: set[int] = set()
        for cyc in re.findall(r"\(([^()]*)\)", body):
            idxs = [alphabet.index(s) for s in cyc.split()]
            if len(set(idxs)) != len(idxs):
                raise ValueError(f"repeated symbol inside cycle ({cyc})")
            if seen.intersection(idxs):
                raise ValueError(f"symbol appears in two cycles: ({cyc})")
            seen.update(idxs)
            for pos, i in enumerate(idxs):
                mapping[i] = idxs[(pos + 1) % len(idxs)]
        return cls(alphabet, mapping)

    def cycles(self) -> list[list[int]]:
        out, done = [], set()
        for start in range(len(self.mapping)):
            if start in done:
                continue
            cyc = [start]
            done.add(start)
            nxt = self.mapping[start]
            while nxt != start:
                cyc.append(nxt)
                done.add(nxt)
                nxt = self.mapping[nxt]
            out.append(cyc)
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles()))

    def apply_letters(self, letters: tuple[int, ...]) -> tuple[int, ...]:
        m = self.mapping
        return tuple(m[i] for i in letters)

    def apply(self, w: Word) -> Word:
        self._check(w)
        return Word(self.alphabet, self.apply_letters(w.letters))

    def equiv(self, u: Word, v: Word) -> bool:
        self._check(u, v)
        if len(u) != len(v):
            return False
        return v.letters in self.class_letters(u.letters)

    def class_letters(self, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        cached = self._class_cache.get(letters)
        if cached is not None:
            return cached
        orbit = {letters}
        cur = self.apply_letters(letters)
        while cur != letters:
            orbit.add(cur)
            cur = self.apply_letters(cur)
        members = tuple(sorted(orbit))
        for m in members:
            self._class_cache[m] = members
        return members

    def describe(self) -> str:
        syms = self.alphabet.symbols
        parts = ["(" + " ".join(syms[i] for i in c) + ")" for c in self.cycles()]
        return "permutation: " + "".join(parts)


class FiniteTable(Anticongruence):
    """Anticongruence given by a finite, cut-closed table of nontrivial pairs.

    Outside the table, words are equivalent only to themselves. Use
    close_pairs to build the smallest such relation from generator pairs.
    """

    kind = "table"

    def __init__(self, alphabet: Alphabet, pairs: Iterable[tuple[tuple[int, ...], tuple[int, ...]]]):
        super().__init__(alphabet)
        self.pairs = frozenset(
            (min(a, b), max(a, b)) for a, b in pairs if a != b
        )
        members: dict[tuple[int, ...], set[tuple[int, ...]]] = {}
        for a, b in self.pairs:
            members.setdefault(a, {a}).add(b)
            members.setdefault(b, {b}).add(a)
        self._members = {w: tuple(sorted(s)) for w, s in members.items()}

    def equiv(self, u: Word, v: Word) -> bool:
        self._check(u, v)
        a, b = u.letters, v.letters
        return a == b or (min(a, b), max(a, b)) in self.pairs

    def class_letters(self, letters: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        return self._members.get(letters, (letters,))

    def nontrivial_classes(self) -> list[FiniteLanguage]:
        """The classes with more than one member, sorted by least member."""
        reps = sorted({members[0] for members in self._members.values()})
        return [
            FiniteLanguage(self.alphabet, tuple(Word(self.alphabet, ls) for ls in self._members[r]))
            for r in reps
        ]

    def describe(self) -> str:
        shown = sorted(self.pairs)
        alpha = self.alphabet
        return "table: " + ", ".join(
            f"{Word(alpha, a)}~{Word(alpha, b)}" for a, b in shown
        )


def close_pairs(alphabet: Alphabet, pairs: Iterable[tuple[Word, Word]]) -> FiniteTable:
    """Smallest anticongruence containing the given length-matched pairs.

    Iterates symmetric-transitive closure per length stratum together with
    cut-splitting (each pair contributes its prefix and suffix pairs at
    every cut) until a fixpoint. All generated words are factors of input
    words, so the closure is finite.
    """
    table: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
    for u, v in pairs:
        if u.alphabet != alphabet or v.alphabet != alphabet:
            raise AlphabetMismatch("pair over a different alphabet")
        if len(u) != len(v):
            raise ValueError(f"length-mismatched pair ({u}, {v})")
        if u.letters != v.letters:
            table.add((min(u.letters, v.letters), max(u.letters, v.letters)))

    while True:
        # splits at every cut, nontrivial pairs only
        new = set()
        for a, b in table:
            for i in range(1, len(a)):
                for pa, pb in ((a[:i], b[:i]), (a[i:], b[i:])):
                    if pa != pb:
                        new.add((min(pa, pb), max(pa, pb)))
        new -= table

        # transitive closure within each length stratum (union-find)
        parent: dict[tuple[int, ...], tuple[int, ...]] = {}

        def find(x: tuple[int, ...]) -> tuple[int, ...]:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in table | new:
            parent.setdefault(a, a)
            parent.setdefault(b, b)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
        groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
        for x in parent:
            groups.setdefault(find(x), []).append(x)
        closed = set()
        for members in groups.values():
            members.sort()
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    closed.add((a, b))
        if closed == table:
            return FiniteTable(alphabet, table)
        table = closed


@dataclass(frozen=True)
class EqClass:
    """An equivalence class, stored as relation handle plus canonical representative.

    The representative is the lexicographically least member; classes under
    the same relation are equal iff their representatives are. All members
    share the representative's length.
    """

    rel: Anticongruence
    rep: Word

    @classmethod
    def of(cls, rel: Anticongruence, w: Word) -> EqClass:
        return cls(rel, rel.canonical(w))

    def language(self) -> FiniteLanguage:
        return self.rel.class_of(self.rep)

    def members(self) -> tuple[Word, ...]:
        return self.language().words

    def __len__(self) -> int:
        return len(self.rel.class_letters(self.rep.letters))

    def __contains__(self, w: Word) -> bool:
        return w.letters in self.rel.class_letters(self.rep.letters)

    def __lt__(self, other: EqClass) -> bool:
        return self.rep.shortlex_key() < other.rep.shortlex_key()

    def __str__(self) -> str:
        return f"[{self.rep}]"


class RawRelation:
    """Pair predicate adapter for axiom checking only.

    Deliberately not an Anticongruence: relations built this way (e.g.
    reversal) may violate the cutting condition and must stay out of hull
    and equation computations.
    """

    kind = "raw"

    def __init__(self, alphabet: Alphabet, predicate: Callable[[Word, Word], bool], name: str = "raw"):
        self.alphabet = alphabet
        self.predicate = predicate
        self.name = name

    def equiv(self, u: Word, v: Word) -> bool:
        return u.letters == v.letters or self.predicate(u, v)

    def describe(self) -> str:
        return self.name


def reversal_relation(alphabet: Alphabet) -> RawRelation:
    """u ~ v iff v is u reversed; fails the cutting condition on any |Σ| >= 2."""
    return RawRelation(alphabet, lambda u, v: v.letters == u.letters[::-1], name="reversal")


@dataclass(frozen=True)
class AxiomViolation:
    """First failure found by verify_axioms, with the witnessing words.

    kind is one of reflexivity, symmetry, length, transitivity, cut.
    For cut violations the pair (u, v) is equivalent but its pieces at
    position cut are not; for transitivity, via is the middle word.
    """

    kind: str
    u: Word
    v: Word
    cut: Optional[int] = None
    via: Optional[Word] = None

    def __str__(self) -> str:
        if self.kind == "cut":
            return f"cut condition fails: {self.u} ~ {self.v} but pieces at cut {self.cut} are not equivalent"
        if self.kind == "transitivity":
            return f"transitivity fails at ({self.u}, {self.via}, {self.v})"
        return f"{self.kind} fails at ({self.u}, {self.v})"


def verify_axioms(
    rel: Anticongruence | RawRelation,
    max_len: int,
    word_guard: int = DEFAULT_WORD_GUARD,
) -> Optional[AxiomViolation]:
    """Exhaustively check the anticongruence axioms on words up to max_len.

    Scans strata in increasing length with lexicographic tie order, so the
    returned first violation is deterministic. None means every check
    passed on the bounded support.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    alphabet = rel.alphabet
    k = len(alphabet)
    total = sum(k**n for n in range(max_len + 1))
    if total > word_guard:
        raise EnumerationGuardExceeded(
            f"{total} words up to length {max_len} exceed the guard of {word_guard}"
        )

    strata = [list(alphabet.words_of_length(n)) for n in range(max_len + 1)]

    # length preservation across strata
    all_words = [w for stratum in strata for w in stratum]
    for u in all_words:
        for v in all_words:
            if len(u) != len(v) and rel.equiv(u, v):
                return AxiomViolation("length", u, v)

    for stratum in strata:
        classes = {w: frozenset(v for v in stratum if rel.equiv(w, v)) for w in stratum}
        for u in stratum:
            if u not in classes[u]:
                return AxiomViolation("reflexivity", u, u)
        for u in stratum:
            for v in sorted(classes[u]):
                if u not in classes[v]:
                    return AxiomViolation("symmetry", u, v)
        for u in stratum:
            for v in sorted(classes[u]):
                if classes[v] != classes[u]:
                    w = min(classes[v].symmetric_difference(classes[u]))
                    return AxiomViolation("transitivity", u, w, via=v)
        for u in stratum:
            for v in sorted(classes[u]):
                if v.letters <= u.letters:
                    continue
                for i in range(1, len(u)):
                    if not (rel.equiv(u[:i], v[:i]) and rel.equiv(u[i:], v[i:])):
                        return AxiomViolation("cut", u, v, cut=i)
    return None


def parse_relation(alphabet: Alphabet, text: str) -> Anticongruence | RawRelation:
    """Parse the relation syntax used in CLI configs.

    Accepted forms: "identity"; "permutation: (a b)(c)" in cycle notation;
    "table: a~c, ab~cb" as comma-separated generator pairs; "reversal"
    (axiom checking only).
    """
    body = text.strip()
    if body == "identity":
        return Identity(alphabet)
    if body == "reversal":
        return reversal_relation(alphabet)
    if body.startswith("permutation:"):
        return MorphicPermutation.from_cycles(alphabet, body[len("permutation:") :])
    if body.startswith("table:"):
        pairs = []
        pair_text = body[len("table:") :].strip()
        if pair_text:
            for chunk in pair_text.split(","):
                halves = chunk.split("~")
                if len(halves) != 2:
                    raise ValueError(f"bad table pair: {chunk.strip()!r}")
                pairs.append((alphabet.word(halves[0].strip()), alphabet.word(halves[1].strip())))
        return close_pairs(alphabet, pairs)
    raise ValueError(f"unknown relation syntax: {text!r}")
