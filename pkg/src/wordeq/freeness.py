"""Free-monoid machinery: code testing, minimal generators, hulls and rank.

is_code runs the Sardinas-Patterson dangling-suffix procedure, extended to
reconstruct the shortest doubly-factorizable word when the test fails. The
free hull is computed by the classical stability reduction; hull_oracle is
an independent brute-force cross-check that intersects the monoids of all
covering codes drawn from the factor universe.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .words import EnumerationGuardExceeded, Word, is_in_monoid


@dataclass(frozen=True)
class CodeVerdict:
    """Outcome of a code test.

    When the set is not a code, witness is the shortest (then
    lexicographically least) word with two factorizations, and the two
    factor sequences differ in their first factor.
    """

    is_code: bool
    witness: Optional[Word] = None
    factorization_a: Optional[tuple[Word, ...]] = None
    factorization_b: Optional[tuple[Word, ...]] = None

    def __bool__(self) -> bool:
        return self.is_code


@dataclass(frozen=True)
class Basis:
    """Duplicate-free set of nonempty words that is a code and a minimal generating set."""

    words: tuple[Word, ...]

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def __str__(self) -> str:
        return "{" + ", ".join(str(w) for w in self.words) + "}"


def _canonical_words(words: Iterable[Word]) -> frozenset[Word]:
    out = set()
    for w in words:
        if not w.letters:
            raise ValueError("the empty word is not allowed here")
        out.add(w)
    return frozenset(out)


def is_code(words: Iterable[Word]) -> CodeVerdict:
    """Decide whether the set freely generates its monoid (Sardinas-Patterson)."""
    return _is_code_cached(_canonical_words(words))


@lru_cache(maxsize=1 << 16)
def _is_code_cached(words: frozenset[Word]) -> CodeVerdict:
    bs = sorted(w.letters for w in words)
    if len(bs) <= 1:
        return CodeVerdict(True)
    alphabet = next(iter(words)).alphabet
    against = set(bs)

    # Dijkstra over dangling suffixes. A state is the overhang by which one
    # factorization runs ahead of the other; the priority (length, prefix)
    # makes the first completion the shortest, lexicographically least
    # doubly-factorizable word.
    heap: list[tuple[int, tuple[int, ...], int, tuple[int, ...], tuple, tuple]] = []
    tick = itertools.count()
    for b in bs:
        for c in bs:
            if b != c and len(b) < len(c) and c[: len(b)] == b:
                z = c[len(b) :]
                heapq.heappush(heap, (len(c), c, next(tick), z, (b,), (c,)))
    seen: set[tuple[int, ...]] = set()
    while heap:
        cost, longer, _, z, short_fs, long_fs = heapq.heappop(heap)
        if z in against:
            wit = Word(alphabet, longer)
            fa = tuple(Word(alphabet, f) for f in short_fs + (z,))
            fb = tuple(Word(alphabet, f) for f in long_fs)
            if fa[0].letters > fb[0].letters:
                fa, fb = fb, fa
            return CodeVerdict(False, wit, fa, fb)
        if z in seen:
            continue
        seen.add(z)
        nz = len(z)
        for u in bs:
            if len(u) < nz and z[: len(u)] == u:
                heapq.heappush(
                    heap, (cost, longer, next(tick), z[len(u) :], short_fs + (u,), long_fs)
                )
            elif len(u) > nz and u[:nz] == z:
                tail = u[nz:]
                heapq.heappush(
                    heap,
                    (cost + len(tail), longer + tail, next(tick), tail, long_fs, short_fs + (u,)),
                )
    return CodeVerdict(True)


def minimal_generators(words: Iterable[Word]) -> frozenset[Word]:
    """Drop every word expressible as a product of two or more of the others.

    ε is dropped outright; the result generates the same monoid.
    """
    pool = frozenset(w for w in words if w.letters)
    bs = sorted({w.letters for w in pool})
    out = set()
    for w in pool:
        target = w.letters
        n = len(target)
        # in_monoid[i]: the suffix target[i:] is a product of pool words
        in_monoid = [False] * (n + 1)
        in_monoid[n] = True
        for i in range(n - 1, -1, -1):
            in_monoid[i] = any(
                len(b) <= n - i and target[i : i + len(b)] == b and in_monoid[i + len(b)]
                for b in bs
            )
        redundant = any(
            len(b) < n and target[: len(b)] == b and in_monoid[len(b)] for b in bs
        )
        if not redundant:
            out.add(w)
    return frozenset(out)


def _stability_word(verdict: CodeVerdict) -> Word:
    """Overhang z of the witness's two first factors (shorter·z = longer)."""
    fa = verdict.factorization_a[0]
    fb = verdict.factorization_b[0]
    shorter, longer = (fa, fb) if len(fa) < len(fb) else (fb, fa)
    assert longer.letters[: len(shorter)] == shorter.letters
    return Word(longer.alphabet, longer.letters[len(shorter) :])


def free_hull(words: Iterable[Word]) -> Basis:
    """Basis of the smallest free monoid containing the given words.

    Repeatedly reduces to minimal generators and, while the candidate is
    not a code, adjoins the overhang of the witness's diverging first
    factors; the overhang lies in every free monoid containing the set, so
    the loop converges to the hull.
    """
    return _free_hull_cached(frozenset(w for w in words if w.letters))


@lru_cache(maxsize=1 << 14)
def _free_hull_cached(words: frozenset[Word]) -> Basis:
    forced = set(words)
    while True:
        basis = minimal_generators(forced)
        verdict = is_code(basis)
        if verdict.is_code:
            return Basis(tuple(sorted(basis)))
        forced.add(_stability_word(verdict))


def rank(words: Iterable[Word]) -> int:
    """Size of the free hull basis."""
    return len(free_hull(words))


def _all_factors(words: Iterable[Word]) -> list[Word]:
    out = set()
    for w in words:
        ls = w.letters
        for i in range(len(ls)):
            for j in range(i + 1, len(ls) + 1):
                out.add(ls[i:j])
    alphabet = next(iter(words)).alphabet
    return [Word(alphabet, ls) for ls in sorted(out, key=lambda t: (len(t), t))]


def _monoid_slice(basis: list[Word], max_len: int) -> frozenset[tuple[int, ...]]:
    """All letter tuples of length <= max_len in the monoid generated by basis."""
    frontier = [()]
    seen = {()}
    while frontier:
        nxt = []
        for w in frontier:
            for b in basis:
                cand = w + b.letters
                if len(cand) <= max_len and cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return frozenset(seen)


def hull_oracle(words: Iterable[Word], max_factors: int = 16) -> Basis:
    """Brute-force free hull for validation.

    Enumerates codes inside the factor universe of the input that generate
    a monoid containing it, intersects their monoids on the slice of
    lengths up to the longest input word, and reads the basis off as the
    minimal generators of the intersection. Supersets of a covering code
    are skipped: their monoids only grow, so they cannot shrink the
    intersection; supersets of a non-code are skipped because they are not
    codes either.
    """
    xs = sorted({w for w in words if w.letters})
    if not xs:
        return Basis(())
    alphabet = xs[0].alphabet
    factors = _all_factors(xs)
    if len(factors) > max_factors:
        raise EnumerationGuardExceeded(
            f"factor universe of size {len(factors)} exceeds oracle guard {max_factors}"
        )
    max_len = max(len(x) for x in xs)

    def covers(basis: list[Word]) -> bool:
        return all(is_in_monoid(x, basis) for x in xs)

    slices: list[frozenset[tuple[int, ...]]] = []

    def search(i: int, chosen: list[Word]) -> None:
        if not covers(chosen + factors[i:]):
            return
        if i == len(factors):
            return
        kept = factors[i]
        chosen.append(kept)
        if is_code(chosen).is_code:
            if covers(chosen):
                slices.append(_monoid_slice(chosen, max_len))
            else:
                search(i + 1, chosen)
        chosen.pop()
        search(i + 1, chosen)

    search(0, [])
    assert slices, "the single letters of the input always form a covering code"
    inter = frozenset.intersection(*slices)

    members = inter - {()}
    basis = []
    for t in sorted(members):
        if not any(t[:k] in members and t[k:] in members for k in range(1, len(t))):
            basis.append(Word(alphabet, t))
    return Basis(tuple(sorted(basis)))
