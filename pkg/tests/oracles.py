"""Independent brute-force oracles the library is checked against.

Everything here enumerates exhaustively and stays deliberately naive:
no dangling suffixes, no stability reductions, no memoized products.
"""
from __future__ import annotations

import itertools

from wordeq import Alphabet, MorphicPermutation, Word


def brute_factorizations(w: Word, basis: list[Word]) -> list[tuple[Word, ...]]:
    """All factor tuples by plain enumeration of factor sequences."""
    if not w.letters:
        return [()]
    shortest = min(len(b) for b in basis) if basis else 1
    out = []
    for k in range(1, len(w) // max(shortest, 1) + 1):
        for combo in itertools.product(basis, repeat=k):
            letters = sum((b.letters for b in combo), ())
            if letters == w.letters:
                out.append(combo)
    return out


def brute_reachable(basis: list[Word], max_len: int) -> set[tuple[int, ...]]:
    """Letter tuples of every monoid element up to max_len, by breadth-first growth."""
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for t in frontier:
            for b in basis:
                cand = t + b.letters
                if len(cand) <= max_len and cand not in seen:
                    seen.add(cand)
                    nxt.append(cand)
        frontier = nxt
    return seen


def brute_double_factorization(basis: list[Word], max_len: int) -> Word | None:
    """Shortest (then lex least) word with two distinct factor sequences, or None.

    Counts factorization sequences of every product up to max_len with a
    forward dynamic program over reachable words.
    """
    counts: dict[tuple[int, ...], int] = {(): 1}
    frontier: dict[tuple[int, ...], int] = {(): 1}
    while frontier:
        nxt: dict[tuple[int, ...], int] = {}
        for t, c in frontier.items():
            for b in basis:
                cand = t + b.letters
                if len(cand) <= max_len:
                    nxt[cand] = nxt.get(cand, 0) + c
        for t, c in nxt.items():
            counts[t] = counts.get(t, 0) + c
        frontier = nxt
    doubles = [t for t, c in counts.items() if t and c >= 2]
    if not doubles:
        return None
    best = min(doubles, key=lambda t: (len(t), t))
    return Word(basis[0].alphabet, best)


def brute_is_code(basis: list[Word], max_len: int | None = None) -> bool:
    if not basis:
        return True
    if max_len is None:
        max_len = 2 * max(len(b) for b in basis)
    return brute_double_factorization(basis, max_len) is None


def orbit_equiv(perm: MorphicPermutation, u: Word, v: Word) -> bool:
    """v = f^i(u) for some i below the permutation order, by direct iteration."""
    if len(u) != len(v):
        return False
    cur = u
    for _ in range(perm.order()):
        if cur.letters == v.letters:
            return True
        cur = perm.apply(cur)
    return cur.letters == v.letters


def all_word_sets(alphabet: Alphabet, max_words: int, max_len: int):
    """Every set of at most max_words nonempty words of length <= max_len."""
    universe = [w for w in alphabet.words_up_to(max_len) if w.letters]
    for size in range(1, max_words + 1):
        for combo in itertools.combinations(universe, size):
            yield frozenset(combo)
