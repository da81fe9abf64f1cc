"""Noncommutative polynomials over F2.

A *word* is a tuple of generator names (the empty tuple is the unit 1), and a
*polynomial* is a frozenset of words: with F2 coefficients, addition is
symmetric difference and there is nothing else to store.
"""

from __future__ import annotations

from typing import Iterable

Word = tuple[str, ...]
Poly = frozenset  # frozenset[Word]

ZERO: Poly = frozenset()
ONE: Poly = frozenset({()})


def poly(words: Iterable[Word]) -> Poly:
    """Build a polynomial from an iterable of words, cancelling mod 2."""
    out: set[Word] = set()
    for w in words:
        w = tuple(w)
        if w in out:
            out.remove(w)
        else:
            out.add(w)
    return frozenset(out)


def padd(*ps: Poly) -> Poly:
    out: frozenset = frozenset()
    for p in ps:
        out = out.symmetric_difference(p)
    return out


def pmul(a: Poly, b: Poly) -> Poly:
    """Concatenation product, cancelling duplicate words mod 2."""
    out: set[Word] = set()
    for u in a:
        for v in b:
            w = u + v
            if w in out:
                out.remove(w)
            else:
                out.add(w)
    return frozenset(out)


def pscale_word(prefix: Word, p: Poly, suffix: Word) -> Poly:
    return frozenset(prefix + w + suffix for w in p)


def substitute(p: Poly, images: dict[str, Poly]) -> Poly:
    """Apply the algebra map sending each generator g to images[g].

    Names missing from ``images`` are sent to themselves.  Used for the
    change of coordinates g -> g + eps(g) and for chain-map evaluation.
    """
    out: Poly = ZERO
    for w in p:
        term: Poly = ONE
        for g in w:
            term = pmul(term, images.get(g, frozenset({(g,)})))
        out = padd(out, term)
    return out


def word_key(w: Word) -> tuple[int, Word]:
    """Canonical sort key: length first, then lexicographic."""
    return (len(w), w)


def sorted_words(p: Poly) -> list[Word]:
    return sorted(p, key=word_key)


def constant_part(p: Poly) -> int:
    return 1 if () in p else 0


def length_part(p: Poly, k: int) -> Poly:
    return frozenset(w for w in p if len(w) == k)


def max_word_length(p: Poly) -> int:
    return max((len(w) for w in p), default=0)


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for w in sorted_words(p):
        parts.append("1" if not w else "*".join(w))
    return " + ".join(parts)
