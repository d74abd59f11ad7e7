"""Words, necklaces and bracelets over the alphabet {0, ..., n-1}.

Canonical representatives are lexicographic minima over the orbit: rotations
for necklaces, rotations and reversals for bracelets.  Counting functions
implement the Polya-type closed forms and are kept independent of the
enumeration code so that each can check the other.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Word = tuple[int, ...]


def as_word(letters: Iterable[int] | str) -> Word:
    """Coerce a string such as ``"0101"`` or an iterable of ints to a word."""
    if isinstance(letters, str):
        return tuple(int(ch) for ch in letters)
    return tuple(int(x) for x in letters)


def word_str(w: Sequence[int]) -> str:
    # digits only make sense for n <= 10, which is all we support
    return "".join(str(x) for x in w)


def weight(w: Sequence[int], n: int) -> tuple[int, ...]:
    counts = [0] * n
    for x in w:
        if not 0 <= x < n:
            raise ValueError(f"letter {x} outside alphabet [{n}]")
        counts[x] += 1
    return tuple(counts)


def rotations(w: Sequence[int]) -> list[Word]:
    w = tuple(w)
    return [w[i:] + w[:i] for i in range(len(w))] or [()]


def canonical_necklace(w: Sequence[int]) -> Word:
    return min(rotations(w))


def canonical_bracelet(w: Sequence[int]) -> Word:
    w = tuple(w)
    return min(canonical_necklace(w), canonical_necklace(w[::-1]))


def _check_weight(n: int, d: int, lam: Sequence[int] | None) -> tuple[int, ...] | None:
    if lam is None:
        return None
    lam = tuple(int(x) for x in lam)
    if len(lam) != n or any(x < 0 for x in lam) or sum(lam) != d:
        raise ValueError(f"weight {lam} inconsistent with n={n}, d={d}")
    return lam


def _words_of_weight(lam: tuple[int, ...]) -> Iterable[Word]:
    # distinct permutations of the multiset, in lexicographic order
    d = sum(lam)
    counts = list(lam)
    prefix: list[int] = []

    def rec():
        if len(prefix) == d:
            yield tuple(prefix)
            return
        for s, c in enumerate(counts):
            if c:
                counts[s] -= 1
                prefix.append(s)
                yield from rec()
                prefix.pop()
                counts[s] += 1

    yield from rec()


def _enumerate(n: int, d: int, lam, canon) -> list[Word]:
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")
    lam = _check_weight(n, d, lam)
    if lam is None:
        source: Iterable[Word] = itertools.product(range(n), repeat=d)
    else:
        source = _words_of_weight(lam)
    # a word is its own class representative iff it equals its canonical form
    return sorted(w for w in source if canon(w) == w)


def enumerate_necklaces(n: int, d: int, lam: Sequence[int] | None = None) -> list[Word]:
    """Canonical necklace representatives of length ``d`` over ``[n]``, sorted."""
    return _enumerate(n, d, lam, canonical_necklace)


@lru_cache(maxsize=256)
def _bracelets_cached(n: int, d: int, lam: tuple[int, ...] | None) -> tuple[Word, ...]:
    return tuple(_enumerate(n, d, lam, canonical_bracelet))


def enumerate_bracelets(n: int, d: int, lam: Sequence[int] | None = None) -> list[Word]:
    """Canonical bracelet representatives of length ``d`` over ``[n]``, sorted.

    If ``lam`` is given only bracelets of that weight are returned.
    """
    key = None if lam is None else tuple(int(x) for x in lam)
    return list(_bracelets_cached(n, d, key))


def binary_weight(d: int, w: int) -> tuple[int, int]:
    """Weight vector for a binary word of length d with ``w`` ones."""
    if not 0 <= w <= d:
        raise ValueError(f"need 0 <= w <= d, got w={w}, d={d}")
    return (d - w, w)


def totient(k: int) -> int:
    result = k
    p = 2
    m = k
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(k: int) -> list[int]:
    return [l for l in range(1, k + 1) if k % l == 0]


def _check_nd(n: int, d: int) -> None:
    if n < 1 or d < 0:
        raise ValueError(f"need n >= 1 and d >= 0, got n={n}, d={d}")


def count_necklaces(n: int, d: int) -> int:
    _check_nd(n, d)
    if d == 0:
        return 1
    total = sum(totient(l) * n ** (d // l) for l in _divisors(d))
    assert total % d == 0
    return total // d


def count_bracelets(n: int, d: int) -> int:
    _check_nd(n, d)
    if d == 0:
        return 1
    half = Fraction(count_necklaces(n, d), 2)
    if d % 2 == 0:
        value = half + Fraction((n + 1) * n ** (d // 2), 4)
    else:
        # odd d: every reflection fixes one bead, so the term is n^((d+1)/2) / 2
        value = half + Fraction(n ** ((d + 1) // 2), 2)
    assert value.denominator == 1
    return int(value)


def count_necklaces_weight(n: int, d: int, lam: Sequence[int]) -> int:
    """Number of necklaces of weight ``lam``.

    Coefficient of x^lam in (1/d) sum_{l | d} phi(d/l) (x_0^{d/l} + ... )^l.
    Expanding the power sum, the coefficient of x^lam in (sum x_i^{q})^l is the
    multinomial l! / prod (lam_i/q)! when q divides every lam_i, else 0.
    """
    lam = _check_weight(n, d, lam)
    if d == 0:
        return 1
    total = 0
    for l in _divisors(d):
        q = d // l
        if any(x % q for x in lam):
            continue
        coeff = math.factorial(l)
        for x in lam:
            coeff //= math.factorial(x // q)
        total += totient(q) * coeff
    assert total % d == 0
    return total // d


def count_bracelets_weight_binary(d: int, w: int) -> int:
    """Number of binary bracelets of length ``d`` with ``w`` copies of one letter."""
    if not 0 <= w <= d:
        raise ValueError(f"need 0 <= w <= d, got w={w}, d={d}")
    if d == 0:
        return 1
    g = math.gcd(d, w)
    value = Fraction(sum(totient(l) * math.comb(d // l, w // l) for l in _divisors(g)), 2 * d)
    # reflection term: the closed form is stated for even d; for odd d every
    # reflection fixes exactly one bead, giving C((d-1)/2, floor(w/2))
    if d % 2 == 1:
        value += Fraction(math.comb(d // 2, w // 2), 2)
    elif w % 2 == 1:
        value += Fraction(math.comb(d // 2 - 1, (w - 1) // 2), 2)
    else:
        value += Fraction(math.comb(d // 2, w // 2), 2)
    assert value.denominator == 1, (d, w, value)
    return int(value)
