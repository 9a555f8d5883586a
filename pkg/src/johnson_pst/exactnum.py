"""Integer combinatorics and 2-adic helpers.

Everything here works on Python ints, so there is no overflow anywhere:
``binom(64, 32)`` and friends are exact.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

#: ord2(0). Compares greater than every int and equal only to itself.
INFINITY = math.inf


def binom(a: int, b: int) -> int:
    """C(a, b), with C(a, b) = 0 whenever b < 0, b > a or a < 0."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def ord2(x: int) -> int | float:
    """Exponent of 2 in |x|; ``INFINITY`` for x = 0."""
    if x == 0:
        return INFINITY
    x = abs(x)
    return (x & -x).bit_length() - 1


def gcd_all(xs: Iterable[int]) -> int:
    xs = list(xs)
    if not xs:
        raise ValueError("empty input")
    return math.gcd(*xs)


def dominates(b: int, a: int) -> bool:
    """True iff every binary digit of b is <= the matching digit of a."""
    return b & a == b


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def digits(x: int, base: int) -> list[int]:
    """Base-`base` digits of x >= 0, least significant first."""
    out = []
    while x:
        x, r = divmod(x, base)
        out.append(r)
    return out


def binom_mod_p(a: int, b: int, p: int) -> int:
    """C(a, b) mod p by multiplying binomials of base-p digits (Lucas)."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    result = 1
    while a or b:
        a, ai = divmod(a, p)
        b, bi = divmod(b, p)
        if bi > ai:
            return 0
        result = result * math.comb(ai, bi) % p
    return result


# ---------------------------------------------------------------------------
# Finite-range property suites. Each returns the list of counterexamples, so
# an empty list means the identity held over the whole range.


def lucas_counterexamples(limit: int = 512, primes: Sequence[int] = (2, 3, 5)) -> list[tuple]:
    bad = []
    for a in range(limit + 1):
        for b in range(a + 1):
            c = math.comb(a, b)
            for p in primes:
                if binom_mod_p(a, b, p) != c % p:
                    bad.append((a, b, p))
            if (c % 2 == 1) != dominates(b, a):
                bad.append((a, b, "dominates"))
    return bad


def parity_corollary_counterexamples(limit: int = 512) -> list[tuple]:
    """Even a, odd b must give an even binomial."""
    return [
        (a, b)
        for a in range(0, limit + 1, 2)
        for b in range(1, a + 1, 2)
        if math.comb(a, b) % 2
    ]


def vandermonde_counterexamples(limit: int = 64) -> list[tuple]:
    rows = [[binom(a, c) for c in range(2 * limit + 1)] for a in range(2 * limit + 1)]
    bad = []
    for a in range(limit + 1):
        ra = rows[a]
        for b in range(limit + 1):
            rb = rows[b]
            rab = rows[a + b]
            for c in range(limit + 1):
                s = sum(ra[l] * rb[c - l] for l in range(max(0, c - b), min(a, c) + 1))
                if s != rab[c]:
                    bad.append((a, b, c))
    return bad


def either_or_counterexamples(k_max: int = 64) -> list[tuple]:
    """For C(k,i) odd and 1 <= l <= k-i, one of C(i,l), C(k-i,l) is even."""
    bad = []
    for k in range(2, k_max + 1):
        for i in range(1, k):
            if binom(k, i) % 2 == 0:
                continue
            for l in range(1, k - i + 1):
                if binom(i, l) % 2 and binom(k - i, l) % 2:
                    bad.append((k, i, l))
    return bad


def triple_binomial_counterexamples(k_max: int = 64) -> list[tuple]:
    """For C(k,i) odd, C(k-i,l) C(i,k-i-l) C(i-2,k-i-l-2) is even."""
    bad = []
    for k in range(2, k_max + 1):
        for i in range(1, k):
            if binom(k, i) % 2 == 0:
                continue
            for l in range(k - i + 1):
                r = k - i - l
                if binom(k - i, l) * binom(i, r) * binom(i - 2, r - 2) % 2:
                    bad.append((k, i, l))
    return bad


def odd_summation(k: int, i: int) -> int:
    """Sum over even l in [0, k-i-2] of C(k-i,l) * C(i-2,k-i-l-2)**2."""
    return sum(
        binom(k - i, l) * binom(i - 2, k - i - l - 2) ** 2
        for l in range(0, k - i - 1, 2)
    )


def odd_summation_counterexamples(k_max: int = 64) -> list[tuple]:
    """For even k with C(k,i), C(k-1,i) odd, `odd_summation` is odd."""
    bad = []
    for k in range(2, k_max + 1, 2):
        for i in range(1, k):
            if binom(k, i) % 2 and binom(k - 1, i) % 2 and odd_summation(k, i) % 2 == 0:
                bad.append((k, i))
    return bad
