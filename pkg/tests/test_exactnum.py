import math

import pytest
from hypothesis import given, strategies as st

from johnson_pst.exactnum import (
    INFINITY,
    binom,
    binom_mod_p,
    dominates,
    either_or_counterexamples,
    gcd_all,
    lucas_counterexamples,
    odd_summation,
    odd_summation_counterexamples,
    ord2,
    parity_corollary_counterexamples,
    triple_binomial_counterexamples,
    vandermonde_counterexamples,
)


def pascal(rows):
    """Independent binomial table built by additions only."""
    t = [[1]]
    for a in range(1, rows + 1):
        prev = t[-1]
        t.append([1] + [prev[b - 1] + prev[b] for b in range(1, a)] + [1])
    return t


PASCAL = pascal(80)


def ord2_by_division(x):
    if x == 0:
        return INFINITY
    x, t = abs(x), 0
    while x % 2 == 0:
        x //= 2
        t += 1
    return t


@pytest.mark.parametrize("a,b,expected", [(4, 2, 6), (6, 3, 20), (1, -1, 0), (2, 3, 0), (-1, 0, 0), (0, 0, 1)])
def test_binom_examples(a, b, expected):
    assert binom(a, b) == expected


def test_binom_matches_pascal():
    for a, row in enumerate(PASCAL):
        for b in range(-2, a + 3):
            assert binom(a, b) == (row[b] if 0 <= b <= a else 0)


def test_binom_is_big():
    assert binom(64, 32) == PASCAL[64][32]
    # first central binomial past the unsigned 64-bit range
    assert binom(68, 34) == PASCAL[68][34] > 2 ** 64 > binom(66, 33)


@pytest.mark.parametrize("x,expected", [(12, 2), (0, INFINITY), (-6, 1), (1, 0), (-1, 0), (2 ** 100, 100)])
def test_ord2_examples(x, expected):
    assert ord2(x) == expected


def test_infinity_ordering():
    assert ord2(0) > 10 ** 100
    assert ord2(0) == ord2(0)
    assert ord2(0) != 10 ** 6


@given(st.integers(min_value=-10 ** 30, max_value=10 ** 30))
def test_ord2_matches_division(x):
    assert ord2(x) == ord2_by_division(x)


@pytest.mark.parametrize("xs,expected", [([12, 10, 6], 2), ([0, 0], 0), ([7], 7), ([-4, 6], 2)])
def test_gcd_all(xs, expected):
    assert gcd_all(xs) == expected


def test_gcd_all_empty():
    with pytest.raises(ValueError, match="empty input"):
        gcd_all([])


@pytest.mark.parametrize("b,a,expected", [(1, 3, True), (2, 5, False), (0, 0, True), (0, 77, True), (5, 7, True)])
def test_dominates(b, a, expected):
    assert dominates(b, a) is expected


@pytest.mark.parametrize("a,b,p,expected", [(7, 2, 3, 0), (6, 3, 2, 0), (9, 0, 5, 1), (10, 3, 7, 1)])
def test_binom_mod_p_examples(a, b, p, expected):
    # C(10,3) = 120 = 17*7 + 1
    assert binom_mod_p(a, b, p) == expected


def test_binom_mod_p_rejects_composite():
    with pytest.raises(ValueError, match="p must be prime"):
        binom_mod_p(5, 2, 4)


@given(st.integers(0, 2000), st.integers(0, 2000), st.sampled_from([2, 3, 5, 7, 11, 13]))
def test_lucas_random(a, b, p):
    assert binom_mod_p(a, b, p) == binom(a, b) % p


@given(st.integers(0, 5000), st.integers(0, 5000))
def test_parity_is_domination(a, b):
    assert (binom(a, b) % 2 == 1) == (b <= a and dominates(b, a))


def test_lucas_suite():
    assert lucas_counterexamples(200) == []


def test_parity_corollary_suite():
    assert parity_corollary_counterexamples(300) == []


def test_vandermonde_suite_small():
    assert vandermonde_counterexamples(24) == []


def test_lemma_suites():
    assert either_or_counterexamples(64) == []
    assert triple_binomial_counterexamples(64) == []
    assert odd_summation_counterexamples(64) == []


def test_odd_summation_value():
    # k=4, i=2: l in {0}: C(2,0) * C(0,0)**2 = 1
    assert odd_summation(4, 2) == 1
    # k=6, i=2: l in {0, 2}: C(4,0)C(0,2)^2 + C(4,2)C(0,0)^2 = 0 + 6
    assert odd_summation(6, 2) == 6


def test_suites_detect_corruption(monkeypatch):
    import johnson_pst.exactnum as en

    real = math.comb
    monkeypatch.setattr(en.math, "comb", lambda a, b: real(a, b) + (1 if (a, b) == (9, 4) else 0))
    assert en.lucas_counterexamples(10)
    assert en.vandermonde_counterexamples(10)
