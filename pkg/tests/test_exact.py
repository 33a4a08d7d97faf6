from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from bernzeta.exact import (Convention, bernoulli, bernoulli_table, egf_coefficients,
                            zeta_even_exact, zeta_neg_int)

# published values of B_0 .. B_20 (classical sign)
KNOWN = {
    0: Fraction(1), 1: Fraction(-1, 2), 2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42),
    8: Fraction(-1, 30), 10: Fraction(5, 66), 12: Fraction(-691, 2730), 14: Fraction(7, 6),
    16: Fraction(-3617, 510), 18: Fraction(43867, 798), 20: Fraction(-174611, 330),
}


def akiyama_tanigawa(n: int) -> Fraction:
    """B_n with B_1 = +1/2 by the Akiyama-Tanigawa triangle; shares nothing with the package."""
    a = [Fraction(1, m + 1) for m in range(n + 1)]
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


@pytest.mark.parametrize("n", range(21))
def test_matches_published_table(n):
    assert bernoulli(n) == KNOWN.get(n, Fraction(0))


@pytest.mark.parametrize("n", range(0, 61))
def test_matches_akiyama_tanigawa(n):
    assert bernoulli(n, Convention.REDEFINED) == akiyama_tanigawa(n)


def test_conventions_differ_only_at_one():
    cl = bernoulli_table(30, Convention.CLASSICAL)
    rd = bernoulli_table(30, "redefined")
    assert cl[1] == Fraction(-1, 2) and rd[1] == Fraction(1, 2)
    assert [v for k, v in enumerate(cl) if k != 1] == [v for k, v in enumerate(rd) if k != 1]


def test_egf_route_agrees_with_recurrence():
    assert egf_coefficients(41) == bernoulli_table(40)
    assert egf_coefficients(41, Convention.REDEFINED) == bernoulli_table(40, Convention.REDEFINED)


@given(st.integers(min_value=1, max_value=80))
def test_defining_identity(n):
    # sum_{k<n} C(n+1, k) B_k = -(n+1) B_n, the classical recurrence written the other way round
    assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


@given(st.integers(min_value=1, max_value=60))
def test_odd_indices_vanish(k):
    assert bernoulli(2 * k + 1) == 0


def test_zeta_even_exact_small_cases():
    assert zeta_even_exact(1) == Fraction(1, 6)  # zeta(2) = pi^2/6
    assert zeta_even_exact(2) == Fraction(1, 90)
    assert zeta_even_exact(3) == Fraction(1, 945)


def test_zeta_at_nonpositive_integers():
    assert zeta_neg_int(0) == Fraction(-1, 2)
    assert zeta_neg_int(1) == Fraction(-1, 12)
    assert zeta_neg_int(2) == 0
    assert zeta_neg_int(3) == Fraction(1, 120)


def test_bad_arguments():
    with pytest.raises(ValueError):
        bernoulli(-1)
    with pytest.raises(ValueError):
        Convention.parse("sideways")
    with pytest.raises(ValueError):
        egf_coefficients(0)
