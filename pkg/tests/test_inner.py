import math
from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from bernzeta import kernel
from bernzeta.exact import bernoulli_table
from bernzeta.inner import EXACT_SEED, InnerSums, inner_sums


def exact_inner(n: int, w: Fraction) -> Fraction:
    b = bernoulli_table(n + 1)
    return Fraction(1, 2) + sum(comb(n, m) * (-1 / w) ** m * b[m + 1] / factorial(m + 1) for m in range(1, n + 1))


@pytest.mark.parametrize("w", [Fraction(1), Fraction(4), Fraction(5, 2)])
def test_small_n_exact(w):
    obj = InnerSums(w, 200, 600)
    for n in range(60):
        err = abs(obj.value(n) - exact_inner(n, w))
        assert err <= Fraction(2) ** math.ceil(obj.error_log2(n))


def test_recurrence_past_exact_seed_stays_accurate():
    # beyond the seed the coefficients come from a fixed-point recurrence; compare with exact rationals
    w = Fraction(4)
    obj = InnerSums(w, 300, 900)
    b = bernoulli_table(EXACT_SEED + 300)
    for m in range(EXACT_SEED, EXACT_SEED + 299, 7):
        want = (-1 / w) ** m * b[m + 1] / factorial(m + 1) * 2 ** (300 + obj.shift(m))
        assert abs(obj.coefficient(m) - want) < 2**8


@pytest.mark.parametrize("n", [150, 700, 1600])
def test_against_mpmath_bernoulli(n):
    F = 160
    obj = InnerSums(Fraction(4), F, F + 200)
    with mpmath.workprec(F + 2 * n):
        total = mpmath.mpf(1) / 2
        c = mpmath.mpf(1)
        for m in range(1, n + 1):
            c = c * (n - m + 1) / m
            total += c * mpmath.mpf(-0.25) ** m * mpmath.bernoulli(m + 1) / mpmath.factorial(m + 1)
        err = abs(mpmath.mpf(obj.raw(n)) / 2**F - total)
        assert err <= mpmath.ldexp(1, math.ceil(obj.error_log2(n)))


def test_closed_form_rotation():
    # A_n = 1/2 - sum_j Im((1 + i/(2 pi j w))^n)/(pi j); the j-sum converges like 1/j^2
    n, w = 400, 4
    obj = InnerSums(Fraction(w), 120, 300)
    J = 20000
    with mpmath.workdps(30):
        s = mpmath.nsum(lambda j: mpmath.im((1 + 1j / (2 * mpmath.pi * j * w)) ** n) / (mpmath.pi * j), [1, J])
        # tail of the j-sum: Im((1+ix)^n) ~ n x for small x
        s += n / (2 * mpmath.pi**2 * w) * (1 / mpmath.mpf(J))
        assert abs(float(obj.value(n)) - float(0.5 - s)) < 1e-6


@pytest.mark.parametrize("name", kernel.available_backends())
def test_backends_agree(name):
    a = InnerSums(Fraction(4), 100, 300, backend=name)
    b = InnerSums(Fraction(4), 100, 300, backend="python")
    a.ensure(400)
    b.ensure(400)
    assert [a.raw(n) for n in range(401)] == [b.raw(n) for n in range(401)]


def test_cache_reuses_tables():
    assert inner_sums(Fraction(4), 100, 300) is inner_sums(Fraction(4), 100, 300)


def test_rejects_nonpositive_w():
    with pytest.raises(ValueError):
        InnerSums(Fraction(0), 100, 300)
