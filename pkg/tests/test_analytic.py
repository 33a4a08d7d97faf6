import itertools
import math
from fractions import Fraction

import mpmath
import pytest

from bernzeta.analytic import (bernoulli_function, binom_extended, functional_equation_factor,
                               functional_equation_rhs, operator_power_series, zeta_nested, zeta_one_minus_s)
from bernzeta.exact import Convention, bernoulli, zeta_even_exact
from bernzeta.hp import SeriesConfig, Status, working_precision
from bernzeta.reference import zeta_euler_maclaurin

FAST = SeriesConfig(target_digits=20, n_max=3000)


def q(x) -> mpmath.mpf:
    """An exact rational as a 2000-bit float, far below any error checked here."""
    x = Fraction(x)
    with mpmath.workprec(2000):
        return mpmath.mpf(x.numerator) / x.denominator


def close(r, want):
    return abs(r.value - want) <= r.abs_err_est


def test_binomial_extension():
    assert binom_extended(2, 1) == 1
    assert binom_extended(2, 2) == 0
    assert binom_extended(4, 2) == 3
    assert binom_extended(Fraction(5, 2), 0) == 1
    with mpmath.workprec(100):
        assert abs(binom_extended(2 + 3j, 3) - mpmath.binomial(1 + 3j, 3)) < 1e-25


def test_working_precision_formula():
    cfg = SeriesConfig()
    middle = math.ceil(20000 * math.log2(1 + 1 / (8 * math.pi)))
    assert 1120 < middle < 1140
    assert working_precision(cfg) == 100 + middle + 64
    small = working_precision(SeriesConfig(target_digits=15, n_max=100))
    assert small == 50 + math.ceil(100 * math.log2(1 + 1 / (8 * math.pi))) + 64
    assert working_precision(cfg.replace(n_max=40000)) > working_precision(cfg)


@pytest.mark.parametrize("w", [1, 3, Fraction(1, 2)])
def test_operator_series_terminating_examples(w):
    cfg = SeriesConfig(w=w, n_max=200)
    assert close(operator_power_series(2, cfg), q(Fraction(1, 12)))
    assert close(operator_power_series(1, cfg), q(Fraction(1, 2)))
    assert close(operator_power_series(4, cfg), q(Fraction(-1, 720)))


@pytest.mark.parametrize("s", range(1, 13))
def test_integer_consistency(s):
    r = bernoulli_function(s)
    b = bernoulli(s, Convention.REDEFINED)
    assert abs(r.value - q(b)) <= r.abs_err_est
    assert r.terms_used <= s
    assert r.status is Status.CONVERGED


def test_b_of_one_is_plus_half():
    assert bernoulli_function(1).value == mpmath.mpf(0.5)


@pytest.mark.parametrize("s", range(2, 9))
def test_w_independence_at_integers(s):
    rs = [bernoulli_function(s, SeriesConfig(w=w, n_max=500)) for w in (1, 2, 4, 10)]
    for a, b in itertools.combinations(rs, 2):
        assert abs(a.value - b.value) <= a.abs_err_est + b.abs_err_est


def test_w_independence_off_integers():
    # the series is w-independent on its domain; at non-integer s only to truncation accuracy
    a = bernoulli_function(2.5, SeriesConfig(w=4, n_max=6000))
    b = bernoulli_function(2.5, SeriesConfig(w=10, n_max=6000))
    assert abs(a.value - b.value) <= a.abs_err_est + b.abs_err_est


@pytest.mark.parametrize("s", [2, 3, 4, 6, 2.5, 3 + 1j])
def test_bridge_identity(s):
    r = zeta_one_minus_s(s, FAST, cross_check=True)
    assert r.usable


def test_negative_axis_values():
    assert close(zeta_one_minus_s(2), q(Fraction(-1, 12)))
    assert close(zeta_one_minus_s(1), q(Fraction(-1, 2)))
    assert close(zeta_one_minus_s(3), 0)
    assert zeta_one_minus_s(0).status is Status.POLE


def test_functional_equation_examples():
    with mpmath.workprec(128):
        assert abs(functional_equation_rhs(2, mpmath.pi**2 / 6) + q(Fraction(1, 12))) < 1e-30
        assert abs(functional_equation_rhs(4, mpmath.pi**4 / 90) - q(Fraction(1, 120))) < 1e-30
    assert functional_equation_rhs(3, 12345) == 0


@pytest.mark.parametrize("s", [2, 4, 6])
def test_functional_equation_round_trip(s):
    z = zeta_nested(s)
    f = functional_equation_factor(s, z.prec)
    lhs = f.value * z.value
    lhs_err = abs(f.value) * z.abs_err_est + abs(z.value) * f.abs_err_est
    rhs = zeta_one_minus_s(s)
    assert abs(lhs - rhs.value) <= lhs_err + rhs.abs_err_est + mpmath.ldexp(abs(lhs), 8 - z.prec)


@pytest.mark.parametrize("s", [3, 5])
def test_bracket_vanishes_at_odd_integers(s):
    r = operator_power_series(s)
    assert abs(r.value) <= max(r.abs_err_est, 10 * SeriesConfig().tolerance)


def test_even_zeta_values():
    for s, n in ((2, 1), (4, 2)):
        c = zeta_even_exact(n)
        r = zeta_nested(s)
        with mpmath.workprec(r.prec):
            assert close(r, q(c) * mpmath.pi ** (2 * n))
        assert r.status is Status.CONVERGED


def test_limit_path_at_three():
    r = zeta_nested(3)
    assert r.status is Status.LIMIT_PATH
    oracle = zeta_euler_maclaurin(3).value
    assert abs(r.value - oracle) <= r.abs_err_est
    half = zeta_nested(3, SeriesConfig(limit_eps=0.5e-8))
    assert abs(half.value - r.value) < r.abs_err_est


def test_limit_path_near_but_off_the_integer():
    cfg = SeriesConfig(limit_eps=1e-6)
    r = zeta_nested(mpmath.mpf(3) + mpmath.mpf(4e-7), cfg)
    assert r.status is Status.LIMIT_PATH
    with mpmath.workprec(100):
        want = mpmath.zeta(3 + mpmath.mpf(4e-7))
    assert abs(r.value - want) <= r.abs_err_est


def test_pole_and_region():
    assert zeta_nested(1).status is Status.POLE
    assert zeta_nested(1 + 1e-12).status is Status.POLE
    r = zeta_nested(0.5, SeriesConfig(w=1))
    assert r.status is Status.OUT_OF_REGION and "1/w" in r.message
    assert zeta_nested(0.27).status is Status.OUT_OF_REGION  # inside 1/w but within the margin
    assert operator_power_series(-2.5).status is Status.OUT_OF_REGION


def test_conjugate_symmetry():
    a = zeta_nested(2 + 3j, FAST)
    b = zeta_nested(2 - 3j, FAST)
    assert abs(a.value - mpmath.conj(b.value)) <= a.abs_err_est + b.abs_err_est


@pytest.mark.parametrize("s", [2.5, 3.5])
def test_truncated_estimate_covers_real_error(s):
    r = zeta_nested(s, SeriesConfig(n_max=20000))
    assert r.status is Status.TRUNCATED
    with mpmath.workprec(100):
        assert abs(r.value - mpmath.zeta(s)) <= r.abs_err_est


def test_converged_status_honours_tolerance():
    cfg = SeriesConfig(target_digits=12, n_max=5000)
    r = zeta_nested(30.5, cfg)
    assert r.status is Status.CONVERGED
    assert r.abs_err_est <= cfg.tolerance * max(1, abs(r.value))
    with mpmath.workprec(100):
        assert abs(r.value - mpmath.zeta(30.5)) <= r.abs_err_est


def test_plain_truncation_when_guard_disabled():
    cfg = SeriesConfig(n_max=800, stop_on_divergence=False, target_digits=15)
    r = zeta_nested(2.5, cfg)
    assert r.terms_used == 800 and r.status is Status.TRUNCATED
