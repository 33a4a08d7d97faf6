import math
import random

import mpmath
import pytest

from bernzeta.gamma import gamma_complex
from bernzeta.hp import PoleError


@pytest.mark.parametrize("n", range(1, 30))
def test_integers_give_factorials(n):
    r = gamma_complex(n, 200)
    assert abs(r.value - math.factorial(n - 1)) <= r.abs_err_est


def test_half_is_sqrt_pi():
    r = gamma_complex(mpmath.mpf(0.5), 256)
    with mpmath.workprec(256):
        assert abs(r.value - mpmath.sqrt(mpmath.pi)) <= r.abs_err_est
        assert r.abs_err_est < mpmath.mpf(10) ** -70


@pytest.mark.parametrize("prec", [64, 200, 400])
def test_against_mpmath_in_the_tested_disc(prec):
    rng = random.Random(prec)
    for _ in range(40):
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        if abs(z) > 50:
            continue
        r = gamma_complex(z, prec)
        with mpmath.workprec(prec + 40):
            want = mpmath.gamma(mpmath.mpc(z))
            assert abs(r.value - want) <= r.abs_err_est
            assert r.abs_err_est <= abs(want) * mpmath.ldexp(1, 10 - prec)


@pytest.mark.parametrize("z", [0.3 + 0.1j, 2.7 - 4j, -3.2 + 0.5j, 11.5 + 20j])
def test_duplication_formula(z):
    prec = 160
    with mpmath.workprec(prec):
        z = mpmath.mpc(z)
        lhs = gamma_complex(z, prec).value * gamma_complex(z + 0.5, prec).value
        rhs = 2 ** (1 - 2 * z) * mpmath.sqrt(mpmath.pi) * gamma_complex(2 * z, prec).value
        assert abs(lhs - rhs) <= abs(rhs) * mpmath.ldexp(1, 8 - prec)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_poles(z):
    with pytest.raises(PoleError):
        gamma_complex(z)


def test_30_digit_contract():
    prec = math.ceil(30 * math.log2(10)) + 64
    for z in (1.5, 3 + 4j, -2.5 + 0.25j, 49.0):
        r = gamma_complex(z, prec)
        assert r.abs_err_est <= abs(r.value) * mpmath.mpf(10) ** -30
