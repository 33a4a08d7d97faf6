import math
from fractions import Fraction

import mpmath
import pytest

from bernzeta.exact import Convention, zeta_even_exact, zeta_neg_int
from bernzeta.hp import Status
from bernzeta.reference import EmParams, zeta_dirichlet, zeta_euler_maclaurin

HI = 200


def exact(q: Fraction):
    with mpmath.workprec(HI):
        return mpmath.mpf(q.numerator) / q.denominator


def test_zeta2_small_parameters():
    r = zeta_euler_maclaurin(2, EmParams(50, 5))
    with mpmath.workprec(HI):
        assert abs(r.value - exact(zeta_even_exact(1)) * mpmath.pi**2) < 1e-15


@pytest.mark.parametrize("s, n", [(-1, 1), (0, 0), (-2, 2), (-3, 3), (-5, 5)])
def test_nonpositive_integers(s, n):
    r = zeta_euler_maclaurin(s, EmParams(50, 5))
    assert abs(r.value - exact(zeta_neg_int(n))) <= r.abs_err_est
    assert abs(r.value - exact(zeta_neg_int(n))) < 1e-12


def test_half_self_consistency():
    a = zeta_euler_maclaurin(0.5, EmParams(1000, 8))
    b = zeta_euler_maclaurin(0.5, EmParams(10000, 10))
    assert abs(a.value - b.value) < 1e-12
    assert abs(a.value.real + mpmath.mpf("1.4603545088")) < 1e-10


@pytest.mark.parametrize("s", [1.3, 2, 2.5 + 1j, 4, 6 - 3j])
def test_agrees_with_dirichlet(s):
    em = zeta_euler_maclaurin(s)
    d = zeta_dirichlet(s, 20000, 120)
    assert abs(em.value - d.value) <= em.abs_err_est + d.abs_err_est


@pytest.mark.parametrize("s", [2.5, -3.5 + 2j, 0.5 + 14j])
def test_against_mpmath_zeta(s):
    r = zeta_euler_maclaurin(s)
    with mpmath.workprec(HI):
        assert abs(r.value - mpmath.zeta(mpmath.mpc(s))) <= r.abs_err_est


def test_error_shrinks_with_cutoff():
    errs = [zeta_euler_maclaurin(0.75 + 2j, EmParams(n, 6)).abs_err_est for n in (20, 40, 80, 160, 320)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_convention_does_not_matter():
    for s in (2, 0.5, -3 + 1j):
        a = zeta_euler_maclaurin(s, convention=Convention.CLASSICAL)
        b = zeta_euler_maclaurin(s, convention=Convention.REDEFINED)
        assert a.value == b.value and a.abs_err_est == b.abs_err_est


def test_pole_and_region():
    assert zeta_euler_maclaurin(1).status is Status.POLE
    assert zeta_euler_maclaurin(-30, EmParams(50, 5)).status is Status.OUT_OF_REGION
    assert zeta_dirichlet(1, 10).status is Status.POLE
    assert zeta_dirichlet(0.9, 10).status is Status.OUT_OF_REGION


def test_diverging_correction_series_is_refused():
    with pytest.raises(ValueError):
        zeta_euler_maclaurin(2, EmParams(3, 30))


def test_dirichlet_bounds():
    r = zeta_dirichlet(2, 10**6)
    pi2 = math.pi**2 / 6
    assert abs(float(r.value.real) - pi2) <= float(r.abs_err_est)
    r = zeta_dirichlet(4, 1000)
    assert abs(float(r.value.real) - math.pi**4 / 90) < 1e-9
    assert float(r.abs_err_est) == pytest.approx(1000**-3 / 3, rel=1e-6)
