"""Independent zeta oracles: Euler-Maclaurin continuation and the plain Dirichlet sum."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .exact import Convention, bernoulli
from .hp import EvalResult, Status, context, err_value, hp

__all__ = ["EmParams", "zeta_euler_maclaurin", "zeta_dirichlet"]


def _default_precision() -> int:
    return math.ceil(30 * math.log2(10)) + 64


@dataclass(frozen=True)
class EmParams:
    """Cut-off N, correction order M and working precision for Euler-Maclaurin.

    Valid for Re(s) > -2M - 1; evaluations closer than ``margin`` to that
    edge are refused.
    """

    n_cut: int = 200
    m_order: int = 12
    precision: int = field(default_factory=_default_precision)
    margin: float = 0.05

    def __post_init__(self):
        if self.n_cut < 1 or self.m_order < 1 or self.precision < 16:
            raise ValueError("n_cut, m_order must be positive and precision at least 16 bits")

    @property
    def lower_bound(self) -> float:
        return -2 * self.m_order - 1


def _correction(ctx, s, N, k: int, conv: Convention):
    """B_2k/(2k)! (s)_{2k-1} N^(-s-2k+1), the k-th derivative correction."""
    b = bernoulli(2 * k, conv)
    rising = ctx.mpc(1)
    for j in range(2 * k - 1):
        rising *= s + j
    return ctx.mpf(b.numerator) / b.denominator / ctx.factorial(2 * k) * rising * ctx.power(N, -s - 2 * k + 1)


def zeta_euler_maclaurin(s, p: EmParams | None = None,
                         convention: Convention = Convention.CLASSICAL) -> EvalResult:
    """zeta(s) by Euler-Maclaurin summation at cut-off N with M corrections.

    The error estimate is the first omitted correction.  If that term is
    larger than the last included one, the asymptotic series is already
    diverging and ValueError is raised; pick a smaller M or larger N.
    """
    p = p or EmParams()
    prec = p.precision
    ctx = context(prec)
    s = hp(ctx, s)
    if s == 1:
        return EvalResult.failed(Status.POLE, "zeta(s) has its pole at s = 1", prec)
    if float(s.real) <= p.lower_bound + p.margin:
        return EvalResult.failed(
            Status.OUT_OF_REGION,
            f"Euler-Maclaurin with M = {p.m_order} needs Re(s) > {p.lower_bound} (margin {p.margin:g})",
            prec)

    N = ctx.mpf(p.n_cut)
    total = ctx.mpc(0)
    abs_sum = mpmath.mpf(0)
    for n in range(1, p.n_cut + 1):
        t = ctx.power(n, -s)
        total += t
        abs_sum += err_value(t)
    total += ctx.power(N, 1 - s) / (s - 1) - ctx.power(N, -s) / 2
    last = None
    for k in range(1, p.m_order + 1):
        last = _correction(ctx, s, N, k, convention)
        total += last
    omitted = _correction(ctx, s, N, p.m_order + 1, convention)
    if last != 0 and err_value(omitted) > err_value(last):
        raise ValueError(
            f"Euler-Maclaurin tail is diverging at s={s}: term {p.m_order + 1} exceeds term "
            f"{p.m_order}; use a smaller m_order or larger n_cut")
    err = err_value(omitted) + mpmath.ldexp(4 * abs_sum + 4 * p.n_cut * err_value(total), -prec)
    tol = mpmath.ldexp(1, 64 - prec)
    status = Status.CONVERGED if err <= tol * max(1, err_value(total)) else Status.TRUNCATED
    return EvalResult(total, err, p.n_cut + p.m_order, status, prec)


def zeta_dirichlet(s, terms: int, prec: int = 53) -> EvalResult:
    """Partial sum of n^-s for n <= terms, with the integral tail bound as error.

    At ``prec <= 53`` the sum runs in hardware floats with compensated
    summation; above that, in mpmath at ``prec`` bits.
    """
    if terms < 1:
        raise ValueError("terms must be positive")
    ctx = context(max(prec, 53))
    s = hp(ctx, s)
    if s == 1:
        return EvalResult.failed(Status.POLE, "zeta(s) has its pole at s = 1", prec)
    sigma = float(s.real)
    if sigma <= 1:
        return EvalResult.failed(Status.OUT_OF_REGION, "the Dirichlet series needs Re(s) > 1", prec)

    if prec <= 53:
        sc = complex(s)
        re, im = [], []
        for n in range(1, terms + 1):
            t = n ** -sc
            re.append(t.real)
            im.append(t.imag)
        value = ctx.mpc(math.fsum(re), math.fsum(im))
        rounding = mpmath.mpf(terms) * 2.0**-50 * err_value(value)
    else:
        total = ctx.mpc(0)
        for n in range(1, terms + 1):
            total += ctx.power(n, -s)
        value = total
        rounding = mpmath.ldexp(4 * terms * err_value(value), -prec)
    tail = mpmath.power(terms, 1 - sigma) / (sigma - 1)
    return EvalResult(value, err_value(tail) + rounding, terms, Status.TRUNCATED, prec)
