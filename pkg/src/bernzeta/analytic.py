"""Nested binomial series for the Bernoulli function and the zeta function.

The outer series is

    bracket(s) = 1/2 + sum_{n>=1} (-1)^n C(s-1, n) A_n

with the inner sums ``A_n`` supplied by :mod:`bernzeta.inner`.  From it:

    operator_power_series(s) = w^(s-1) bracket(s)
    bernoulli_function(s)    = Gamma(1+s) w^(s-1) bracket(s)
    zeta(1-s)                = -w^(s-1) Gamma(s) bracket(s)
    zeta(s)                  = -(2 pi)^s / 2 * w^(s-1) bracket(s) / cos(pi s/2)

For integer ``s >= 1`` the binomial coefficients vanish past ``n = s-1`` and
the sum is finite.  Otherwise the outer series is only asymptotic: ``A_n``
grows like ``(1 + 1/(2 pi w)^2)^(n/2)`` while rotating by
``atan(1/(2 pi w))`` per step, so after a long stretch of apparent
convergence the terms turn around and grow.  By default the loop watches the
term envelope over whole rotation periods and stops at the smallest one.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import mpmath

from .gamma import gamma_complex
from .hp import (EvalResult, PoleError, SeriesConfig, Status, context, err_value, hp,
                 working_precision)
from .inner import inner_sums

__all__ = [
    "binom_extended",
    "operator_power_series",
    "bernoulli_function",
    "zeta_one_minus_s",
    "functional_equation_factor",
    "functional_equation_rhs",
    "zeta_nested",
    "working_precision",
]

_DEFAULT = SeriesConfig()


def binom_extended(s, n: int, prec: int = 128) -> mpmath.mpc:
    """C(s-1, n) = (s-1)(s-2)...(s-n)/n! for complex s."""
    if n < 0:
        raise ValueError("n must be non-negative")
    ctx = context(prec)
    a = hp(ctx, s) - 1
    c = ctx.mpc(1)
    for k in range(n):
        c = c * (a - k) / (k + 1)
    return c


def _integer_value(s) -> int | None:
    """The integer ``s`` represents, or None."""
    if s.imag != 0:
        return None
    re = s.real
    if re == int(re):
        return int(re)
    return None


@dataclass
class _Outer:
    value: mpmath.mpc
    err: mpmath.mpf
    terms: int
    converged: bool
    note: str


def _region_problem(s, cfg: SeriesConfig) -> str | None:
    k = _integer_value(s)
    if k is not None and k >= 1:
        return None
    bound = 1 / float(cfg.w)
    if float(s.real) - bound < cfg.margin:
        return (f"Re(s) = {mpmath.nstr(s.real, 8)} is outside the convergence region "
                f"Re(s) > 1/w = {bound:g} (margin {cfg.margin:g})")
    return None


def _outer_series(s, cfg: SeriesConfig, prec: int) -> _Outer:
    """bracket(s) at ``prec`` bits, with an error estimate."""
    ctx = context(prec)
    w = float(cfg.w)
    growth = math.log2(1 + 1 / (2 * math.pi * w))
    F = prec
    inner = inner_sums(cfg.w, F, F + math.ceil(cfg.n_max * growth) + 64)

    a = s - 1
    k = _integer_value(s)
    terminating = k is not None and 1 <= k <= cfg.n_max + 1
    n_stop = k - 1 if terminating else cfg.n_max

    theta = math.atan(1 / (2 * math.pi * w))
    period = max(1, math.ceil(2 * math.pi / theta))
    # Abel summation: a slowly shrinking envelope times a phase turning by theta
    # per step sums to at most envelope / sin(theta/2)
    spread = 1 / math.sin(theta / 2)
    tol = cfg.tolerance

    total = ctx.mpc(ctx.mpf(1) / 2)
    c = ctx.mpc(1)
    abs_sum = mpmath.mpf(0.5)
    inner_err = mpmath.mpf(0)
    run = 0
    recent: list = []
    window: deque = deque(maxlen=period)
    block_max = mpmath.mpf(0)
    block_start_total = total
    best = None  # (envelope, total, n, block increment)
    last_env = last_step = mpmath.mpf(0)
    n = 0
    converged = False
    note = ""
    ensured = 0
    while n < n_stop:
        n += 1
        if n > ensured:
            ensured = min(n_stop, n + 255)
            inner.ensure(ensured)
        c = c * (a - (n - 1)) / n
        An = ctx.ldexp(ctx.mpf(inner.raw(n)), -F)
        term = c * An
        if n % 2:
            term = -term
        total += term
        mag = err_value(term)
        cmag = err_value(c)
        abs_sum += mag
        inner_err += cmag * mpmath.ldexp(1, math.ceil(inner.error_log2(n)))
        if terminating:
            continue

        recent.append(mag)
        window.append(mag)
        if len(recent) > cfg.k_consec:
            recent.pop(0)
        run = run + 1 if mag <= tol * err_value(total) else 0
        if run >= cfg.k_consec:
            # relative: the bracket is later scaled by factors as large as (2 pi)^s
            tail = max(recent) * spread
            if tail <= tol * err_value(total):
                converged = True
                note = "consecutive terms below tolerance"
                break

        if mag > block_max:
            block_max = mag
        if n % period == 0:
            step = err_value(total - block_start_total)
            if best is None or block_max < best[0]:
                best = (block_max, total, n, step)
            elif cfg.stop_on_divergence and block_max > 2 * best[0]:
                note = f"outer terms grow after n = {best[2]}; stopped at the smallest envelope"
                break
            last_env, last_step = block_max, step
            block_max = mpmath.mpf(0)
            block_start_total = total

    rounding = mpmath.ldexp(8 * abs_sum + 4 * n * err_value(total), -prec)
    if terminating:
        return _Outer(total, inner_err + rounding, n, True, "terminating sum")
    if converged:
        return _Outer(total, max(recent) * spread + inner_err + rounding, n, True, note)
    if note:
        env, value, used, step = best
        return _Outer(value, max(env * spread, step) + inner_err + rounding, used, False, note)
    # n_max reached: envelope of the trailing rotation period (or of the
    # second half of the terms when there are fewer than that)
    tail = list(window)[len(window) // 2:] if n < period else window
    env = max(tail, default=mpmath.mpf(0))
    trunc = env * spread
    return _Outer(total, trunc + inner_err + rounding, n, False, f"n_max = {cfg.n_max} reached")


def _status(outer: _Outer, value, err, cfg: SeriesConfig) -> Status:
    if outer.converged and err <= cfg.tolerance * max(1, err_value(value)):
        return Status.CONVERGED
    return Status.TRUNCATED


def _w_power(ctx, cfg: SeriesConfig, s):
    """w^(s-1) on the principal branch."""
    w = ctx.mpf(cfg.w.numerator) / cfg.w.denominator
    return ctx.exp((s - 1) * ctx.ln(w))


def _prepare(s, cfg: SeriesConfig | None):
    cfg = cfg or _DEFAULT
    prec = working_precision(cfg)
    ctx = context(prec)
    return cfg, prec, ctx, hp(ctx, s)


def _product_err(a, ea, b, eb, prec: int):
    """Error of a*b given errors of both factors, plus one rounding."""
    return err_value(a) * eb + err_value(b) * ea + ea * eb + mpmath.ldexp(err_value(a * b), 2 - prec)


def operator_power_series(s, cfg: SeriesConfig | None = None) -> EvalResult:
    """w^(s-1) times the nested bracket."""
    cfg, prec, ctx, s = _prepare(s, cfg)
    problem = _region_problem(s, cfg)
    if problem:
        return EvalResult.failed(Status.OUT_OF_REGION, problem, prec)
    outer = _outer_series(s, cfg, prec)
    wp = _w_power(ctx, cfg, s)
    value = wp * outer.value
    err = err_value(wp) * outer.err + mpmath.ldexp(err_value(value), 3 - prec)
    return EvalResult(value, err, outer.terms, _status(outer, value, err, cfg), prec, outer.note)


def bernoulli_function(s, cfg: SeriesConfig | None = None) -> EvalResult:
    """Gamma(1+s) times the operator power series; B(n) is B_n with B(1) = +1/2."""
    cfg, prec, ctx, s = _prepare(s, cfg)
    ops = operator_power_series(s, cfg)
    if not ops.usable:
        return ops
    try:
        g = gamma_complex(1 + s, prec)
    except PoleError as exc:
        return EvalResult.failed(Status.POLE, str(exc), prec)
    value = g.value * ops.value
    err = _product_err(g.value, g.abs_err_est, ops.value, ops.abs_err_est, prec)
    status = ops.status
    if status is Status.CONVERGED and err > cfg.tolerance * max(1, err_value(value)):
        status = Status.TRUNCATED
    return EvalResult(value, err, ops.terms_used, status, prec, ops.message)


def zeta_one_minus_s(s, cfg: SeriesConfig | None = None, cross_check: bool = False) -> EvalResult:
    """zeta(1-s) = -w^(s-1) Gamma(s) bracket(s).

    With ``cross_check`` the value is also formed as -B(s)/s and the two
    must agree within their combined estimates, else AssertionError.
    """
    cfg, prec, ctx, s = _prepare(s, cfg)
    if s == 0:
        return EvalResult.failed(Status.POLE, "zeta(1-s) has its pole at s = 0", prec)
    ops = operator_power_series(s, cfg)
    if not ops.usable:
        return ops
    try:
        g = gamma_complex(s, prec)
    except PoleError as exc:
        return EvalResult.failed(Status.POLE, str(exc), prec)
    value = -g.value * ops.value
    err = _product_err(g.value, g.abs_err_est, ops.value, ops.abs_err_est, prec)
    if cross_check:
        b = bernoulli_function(s, cfg)
        other = -b.value / s
        other_err = b.abs_err_est / err_value(s) + mpmath.ldexp(err_value(other), 2 - prec)
        gap = err_value(value - other)
        if gap > err + other_err:
            raise AssertionError(
                f"zeta(1-s) routes disagree at s={s}: gap {mpmath.nstr(gap, 5)} exceeds "
                f"{mpmath.nstr(err + other_err, 5)}")
    status = ops.status
    if status is Status.CONVERGED and err > cfg.tolerance * max(1, err_value(value)):
        status = Status.TRUNCATED
    return EvalResult(value, err, ops.terms_used, status, prec, ops.message)


def functional_equation_factor(s, prec: int = 128) -> EvalResult:
    """2 (2 pi)^(-s) Gamma(s) cos(pi s/2), which maps zeta(s) to zeta(1-s)."""
    ctx = context(prec)
    s = hp(ctx, s)
    g = gamma_complex(s, prec)  # raises PoleError at s = 0, -1, ...
    cos = ctx.cospi(s / 2)
    if cos == 0:
        return EvalResult(ctx.mpc(0), mpmath.mpf(0), 0, Status.CONVERGED, prec)
    rest = 2 * ctx.power(2 * ctx.pi, -s) * cos
    value = rest * g.value
    err = err_value(rest) * g.abs_err_est + mpmath.ldexp(err_value(value), 4 - prec)
    return EvalResult(value, err, g.terms_used, Status.CONVERGED, prec)


def functional_equation_rhs(s, zeta_s, prec: int = 128) -> mpmath.mpc:
    """2 (2 pi)^(-s) Gamma(s) cos(pi s/2) zeta_s."""
    ctx = context(prec)
    return functional_equation_factor(s, prec).value * hp(ctx, zeta_s)


def _zeta_direct(s, cfg: SeriesConfig, prec: int) -> EvalResult:
    ctx = context(prec)
    outer = _outer_series(s, cfg, prec)
    factor = -ctx.power(2 * ctx.pi, s) / 2 * _w_power(ctx, cfg, s) / ctx.cospi(s / 2)
    value = factor * outer.value
    err = err_value(factor) * outer.err + mpmath.ldexp(err_value(value), 5 - prec)
    return EvalResult(value, err, outer.terms, _status(outer, value, err, cfg), prec, outer.note)


def zeta_nested(s, cfg: SeriesConfig | None = None) -> EvalResult:
    """zeta(s) from the nested Bernoulli series, valid for Re(s) > 1/w.

    Within ``limit_eps`` of an odd integer k >= 3 both the bracket and the
    cosine vanish.  There the series is evaluated at k - eps and k + eps and
    the result interpolated linearly to s (for s = k, the plain mean); the
    half-difference is reported as part of the error.
    """
    cfg, prec, ctx, s = _prepare(s, cfg)
    eps = cfg.limit_eps
    if err_value(s - 1) <= eps:
        return EvalResult.failed(Status.POLE, "zeta(s) has its pole at s = 1", prec)
    problem = _region_problem(s, cfg)
    if problem:
        return EvalResult.failed(Status.OUT_OF_REGION, problem, prec)

    k = round(float(s.real))
    if k >= 3 and k % 2 and err_value(s - k) <= eps:
        e = ctx.mpf(eps)
        lo = _zeta_direct(ctx.mpc(k) - e, cfg, prec)
        hi = _zeta_direct(ctx.mpc(k) + e, cfg, prec)
        mean = (lo.value + hi.value) / 2
        half = (hi.value - lo.value) / 2
        value = mean + (s - k) / e * half
        err = err_value(half) + max(lo.abs_err_est, hi.abs_err_est) + mpmath.ldexp(err_value(value), 4 - prec)
        return EvalResult(value, err, lo.terms_used + hi.terms_used, Status.LIMIT_PATH, prec,
                          f"limit taken through s = {k} -/+ {eps:g}")
    return _zeta_direct(s, cfg, prec)
