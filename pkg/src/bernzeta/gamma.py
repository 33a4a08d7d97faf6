"""Complex Gamma function at arbitrary binary precision.

Method: shift the argument up by ``r`` so that ``Re(z + r) >= R`` and
``|arg(z + r)| <= pi/4``, sum ``K`` terms of Stirling's series for
``log Gamma(z + r)``, then divide out the rising product.  For
``Re(z) < 1/2`` the reflection formula is applied first.

The truncation error of the Stirling sum obeys

    |R_K(z)| <= |B_{2K+2}| / ((2K+2)(2K+1)|z|^(2K+1)) * sec(arg(z)/2)^(2K+2)

which is evaluated in floating point and reported as part of
``abs_err_est``; ``K`` and ``R`` are chosen so it sits below 2^-(prec+8).
"""

from __future__ import annotations

import math
from functools import lru_cache

from .exact import bernoulli
import mpmath

from .hp import EvalResult, PoleError, Status, context, err_value, hp

__all__ = ["gamma_complex", "stirling_plan"]

_SEC_PI8_SQ = 1 / math.cos(math.pi / 8) ** 2


def _log2_abs(q) -> float:
    return math.log2(abs(q.numerator)) - math.log2(q.denominator)


def _remainder_log2(K: int, R: float) -> float:
    b = _log2_abs(bernoulli(2 * K + 2))
    return b - math.log2((2 * K + 2) * (2 * K + 1)) - (2 * K + 1) * math.log2(R) + (K + 1) * math.log2(_SEC_PI8_SQ)


@lru_cache(maxsize=None)
def stirling_plan(prec: int) -> tuple[int, int, float]:
    """(K, R, log2 of the remainder bound) for a target of ``prec`` bits."""
    target = -(prec + 8)
    R = max(16, math.ceil(0.75 * prec))
    while True:
        for K in range(1, 400):
            bound = _remainder_log2(K, R)
            if bound <= target:
                return K, R, bound
        R *= 2


def _coefficients(ctx, K: int):
    return [ctx.mpf(bernoulli(2 * k).numerator) / (bernoulli(2 * k).denominator * 2 * k * (2 * k - 1))
            for k in range(1, K + 1)]


def gamma_complex(z, prec: int = 128) -> EvalResult:
    """Gamma(z) with a rigorous-style truncation bound plus a rounding allowance."""
    ctx = context(prec + 32)
    z = hp(ctx, z)
    if z.imag == 0 and z.real <= 0 and ctx.isint(z.real):
        raise PoleError(f"Gamma has a pole at {ctx.nstr(z.real, 10)}")
    if z.real < 0.5:
        inner = gamma_complex(1 - z, prec)
        val = ctx.pi / (ctx.sinpi(z) * inner.value)
        rel = inner.abs_err_est / abs(inner.value) + mpmath.ldexp(3, -prec)
        return EvalResult(context(prec).mpc(val), err_value(rel * abs(val)), inner.terms_used, Status.CONVERGED, prec)

    K, R, bound = stirling_plan(prec)
    need = max(R - ctx.floor(z.real), ctx.ceil(abs(z.imag)) - ctx.floor(z.real), 0)
    r = int(need)
    # extra bits for the r-fold product and the K-term sum
    ctx = context(prec + 32 + (r + K).bit_length())
    z = hp(ctx, z)
    x = z + r
    log_g = (x - 0.5) * ctx.log(x) - x + ctx.log(2 * ctx.pi) / 2
    inv = 1 / x
    inv2 = inv * inv
    p = inv
    for c in _coefficients(ctx, K):
        log_g += c * p
        p *= inv2
    val = ctx.exp(log_g)
    if r:
        prod = ctx.mpc(1)
        for j in range(r):
            prod *= z + j
        val /= prod
    # truncation + internal rounding + the final rounding to prec bits
    rel = mpmath.ldexp(1, math.ceil(bound)) + mpmath.ldexp(r + K + 8, -prec - 20) + mpmath.ldexp(1, 1 - prec)
    out = context(prec).mpc(val)
    return EvalResult(out, err_value(rel * abs(out)), K, Status.CONVERGED, prec)
