"""Inner bracket sums of the nested Bernoulli series.

For fixed ``w`` the outer series needs

    A_n = 1/2 + sum_{m=1}^{n} C(n, m) (-1/w)^m B_{m+1}/(m+1)!

for n = 0, 1, 2, ...  These do not depend on ``s``, so one table per
``(w, precision)`` serves every evaluation.  Everything here is integer
fixed point: coefficient ``m`` is held at binary scale ``2^(F + s_m)`` with
``s_m = floor(m log2(2 pi w))`` so that every stored integer has about ``F``
significant bits, and the binomial transform runs in the compiled kernel.

Coefficients up to ``EXACT_SEED`` come straight from the exact rational
Bernoulli numbers.  Beyond that, exact values are far too large to carry,
and the coefficients follow from a convolution recurrence run in fixed point
with ``1/w`` folded into its weights.

The obvious recurrence ``sum_{j<=k} b_j/(k-j+1)! = 0`` (``b_k = B_k/k!``) is
unusable here: once the odd terms are pinned to zero its error modes decay
like ``pi^-k`` while the solution decays like ``(2 pi)^-k``, so rounding
noise gains one bit per index.  Instead we use the even-index identity

    (z/2) coth(z/2) * sinh(z/2)/(z/2) = cosh(z/2),

whose characteristic function ``sinh(z/2)/(z/2)`` vanishes only at
``2 pi i n``.  Rounding errors then decay exactly as fast as the solution.
"""

from __future__ import annotations

import math
import threading
from collections import OrderedDict
from fractions import Fraction
from math import factorial

from . import kernel
from .exact import bernoulli_table

__all__ = ["InnerSums", "inner_sums", "EXACT_SEED"]

EXACT_SEED = 128
_ALPHA_BITS = 48
_GUARD = 64


def _round_div(num: int, den: int) -> int:
    """Nearest integer to num/den (ties away from zero is irrelevant here; den > 0)."""
    return (2 * num + den) // (2 * den)


def _round_fraction(q: Fraction) -> int:
    return _round_div(q.numerator, q.denominator)


class InnerSums:
    def __init__(self, w: Fraction, frac_bits: int, width_bits: int, backend: str | None = None):
        if w <= 0:
            raise ValueError("w must be positive")
        self.w = Fraction(w)
        self.frac_bits = F = int(frac_bits)
        self.rec_bits = G = F + _GUARD
        # s_m = floor(m * alpha) with alpha a 48-bit dyadic approximation of log2(2 pi w)
        self._alpha = math.floor(math.log2(2 * math.pi * float(w)) * 2**_ALPHA_BITS)
        self.growth_log2 = math.log2(1 + 1 / (2 * math.pi * float(w)))
        cls = kernel.BinomialTransform if backend is None else kernel.get_backend(backend)
        self._kernel = cls(width_bits)
        self.backend = cls.backend
        self._lock = threading.Lock()
        self._A: list[int] = []
        self._Y: list[int] = []  # y_k = b_k (-1/w)^k scaled by 2^(G + s_k)

        wn, wd = self.w.numerator, self.w.denominator
        self._weights0: list[int] = [0]
        self._weights1: list[int] = [0]
        self._f: list[int] = [0]
        # weight for lag m (even): 2^(G + f_m) (1/(2w))^m / (m+1)!, f_m = floor(m alpha);
        # the remaining factor 2^(s_k - s_j - f_m) is 1 or 2.
        m = 2
        while True:
            f = self._floor_alpha(m)
            q = Fraction(2 ** (G + f) * wd**m, (2 * wn) ** m * factorial(m + 1))
            if q < Fraction(1, 2**48):
                break
            self._f += [0, f]
            self._weights0 += [0, _round_fraction(q)]
            self._weights1 += [0, _round_fraction(2 * q)]
            m += 2
        self.band = len(self._weights0) - 1

        self._forcing_live = True
        table = bernoulli_table(EXACT_SEED)
        for k in range(EXACT_SEED + 1):
            y = table[k] / factorial(k) * Fraction(-wd, wn) ** k
            self._Y.append(_round_fraction(y * 2 ** (G + self.shift(k))))

    def _floor_alpha(self, m: int) -> int:
        return (m * self._alpha) >> _ALPHA_BITS

    def shift(self, m: int) -> int:
        return self._floor_alpha(m)

    def __len__(self) -> int:
        return len(self._A)

    def _forcing(self, k: int) -> int:
        """2^(G + s_k) (1/(2w))^k / k!, scaled by a further 2^G; zero once negligible."""
        q = Fraction(2 ** (2 * self.rec_bits + self.shift(k)) * self.w.denominator**k,
                     (2 * self.w.numerator) ** k * factorial(k))
        return _round_fraction(q) if q >= 1 else 0

    def _next_y(self) -> None:
        Y = self._Y
        k = len(Y)
        if k % 2:
            Y.append(0)
            return
        sk = self.shift(k)
        f, w0, w1 = self._f, self._weights0, self._weights1
        acc = self._forcing(k) if self._forcing_live else 0
        if not acc:
            self._forcing_live = False
        for m in range(2, min(k, self.band) + 1, 2):
            y = Y[k - m]
            if y:
                delta = sk - self.shift(k - m) - f[m]
                acc -= y * (w1[m] if delta else w0[m])
        Y.append((acc + (1 << (self.rec_bits - 1))) >> self.rec_bits)

    def coefficient(self, m: int) -> int:
        """(-1/w)^m B_{m+1}/(m+1)! (1/2 at m = 0) scaled by 2^(F + s_m)."""
        F, G = self.frac_bits, self.rec_bits
        if m == 0:
            return 1 << (F - 1)
        if m < EXACT_SEED:
            y = self._Y[m + 1]
            # exact path: recompute from the rational to avoid a second rounding
            b = bernoulli_table(m + 1)[m + 1]
            e = Fraction(-self.w.denominator, self.w.numerator) ** m * b / factorial(m + 1)
            return _round_fraction(e * 2 ** (F + self.shift(m)))
        while len(self._Y) <= m + 1:
            self._next_y()
        y = self._Y[m + 1]
        # e_m = -w * y_{m+1}
        den = self.w.denominator << (G - F + self.shift(m + 1) - self.shift(m))
        return _round_div(-self.w.numerator * y, den)

    def ensure(self, n: int) -> None:
        if n < len(self._A):
            return
        with self._lock:
            for m in range(len(self._A), n + 1):
                c = self.coefficient(m)
                step = self.shift(m) - self.shift(m - 1) if m else 0
                self._A.append(self._kernel.push(c, step))

    def raw(self, n: int) -> int:
        """A_n scaled by 2^F."""
        self.ensure(n)
        return self._A[n]

    def value(self, n: int) -> Fraction:
        return Fraction(self.raw(n), 2**self.frac_bits)

    def error_log2(self, n: int) -> float:
        """log2 of a bound on |A_n - raw(n)/2^F|."""
        return math.log2(2 * (n + 2)) + n * self.growth_log2 - self.frac_bits


_cache: "OrderedDict[tuple, InnerSums]" = OrderedDict()
_cache_lock = threading.Lock()
_CACHE_SIZE = 8


def inner_sums(w: Fraction, frac_bits: int, width_bits: int, backend: str | None = None) -> InnerSums:
    key = (Fraction(w), frac_bits, width_bits, backend or kernel.BACKEND)
    with _cache_lock:
        obj = _cache.get(key)
        if obj is None:
            obj = InnerSums(Fraction(w), frac_bits, width_bits, backend)
            _cache[key] = obj
            if len(_cache) > _CACHE_SIZE:
                _cache.popitem(last=False)
        else:
            _cache.move_to_end(key)
        return obj
