"""Exact rational Bernoulli numbers.

Two independent routes are provided: the binomial recurrence
(:func:`bernoulli`) and the reciprocal of the power series of
``(e^z - 1)/z`` (:func:`egf_coefficients`).  They deliberately share no code
so that each can serve as an oracle for the other.
"""

from __future__ import annotations

import enum
import threading
from fractions import Fraction
from math import comb, factorial

__all__ = [
    "Convention",
    "bernoulli",
    "bernoulli_table",
    "egf_coefficients",
    "zeta_even_exact",
    "zeta_neg_int",
]


class Convention(enum.Enum):
    """Sign convention for B_1; every other index is unaffected."""

    CLASSICAL = "classical"  # B_1 = -1/2
    REDEFINED = "redefined"  # B_1 = +1/2

    @classmethod
    def parse(cls, value: "str | Convention") -> "Convention":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


_lock = threading.Lock()
# classical values B_0, B_1, ...; the redefined table is derived on lookup
_table: list[Fraction] = [Fraction(1)]


def _extend(n: int) -> None:
    with _lock:
        for m in range(len(_table), n + 1):
            if m > 1 and m % 2:
                _table.append(Fraction(0))
                continue
            acc = Fraction(0)
            for k in range(m):
                bk = _table[k]
                if bk:
                    acc += comb(m + 1, k) * bk
            _table.append(-acc / (m + 1))


def bernoulli(n: int, conv: Convention | str = Convention.CLASSICAL) -> Fraction:
    """Return B_n as an exact fraction.

    Values are memoized per process, so asking for ``n`` after ``n + 1``
    costs a list lookup.

    >>> bernoulli(12)
    Fraction(-691, 2730)
    >>> bernoulli(1, "redefined")
    Fraction(1, 2)
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    conv = Convention.parse(conv)
    if n >= len(_table):
        _extend(n)
    value = _table[n]
    if n == 1 and conv is Convention.REDEFINED:
        return -value
    return value


def bernoulli_table(n: int, conv: Convention | str = Convention.CLASSICAL) -> list[Fraction]:
    """B_0 .. B_n as a list (one lock acquisition instead of n)."""
    if n >= len(_table):
        _extend(n)
    out = _table[: n + 1]
    if n >= 1 and Convention.parse(conv) is Convention.REDEFINED:
        out[1] = -out[1]
    return out


def egf_coefficients(count: int, conv: Convention | str = Convention.CLASSICAL) -> list[Fraction]:
    """B_0 .. B_{count-1} from the exponential generating function.

    The series ``sum z^k/(k+1)!`` of ``(e^z - 1)/z`` is inverted term by term
    and coefficient ``k`` is scaled by ``k!``.  Under the redefined
    convention coefficient ``k`` also picks up ``(-1)^k``.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    conv = Convention.parse(conv)
    f = [Fraction(1, factorial(k + 1)) for k in range(count)]
    g = [Fraction(1)]
    for k in range(1, count):
        g.append(-sum(f[j] * g[k - j] for j in range(1, k + 1)))
    out = [g[k] * factorial(k) for k in range(count)]
    if conv is Convention.REDEFINED:
        out = [-v if k % 2 else v for k, v in enumerate(out)]
    return out


def zeta_even_exact(n: int) -> Fraction:
    """Rational r with zeta(2n) = r * pi^(2n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sign = -1 if n % 2 else 1
    return -Fraction(2 ** (2 * n), 2) * sign * bernoulli(2 * n) / factorial(2 * n)


def zeta_neg_int(n: int) -> Fraction:
    """zeta(-n) = -B_{n+1}/(n+1), redefined convention so zeta(0) = -1/2."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return -bernoulli(n + 1, Convention.REDEFINED) / (n + 1)
