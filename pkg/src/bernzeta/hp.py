"""High-precision carriers shared by the analytic and reference modules."""

from __future__ import annotations

import enum
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Number

import mpmath

__all__ = [
    "Status",
    "EvalResult",
    "SeriesConfig",
    "PoleError",
    "context",
    "to_fraction",
    "hp",
    "working_precision",
    "err_value",
]

LOG2_10 = math.log2(10)


class PoleError(ArithmeticError):
    pass


class Status(enum.Enum):
    CONVERGED = "CONVERGED"
    TRUNCATED = "TRUNCATED"
    LIMIT_PATH = "LIMIT_PATH"
    POLE = "POLE"
    OUT_OF_REGION = "OUT_OF_REGION"


def err_value(x) -> mpmath.mpf:
    """Error estimates are 53-bit mpf so tiny bounds do not underflow to 0.0."""
    return mpmath.mpf(abs(x)) if not hasattr(x, "_mpf_") else +abs(x)


@dataclass(frozen=True)
class EvalResult:
    value: mpmath.mpc
    abs_err_est: mpmath.mpf
    terms_used: int
    status: Status
    prec: int = 53
    message: str = ""

    @property
    def usable(self) -> bool:
        return self.status not in (Status.POLE, Status.OUT_OF_REGION)

    @classmethod
    def failed(cls, status: Status, message: str, prec: int = 53) -> "EvalResult":
        return cls(mpmath.mpc(mpmath.nan, mpmath.nan), mpmath.inf, 0, status, prec, message)


def to_fraction(x) -> Fraction:
    """Exact rational for a real parameter; floats go through their repr so 0.1 means 1/10."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(str(x))


@dataclass(frozen=True)
class SeriesConfig:
    w: Fraction = Fraction(4)
    target_digits: int = 30
    n_max: int = 20000
    tol: float | None = None
    k_consec: int = 10
    limit_eps: float = 1e-8
    margin: float = 0.05
    # stop at the smallest term envelope once the outer terms start growing
    stop_on_divergence: bool = True
    _tol: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "w", to_fraction(self.w))
        if self.w <= 0:
            raise ValueError(f"w must be positive, got {self.w}")
        if self.target_digits < 1 or self.n_max < 1 or self.k_consec < 1:
            raise ValueError("target_digits, n_max and k_consec must be positive")
        if self.limit_eps <= 0 or self.margin < 0:
            raise ValueError("limit_eps must be positive and margin non-negative")
        tol = 10.0 ** (-self.target_digits) if self.tol is None else float(self.tol)
        if tol <= 0:
            raise ValueError("tol must be positive")
        object.__setattr__(self, "_tol", tol)

    @property
    def tolerance(self) -> float:
        return self._tol

    def replace(self, **changes) -> "SeriesConfig":
        kw = {f: getattr(self, f) for f in
              ("w", "target_digits", "n_max", "tol", "k_consec", "limit_eps", "margin", "stop_on_divergence")}
        kw.update(changes)
        return SeriesConfig(**kw)


def working_precision(cfg: SeriesConfig) -> int:
    """Bits needed so cancellation in the inner sums cannot eat the target digits.

    The inner sums are bounded by (1 + 1/(2 pi w))^n in absolute terms, so
    that many extra bits are carried on top of the target plus 64 guard bits.
    """
    growth = cfg.n_max * math.log2(1 + 1 / (2 * math.pi * float(cfg.w)))
    return math.ceil(cfg.target_digits * LOG2_10) + math.ceil(growth) + 64


_local = threading.local()


def context(prec: int) -> mpmath.MPContext:
    """A thread-private mpmath context fixed at ``prec`` bits."""
    cache = getattr(_local, "contexts", None)
    if cache is None:
        cache = _local.contexts = {}
    ctx = cache.get(prec)
    if ctx is None:
        ctx = mpmath.MPContext()
        ctx.prec = prec
        cache[prec] = ctx
    return ctx


def hp(ctx: mpmath.MPContext, x) -> mpmath.mpc:
    """Convert ints, Fractions, floats, complex, strings, mp numbers or (re, im) pairs to a ctx.mpc."""
    if isinstance(x, Fraction):
        return ctx.mpc(ctx.mpf(x.numerator) / x.denominator)
    if isinstance(x, tuple) and len(x) == 2:
        return ctx.mpc(hp(ctx, x[0]).real, hp(ctx, x[1]).real)
    if isinstance(x, str):
        return ctx.mpc(ctx.mpmathify(x.replace(" ", "").replace("i", "j")))
    if isinstance(x, (Number, mpmath.mpf, mpmath.mpc)) or hasattr(x, "_mpf_") or hasattr(x, "_mpc_"):
        return ctx.mpc(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a high-precision complex")
