"""Convergence study: nested zeta against the Euler-Maclaurin oracle as n_max grows."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .analytic import zeta_nested
from .hp import EvalResult, SeriesConfig, err_value
from .reference import EmParams, zeta_euler_maclaurin

__all__ = ["DEFAULT_POINTS", "DEFAULT_N_MAX", "StudyRow", "convergence_study", "is_decreasing"]

DEFAULT_POINTS = ((Fraction(5, 2), Fraction(0)), (Fraction(7, 2), Fraction(0)), (Fraction(2), Fraction(3)))
DEFAULT_N_MAX = (100, 1000, 10000)


@dataclass(frozen=True)
class StudyRow:
    s: object
    n_max: int
    result: EvalResult
    oracle: EvalResult
    rel_dev: mpmath.mpf


def convergence_study(points=DEFAULT_POINTS, n_max_values=DEFAULT_N_MAX,
                      cfg: SeriesConfig | None = None) -> list[StudyRow]:
    cfg = cfg or SeriesConfig()
    em = EmParams(precision=math.ceil(cfg.target_digits * math.log2(10)) + 64)
    rows = []
    for s in points:
        oracle = zeta_euler_maclaurin(s, em)
        for n_max in n_max_values:
            r = zeta_nested(s, cfg.replace(n_max=n_max))
            rel = err_value(r.value - oracle.value) / err_value(oracle.value)
            rows.append(StudyRow(s, n_max, r, oracle, rel))
    return rows


def is_decreasing(rows: list[StudyRow], s) -> bool:
    """Whether the deviation at ``s`` strictly shrinks as n_max increases."""
    devs = [r.rel_dev for r in sorted((r for r in rows if r.s == s), key=lambda r: r.n_max)]
    return all(b < a for a, b in zip(devs, devs[1:]))
