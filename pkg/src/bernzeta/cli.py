"""Command-line interface: ``bernzeta {bern,tree-row,zeta,bfunc-plot,sweep-w,study}``.

Every option can also be set through an environment variable named
``BERNZETA_`` plus the option name in upper case with dashes as underscores
(``--n-max`` -> ``BERNZETA_N_MAX``).  Command-line flags take precedence.

Exit status: 0 on success, 1 when a result is an error (pole, out of region,
node budget, diverging oracle), 2 for usage errors, 3 when ``bern --method
all`` finds disagreeing methods.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

import mpmath

from . import tree
from .analytic import bernoulli_function, zeta_nested
from .exact import Convention, bernoulli, egf_coefficients
from .hp import EvalResult, SeriesConfig, Status, to_fraction
from .reference import EmParams, zeta_dirichlet, zeta_euler_maclaurin

__all__ = ["main", "build_parser", "format_decimal", "format_rational"]

ENV_PREFIX = "BERNZETA_"
EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2, 3

ZETA_COLUMNS = ["s_re", "s_im", "value_re", "value_im", "abs_err_est", "terms_used", "status"]
SWEEP_COLUMNS = ["w"] + ZETA_COLUMNS
PLOT_COLUMNS = ["s", "re", "im", "abs_err_est", "terms_used", "status"]
BERN_COLUMNS = ["n", "convention", "method", "value", "verdict"]
ROW_COLUMNS = ["n", "index", "sign", "factorials", "value"]
SUM_COLUMNS = ["n", "row_sum"]
STUDY_COLUMNS = ["s_re", "s_im", "n_max", "value_re", "value_im", "abs_err_est", "terms_used",
                 "status", "oracle_re", "oracle_im", "rel_dev"]

BERN_METHODS = ("recurrence", "tree", "det", "egf")


# -- number formatting ---------------------------------------------------------

def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def format_decimal(x, digits: int) -> str:
    """``digits`` significant digits, round-half-even from the exact binary value."""
    x = mpmath.mpf(x) if not hasattr(x, "_mpf_") else x
    if mpmath.isnan(x):
        return "nan"
    if mpmath.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0." + "0" * (digits - 1) + "e+0" if digits > 1 else "0e+0"
    sign, man, exp, _ = x._mpf_  # man_exp drops the sign
    man, exp = (-int(man) if sign else int(man)), int(exp)
    num, den = (man << exp, 1) if exp >= 0 else (man, 1 << -exp)
    with localcontext() as dctx:
        dctx.prec = digits
        dctx.rounding = ROUND_HALF_EVEN
        d = Decimal(num) / Decimal(den)
    return format(d, f".{digits - 1}e")


def format_error(x) -> str:
    return format_decimal(x, 3)


# -- option handling -------------------------------------------------------------

def _env(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_fraction(text: str) -> Fraction:
    try:
        v = to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text}")
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _number(text: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options (environment: BERNZETA_<NAME>)")
    g.add_argument("--digits", type=_positive_int, default=_env("digits", "30"),
                   help="target significant digits (default 30)")
    g.add_argument("--w", type=_positive_fraction, default=_env("w", "4"),
                   help="series parameter w > 0; the series needs Re(s) > 1/w (default 4)")
    g.add_argument("--n-max", type=_positive_int, default=_env("n-max", "20000"),
                   help="cap on the outer series index (default 20000)")
    g.add_argument("--limit-eps", type=float, default=_env("limit-eps", "1e-8"),
                   help="offset used for the limit at odd integers (default 1e-8)")
    g.add_argument("--convention", choices=["classical", "redefined"],
                   default=_env("convention", "classical"),
                   help="B_1 = -1/2 (classical) or +1/2 (redefined) for displayed B_n")
    g.add_argument("--budget", type=_positive_int, default=_env("budget", str(tree.DEFAULT_NODE_BUDGET)),
                   help="tree node budget (default 2^22)")
    g.add_argument("--format", choices=["text", "csv", "json"], default=_env("format", "text"))
    g.add_argument("--jobs", type=_positive_int, default=_env("jobs", "1"),
                   help="worker processes for grids and sweeps (output order is unaffected)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="bernzeta", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bern", parents=[common], help="Bernoulli number B_n")
    p.add_argument("n", type=int)
    p.add_argument("--method", choices=BERN_METHODS + ("all",), default="recurrence")
    p.set_defaults(func=cmd_bern)

    p = sub.add_parser("tree-row", parents=[common], help="terms and exact sum of a tree row")
    p.add_argument("n", type=int)
    p.add_argument("--sum-only", action="store_true")
    p.set_defaults(func=cmd_tree_row)

    p = sub.add_parser("zeta", parents=[common], help="zeta(s) by one method")
    p.add_argument("s_re", type=_number)
    p.add_argument("s_im", type=_number, nargs="?", default=Fraction(0))
    p.add_argument("--method", choices=["nested", "em", "dirichlet"], default="nested")
    p.add_argument("--n-cut", type=_positive_int, default=_env("n-cut", "200"),
                   help="Euler-Maclaurin cut-off N (default 200)")
    p.add_argument("--m-order", type=_positive_int, default=_env("m-order", "12"),
                   help="Euler-Maclaurin correction order M (default 12)")
    p.add_argument("--terms", type=_positive_int, default=_env("terms", "100000"),
                   help="Dirichlet partial-sum length (default 100000)")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("bfunc-plot", parents=[common], help="Bernoulli function on a real grid")
    p.add_argument("s_min", type=_number)
    p.add_argument("s_max", type=_number)
    p.add_argument("step", type=_positive_fraction)
    p.set_defaults(func=cmd_bfunc_plot)

    p = sub.add_parser("sweep-w", parents=[common], help="nested zeta(s) for several w")
    p.add_argument("s_re", type=_number)
    p.add_argument("s_im", type=_number, nargs="?", default=Fraction(0))
    p.add_argument("--w-list", default=_env("w-list", "1,2,4,10"),
                   help="comma-separated w values (default 1,2,4,10)")
    p.set_defaults(func=cmd_sweep_w)

    p = sub.add_parser("study", parents=[common], help="nested zeta vs Euler-Maclaurin as n_max grows")
    p.add_argument("--points", default=_env("points", "2.5,3.5,2+3i"),
                   help="comma-separated s values, complex as a+bi (default 2.5,3.5,2+3i)")
    p.add_argument("--n-max-list", default=_env("n-max-list", "100,1000,10000"))
    p.add_argument("--out", help="also write the CSV to this file")
    p.set_defaults(func=cmd_study)
    return parser


def _config(args) -> SeriesConfig:
    return SeriesConfig(w=args.w, target_digits=args.digits, n_max=args.n_max, limit_eps=args.limit_eps)


# -- output --------------------------------------------------------------------

class Emitter:
    """Writes records as text blocks, CSV rows or JSON lines."""

    def __init__(self, fmt: str, columns: list[str], out=None):
        self.fmt = fmt
        self.columns = columns
        self.out = out or sys.stdout
        self._csv = None
        if fmt == "csv":
            self._csv = csv.writer(self.out, lineterminator="\n")
            self._csv.writerow(columns)

    def emit(self, record: dict, extra: dict | None = None) -> None:
        if self.fmt == "csv":
            self._csv.writerow([record[c] for c in self.columns])
        elif self.fmt == "json":
            self.out.write(json.dumps({c: record[c] for c in self.columns}) + "\n")
        else:
            items = {**record, **(extra or {})}
            width = max(len(k) for k in items)
            for k, v in items.items():
                self.out.write(f"{k.ljust(width)} : {v}\n")
            self.out.write("\n")


def _result_fields(r: EvalResult, digits: int) -> dict:
    return {
        "value_re": format_decimal(r.value.real, digits),
        "value_im": format_decimal(r.value.imag, digits),
        "abs_err_est": format_error(r.abs_err_est),
        "terms_used": r.terms_used,
        "status": r.status.value,
    }


def _is_error(r: EvalResult) -> bool:
    return r.status in (Status.POLE, Status.OUT_OF_REGION)


def _text_of(q: Fraction) -> str:
    """Exact decimal echo of an input; inputs come from decimal text so this terminates."""
    if q.denominator == 1:
        return str(q.numerator)
    den, twos, fives = q.denominator, 0, 0
    while den % 2 == 0:
        den, twos = den // 2, twos + 1
    while den % 5 == 0:
        den, fives = den // 5, fives + 1
    if den != 1:
        return format_decimal(mpmath.mpf(q.numerator) / q.denominator, 17)
    places = max(twos, fives)
    scaled = q * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _complex_text(re: Fraction, im: Fraction) -> str:
    if im == 0:
        return _text_of(re)
    sign = "-" if im < 0 else "+"
    return f"{_text_of(re)}{sign}{_text_of(abs(im))}i"


def _parse_complex(text: str) -> tuple[Fraction, Fraction]:
    t = text.strip().replace(" ", "")
    if not t.endswith("i"):
        return to_fraction(t), Fraction(0)
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    while cut > 0 and body[cut - 1] in "eE":
        cut = max(body.rfind("+", 0, cut - 1), body.rfind("-", 0, cut - 1))
    if cut <= 0:
        return Fraction(0), to_fraction(body or "1")
    im = body[cut:]
    return to_fraction(body[:cut]), to_fraction(im if im not in "+-" else im + "1")


def _pool_map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# -- commands ------------------------------------------------------------------

def _bern_by(method: str, n: int, conv: Convention, budget: int) -> Fraction:
    if method == "recurrence":
        return bernoulli(n, conv)
    if method == "egf":
        return egf_coefficients(n + 1, conv)[n]
    if method == "tree":
        if n < 2:
            raise LookupError("the tree method covers n >= 2")
        value = tree.bernoulli_via_tree(n, budget)
    else:
        value = Fraction(1) if n == 0 else math.factorial(n) * tree.s_det(n)
    # both bridges give the classical sign; only B_1 differs between conventions
    return -value if n == 1 and conv is Convention.REDEFINED else value


def cmd_bern(args, out) -> int:
    if args.n < 0:
        print("error: n must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    conv = Convention.parse(args.convention)
    methods = BERN_METHODS if args.method == "all" else (args.method,)
    em = Emitter(args.format, BERN_COLUMNS, out)
    results, code = {}, EXIT_OK
    for m in methods:
        t0 = time.perf_counter()
        try:
            results[m] = _bern_by(m, args.n, conv, args.budget)
        except LookupError as exc:
            results[m] = None
            if args.method != "all":
                print(f"error: {exc}", file=sys.stderr)
                code = EXIT_ERROR
        except (tree.BudgetExceeded, tree.CalibrationMismatch) as exc:
            results[m] = None
            print(f"error: {m}: {exc}", file=sys.stderr)
            code = EXIT_ERROR
        results[m + "_ms"] = (time.perf_counter() - t0) * 1e3
    values = {results[m] for m in methods if results[m] is not None}
    verdict = ""
    if args.method == "all":
        verdict = "MATCH" if len(values) == 1 else "MISMATCH"
        if verdict == "MISMATCH" and code == EXIT_OK:
            code = EXIT_MISMATCH
    for m in methods:
        v = results[m]
        em.emit({"n": args.n, "convention": conv.value, "method": m,
                 "value": format_rational(v) if v is not None else "n/a", "verdict": verdict},
                {"wall_time_ms": f"{results[m + '_ms']:.3f}"})
    return code


def cmd_tree_row(args, out) -> int:
    if args.n < 0:
        print("error: n must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    t0 = time.perf_counter()
    try:
        if args.sum_only:
            total = tree.s_row_sum(args.n, args.budget)
            Emitter(args.format, SUM_COLUMNS, out).emit(
                {"n": args.n, "row_sum": format_rational(total)},
                {"wall_time_ms": f"{(time.perf_counter() - t0) * 1e3:.3f}"})
            return EXIT_OK
        row = tree.tree_row(args.n, args.budget)
    except tree.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.format == "text":
        for i, t in enumerate(row.terms):
            out.write(f"{i:>6}  {t}\n")
        out.write(f"S_{args.n} = {format_rational(row.total())}\n")
        out.write(f"wall_time_ms = {(time.perf_counter() - t0) * 1e3:.3f}\n")
        return EXIT_OK
    em = Emitter(args.format, ROW_COLUMNS, out)
    for i, t in enumerate(row.terms):
        em.emit({"n": args.n, "index": i, "sign": "+" if t.sign > 0 else "-",
                 "factorials": " ".join(str(a) for a in t.args), "value": format_rational(t.value)})
    em.emit({"n": args.n, "index": "total", "sign": "", "factorials": "",
             "value": format_rational(row.total())})
    return EXIT_OK


def _zeta_by(method: str, s, args) -> EvalResult:
    digits = args.digits
    bits = math.ceil(digits * math.log2(10))
    if method == "nested":
        return zeta_nested(s, _config(args))
    if method == "em":
        return zeta_euler_maclaurin(s, EmParams(args.n_cut, args.m_order, bits + 64))
    return zeta_dirichlet(s, args.terms, 53 if digits <= 15 else bits + 16)


def cmd_zeta(args, out) -> int:
    s = (args.s_re, args.s_im)
    t0 = time.perf_counter()
    try:
        r = _zeta_by(args.method, s, args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    ms = (time.perf_counter() - t0) * 1e3
    record = {"s_re": _text_of(args.s_re), "s_im": _text_of(args.s_im), **_result_fields(r, args.digits)}
    extra = {"method": args.method, "w": _text_of(args.w), "digits": args.digits,
             "message": r.message or "-", "wall_time_ms": f"{ms:.3f}"}
    Emitter(args.format, ZETA_COLUMNS, out).emit(record, extra)
    if _is_error(r):
        print(f"error: {r.status.value}: {r.message}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _plot_point(job) -> dict:
    s, cfg, digits = job
    r = bernoulli_function(s, cfg)
    return {"s": _text_of(s), "re": format_decimal(r.value.real, digits),
            "im": format_decimal(r.value.imag, digits), "abs_err_est": format_error(r.abs_err_est),
            "terms_used": r.terms_used, "status": r.status.value}


def cmd_bfunc_plot(args, out) -> int:
    cfg = _config(args)
    grid = []
    s = args.s_min
    while s <= args.s_max:
        grid.append(s)
        s += args.step
    em = Emitter(args.format, PLOT_COLUMNS, out)
    for rec in _pool_map(_plot_point, [(x, cfg, args.digits) for x in grid], args.jobs):
        em.emit(rec)
    return EXIT_OK


def _sweep_point(job) -> dict:
    s, cfg, digits = job
    r = zeta_nested(s, cfg)
    return {"w": _text_of(cfg.w), "s_re": _text_of(s[0]), "s_im": _text_of(s[1]),
            **_result_fields(r, digits)}


def cmd_sweep_w(args, out) -> int:
    try:
        ws = [_positive_fraction(x) for x in args.w_list.split(",") if x.strip()]
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    base = _config(args)
    jobs = [((args.s_re, args.s_im), base.replace(w=w), args.digits) for w in ws]
    em = Emitter(args.format, SWEEP_COLUMNS, out)
    for rec in _pool_map(_sweep_point, jobs, args.jobs):
        em.emit(rec)
    return EXIT_OK


def cmd_study(args, out) -> int:
    from .study import convergence_study

    try:
        points = [_parse_complex(p) for p in args.points.split(",") if p.strip()]
        n_values = [_positive_int(x) for x in args.n_max_list.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rows = convergence_study(points, n_values, _config(args))
    buf = io.StringIO()
    em = Emitter("csv" if args.out else args.format, STUDY_COLUMNS, buf)
    for row in rows:
        em.emit({"s_re": _text_of(row.s[0]), "s_im": _text_of(row.s[1]), "n_max": row.n_max,
                 **_result_fields(row.result, args.digits),
                 "oracle_re": format_decimal(row.oracle.value.real, args.digits),
                 "oracle_im": format_decimal(row.oracle.value.imag, args.digits),
                 "rel_dev": format_error(row.rel_dev)})
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
        if args.format == "csv":
            out.write(buf.getvalue())
        else:
            out.write(f"wrote {len(rows)} rows to {args.out}\n")
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return args.func(args, out)
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
