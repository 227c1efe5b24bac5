"""Command line front end.

Every command produces one or more tables. With ``--out DIR`` each table
is written to ``DIR/<name>.csv`` (or ``.json``); otherwise tables go to
stdout. Exit status: 0 ok, 2 invalid input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .errors import GammaDomainError, GammaRangeError
from .gamma import capacity_estimate, parse_model
from .io import csv_text, emit_json, write_text
from .julia import compute_julia_coefficients, julia_widom_factors
from .quadrature import MAX_QUAD_SIZE, JacobiTruncation, eigen_first_components, reliability
from .recurrence import MAX_COUNT, compute_coefficients
from .spacing import prescribed_ratio, spacing_report
from .spectrum import dyadic_match, power_spectrum, top_peaks
from .widom import CAPACITY_TOL, widom_series
from .zeros import MAX_LEVEL, exact_zeros

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 2, 3


@dataclass
class Table:
    name: str
    header: tuple
    rows: list

    def columns(self) -> dict:
        cols = list(zip(*self.rows)) if self.rows else [()] * len(self.header)
        return {h: list(c) for h, c in zip(self.header, cols)}


class UsageError(ValueError):
    pass


def _levels(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo..hi, got {text!r}") from None
    if hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"empty level range {text!r}")
    return range(lo_i, hi_i + 1)


def _int_list(text: str) -> list[int]:
    try:
        out = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _or(value, default):
    return default if value is None else value


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise UsageError(msg)


# commands -------------------------------------------------------------------

def cmd_model(args) -> list[Table]:
    model = parse_model(args.spec)
    est = capacity_estimate(model, args.tol)
    n = _or(args.count, 64)
    _need(n >= 1, "--count must be >= 1")
    if model.length is not None:
        n = min(n, model.length)
    eps = [model.epsilon(s) for s in range(1, n + 1)]
    rows = [
        ("spec", model.spec()),
        ("formula", model.describe()),
        ("gamma_1", model.gamma(1)),
        ("epsilon_1", eps[0]),
        ("log_capacity", est.log_value),
        ("capacity", est.value),
        ("capacity_terms", est.terms),
        ("capacity_tail_bound", est.tail_bound),
        ("capacity_converged", est.converged),
        (f"sum_sqrt_epsilon_{n}", math.fsum(math.sqrt(e) for e in eps)),
    ]
    return [Table("model", ("field", "value"), rows)]


def cmd_coeffs(args) -> list[Table]:
    n = _or(args.count, 1024)
    _need(1 <= n <= MAX_COUNT, f"--count must be in 1..{MAX_COUNT}")
    table = compute_coefficients(parse_model(args.spec), n)
    rows = [(i + 1, a, math.log(a)) for i, a in enumerate(table.a.tolist())]
    return [Table("coeffs", ("n", "a", "log_a"), rows)]


def cmd_zeros(args) -> list[Table]:
    s = _or(args.level, 4)
    _need(1 <= s <= MAX_LEVEL, f"--level must be in 1..{MAX_LEVEL}")
    z = exact_zeros(parse_model(args.spec), s).zeros
    return [Table("zeros", ("k", "x"), list(zip(range(1, len(z) + 1), z.tolist())))]


def cmd_quad(args) -> list[Table]:
    s = _or(args.level, 4)
    _need(0 <= s and (1 << s) <= MAX_QUAD_SIZE, f"--level must be in 0..{MAX_QUAD_SIZE.bit_length() - 1}")
    size = 1 << s
    model = parse_model(args.spec)
    table = compute_coefficients(model, max(size - 1, 1))
    rule = eigen_first_components(JacobiTruncation.from_table(table, size), tol=args.tol or 2.0**-52)
    rows = list(zip(range(1, size + 1), rule.nodes.tolist(), rule.weights.tolist()))
    return [Table("quad", ("k", "node", "weight"), rows)]


def cmd_check(args) -> list[Table]:
    levels = args.levels or range(1, 15)
    _need(levels[0] >= 1 and (1 << levels[-1]) <= MAX_QUAD_SIZE, "--levels must lie in 1..14")
    model = parse_model(args.spec)
    table = compute_coefficients(model, (1 << levels[-1]) - 1 or 1)
    reports = [reliability(model, n, table, tol=args.tol or 2.0**-52) for n in levels]
    return [Table("reliability", ("n", "R1", "R2"), [(r.n, r.R1, r.R2) for r in reports])]


def _widom(model, n):
    table = compute_coefficients(model, n)
    log_cap = capacity_estimate(model, CAPACITY_TOL).log_value
    return table, widom_series(table, log_cap)


def cmd_widom(args) -> list[Table]:
    n = _or(args.count, MAX_COUNT)
    _need(1 <= n <= MAX_COUNT, f"--count must be in 1..{MAX_COUNT}")
    _, series = _widom(parse_model(args.spec), n)
    rows = list(zip(range(1, n + 1), series.w2.tolist(), series.logw2.tolist()))
    return [Table("widom", ("n", "w2", "log_w2"), rows)]


def cmd_spectrum(args) -> list[Table]:
    size = _or(args.size, 1 << 14)
    _need(4 <= size <= MAX_COUNT and size & (size - 1) == 0, "--size must be a power of two in 4..2^20")
    model = parse_model(args.spec)
    if args.input == "coeffs":
        x = compute_coefficients(model, size).a
    else:
        x = _widom(model, size)[1].w2
        _need(bool(np.all(np.isfinite(x))), "Widom series overflows; reduce --size")
    report = power_spectrum(x)
    peaks = top_peaks(report, args.top) if not report.zero_signal else []
    flags = dyadic_match([f for f, _ in peaks], args.max_denom_exp, size=size)
    return [
        Table("spectrum", ("freq", "power"), list(zip(report.freqs.tolist(), report.power.tolist()))),
        Table(
            "peaks",
            ("rank", "freq", "power", "is_dyadic"),
            [(i + 1, f, p, d) for i, ((f, p), d) in enumerate(zip(peaks, flags))],
        ),
    ]


def cmd_spacing(args) -> list[Table]:
    levels = args.levels or range(3, 15)
    ratios = args.ratios or [2, 6]
    _need(levels[0] >= 2 and levels[-1] <= MAX_LEVEL, f"--levels must lie in 2..{MAX_LEVEL}")
    model = parse_model(args.spec)
    spacing_rows, ratio_rows = [], []
    for s in levels:
        z = exact_zeros(model, s)
        rep = spacing_report(z)
        spacing_rows.append((rep.N, rep.max_ratio, rep.min_gap))
        for r in ratios:
            if 1 <= r <= rep.N // 2:
                ratio_rows.append((rep.N, r, prescribed_ratio(z, r)))
    return [
        Table("spacing", ("N", "A_N", "minGap"), spacing_rows),
        Table("ratios", ("N", "s", "ratio"), ratio_rows),
    ]


def cmd_julia(args) -> list[Table]:
    n = _or(args.count, 16)
    _need(1 <= n <= MAX_COUNT, f"--count must be in 1..{MAX_COUNT}")
    _need(args.c is not None, "--c is required")
    table = compute_julia_coefficients(args.c, n)
    a2 = table.a2.tolist()
    return [
        Table("julia_coeffs", ("n", "a_squared", "a"), [(i + 1, v, math.sqrt(v)) for i, v in enumerate(a2)]),
        Table("julia_widom", ("n", "w2"), julia_widom_factors(table)),
    ]


COMMANDS = {
    "model": cmd_model,
    "coeffs": cmd_coeffs,
    "zeros": cmd_zeros,
    "quad": cmd_quad,
    "check": cmd_check,
    "widom": cmd_widom,
    "spectrum": cmd_spectrum,
    "spacing": cmd_spacing,
    "julia": cmd_julia,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cantorjacobi",
        description="Jacobi matrices, quadrature and spectra for weakly equilibrium Cantor sets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", default="model1", help="model1..4, powerlaw:p=,q=, const:g=, explicit:...")
    common.add_argument("--count", type=int)
    common.add_argument("--level", type=int)
    common.add_argument("--levels", type=_levels, help="lo..hi")
    common.add_argument("--ratios", type=_int_list, help="comma-separated pair indices")
    common.add_argument("--c", type=float)
    common.add_argument("--size", type=int)
    common.add_argument("--top", type=int, default=10)
    common.add_argument("--max-denom-exp", type=int, default=4)
    common.add_argument("--input", choices=("coeffs", "widom"), default="coeffs")
    common.add_argument("--out", type=Path, help="output directory (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--tol", type=float, default=None)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def _render(table: Table, fmt: str) -> str:
    if fmt == "json":
        if table.header == ("field", "value"):
            return emit_json(dict(table.rows)) + "\n"
        return emit_json(table.columns()) + "\n"
    return csv_text(table.header, table.rows)


def run(args) -> int:
    if args.tol is None:
        args.tol = 1e-14 if args.command == "model" else None
    elif not args.tol > 0:
        raise UsageError("--tol must be positive")
    if args.top < 1:
        raise UsageError("--top must be >= 1")
    tables = COMMANDS[args.command](args)
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        for t in tables:
            write_text(args.out / f"{t.name}.{args.format}", _render(t, args.format))
    else:
        for i, t in enumerate(tables):
            if len(tables) > 1:
                sys.stdout.write(("\n" if i else "") + f"# {t.name}.{args.format}\n")
            sys.stdout.write(_render(t, args.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ArithmeticError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (UsageError, GammaDomainError, GammaRangeError, ValueError, IndexError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
