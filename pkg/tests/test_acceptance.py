"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the summary lines;
they are also printed without ``-s`` via ``capsys.disabled()``.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from conftest import MODELS
from cantorjacobi.gamma import GammaModel, level_intervals, log_capacity, log_norm_dyadic_table
from cantorjacobi.julia import compute_julia_coefficients, julia_dyadic_decay
from cantorjacobi.quadrature import (
    JacobiTruncation,
    eigen_first_components,
    interlacing_check,
    reliability,
)
from cantorjacobi.recurrence import compute_coefficients, min_prefix_check
from cantorjacobi.spacing import prescribed_ratio, small_gamma_bound_check, spacing_report
from cantorjacobi.spectrum import dyadic_match, fft_radix2, power_spectrum, top_peaks
from cantorjacobi.widom import dyadic_gap_bound, widom_series
from cantorjacobi.zeros import exact_zeros


@pytest.fixture
def verdict(capsys):
    def report(number, title, failures, detail=""):
        ok = not failures
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}"
        if detail:
            line += f" [{detail}]"
        with capsys.disabled():
            print("\n" + line)
            for f in failures[:10]:
                print(f"    {f}")
        assert ok, "; ".join(failures[:10])

    return report


@pytest.fixture(scope="module")
def rules():
    """Gauss rules, exact zeros and timings for every model and n = 1..12."""
    out, seconds = {}, {}
    for i in MODELS:
        model = GammaModel.model(i)
        start = time.perf_counter()
        table = compute_coefficients(model, (1 << 12) - 1)
        for n in range(1, 13):
            J = JacobiTruncation.from_table(table, 1 << n)
            out[i, n] = (eigen_first_components(J), exact_zeros(model, n).zeros, table)
        seconds[i] = time.perf_counter() - start
    return out, seconds


def test_criterion_1_norm_identity(verdict):
    failures, worst, slowest = [], 0.0, 0.0
    for i in MODELS:
        model = GammaModel.model(i)
        start = time.perf_counter()
        table = compute_coefficients(model, 1 << 20)
        slowest = max(slowest, time.perf_counter() - start)
        norms = log_norm_dyadic_table(model, 20)
        for s in range(21):
            target = 2.0 * norms[s]
            err = abs(table.prefix(1 << s) - target) / abs(target)
            worst = max(worst, err)
            if not err <= 1e-10:
                failures.append(f"model{i} s={s}: relative error {err:.3g}")
    if slowest >= 5.0:
        failures.append(f"2^20 coefficients took {slowest:.2f} s")
    verdict(1, "norm-product identity, models 1-4, s <= 20", failures,
            f"max rel err {worst:.2e}, slowest 2^20 run {slowest:.2f} s")


def test_criterion_2_eigen_zero_cross_validation(verdict, rules):
    built, seconds = rules
    failures, worst = [], 0.0
    for n in range(1, 13):
        rule, zeros, _ = built[1, n]
        r1 = float(np.mean(np.abs(rule.nodes - zeros)))
        worst = max(worst, r1)
        if not r1 <= 1e-8:
            failures.append(f"n={n}: R1 = {r1:.3g}")
    two = reliability(GammaModel.model(1), 1)
    if not two.R1 <= 1e-14:
        failures.append(f"2x2 case R1 = {two.R1:.3g}")
    if seconds[1] >= 60:
        failures.append(f"model1 pipeline took {seconds[1]:.1f} s")
    verdict(2, "Model 1 R1 <= 1e-8 for n <= 12, 2x2 exact", failures,
            f"max R1 {worst:.2e}, 2x2 R1 {two.R1:.1e}, {seconds[1]:.1f} s")


def test_criterion_3_christoffel_uniformity(verdict, rules):
    built, _ = rules
    failures, worst = [], 0.0
    for i in MODELS:
        for n in range(1, 13):
            rule, _, table = built[i, n]
            w, x = rule.weights, rule.nodes
            r2 = float(np.mean(np.abs(1.0 / len(w) - w)))
            worst = max(worst, r2)
            if not r2 <= 1e-8:
                failures.append(f"model{i} n={n}: R2 = {r2:.3g}")
            b1, a1 = table.b_value, table.coefficient(1)
            checks = [
                ("sum of weights", math.fsum(w), 1.0, 1e-12),
                ("first moment", math.fsum(w * x), b1, 1e-10),
                ("second moment", math.fsum(w * x * x), b1 * b1 + a1 * a1, 1e-10),
            ]
            for name, got, want, tol in checks:
                if not abs(got - want) <= tol:
                    failures.append(f"model{i} n={n}: {name} off by {abs(got - want):.3g}")
    verdict(3, "R2 <= 1e-8, weights and moments, models 1-4, n <= 12", failures,
            f"max R2 {worst:.2e}")


def test_criterion_4_julia(verdict):
    start = time.perf_counter()
    failures = []
    expected = [Fraction(3), Fraction(1), Fraction(2), Fraction(1, 2), Fraction(5, 2),
                Fraction(4, 5), Fraction(11, 5)]
    table = compute_julia_coefficients(3.0, 1 << 20)
    for k, want in enumerate(expected, start=1):
        if not abs(table.a2[k - 1] - float(want)) <= 1e-14:
            failures.append(f"a_{k}^2 = {table.a2[k - 1]!r}, expected {want}")
    root = math.sqrt(3.0)
    logw = 0.5 * np.cumsum(np.log(table.a2))
    for n in range(21):
        m = 1 << n
        w_top = math.exp(logw[m - 1])
        if not abs(w_top - root) <= 1e-12:
            failures.append(f"W2_(2^{n}) = {w_top!r}")
        w_below = math.exp(logw[m - 2]) if m > 1 else 1.0
        if not abs(w_below * math.sqrt(table.a2[m - 1]) - root) <= 1e-12:
            failures.append(f"W2_(2^{n}-1) a_(2^{n}) = {w_below * math.sqrt(table.a2[m - 1])!r}")
    decay = [a for _, a in julia_dyadic_decay(compute_julia_coefficients(2.5, 1 << 20))]
    if not all(y < x for x, y in zip(decay, decay[1:])) or len(decay) != 21:
        failures.append("a_(2^n) for c = 2.5 not strictly decreasing over n <= 20")
    elapsed = time.perf_counter() - start
    if elapsed >= 1.0:
        failures.append(f"took {elapsed:.2f} s")
    verdict(4, "Julia closed forms for c = 3 and decay for c = 2.5", failures, f"{elapsed:.2f} s")


FIG5_PEAKS = {0.5, 0.25, 0.75, 0.375, 0.625, 0.4375, 0.5625, 0.125, 0.875, 0.3125}


def test_criterion_5_spectrum(verdict):
    start = time.perf_counter()
    model = GammaModel.model(1)
    size = 1 << 14
    table = compute_coefficients(model, size)
    failures = []
    peaks = top_peaks(power_spectrum(table.a), 10)
    got = {f for f, _ in peaks}
    if got != FIG5_PEAKS:
        failures.append(f"coefficient peaks {sorted(got)}")
    w2 = widom_series(table, log_capacity(model)).w2
    wpeaks = [f for f, _ in top_peaks(power_spectrum(w2), 10)]
    on_grid = sum(dyadic_match(wpeaks, 4, size=size))
    if on_grid < 8:
        failures.append(f"only {on_grid} Widom peaks on the 1/16 grid: {wpeaks}")
    if 1.0 / size not in wpeaks:
        failures.append(f"no Widom peak at 1/2^14: {wpeaks}")
    elapsed = time.perf_counter() - start
    if elapsed >= 2.0:
        failures.append(f"took {elapsed:.2f} s")
    verdict(5, "Model 1 spectrum peaks and Widom-series peaks", failures,
            f"{on_grid}/10 Widom peaks dyadic, {elapsed:.2f} s")


def test_criterion_6_widom_bounds(verdict, tables_2_20, log_caps):
    failures, lowest = [], math.inf
    for i in MODELS:
        series = widom_series(tables_2_20[i], log_caps[i])
        for s in range(21):
            w = series.at(1 << s)
            lowest = min(lowest, w)
            if not w >= math.sqrt(2) - 1e-12:
                failures.append(f"model{i}: W2_(2^{s}) = {w!r}")
            if s >= 1:
                try:
                    dyadic_gap_bound(series, tables_2_20[i], log_caps[i], s)
                except AssertionError as exc:
                    failures.append(f"model{i}: {exc}")
    verdict(6, "W2_(2^s) >= sqrt(2) and the 2^s - 1 identity, s <= 20", failures,
            f"smallest W2_(2^s) {lowest:.6f}")


def test_criterion_7_dyadic_minimum(verdict, tables_2_14):
    failures = [
        f"model{i} n={n}: min(a_1..a_(2^n)) not uniquely at 2^n"
        for i in MODELS
        for n in range(15)
        if not min_prefix_check(tables_2_14[i], n)
    ]
    verdict(7, "prefix minimum at index 2^n, n <= 14, models 1-4", failures)


def test_criterion_8_spacing(verdict):
    failures = []
    model = GammaModel.model(1)
    zeros = {s: exact_zeros(model, s) for s in range(3, 15)}
    a_n = [spacing_report(zeros[s]).max_ratio for s in range(3, 15)]
    if not all(y > x for x, y in zip(a_n, a_n[1:])):
        failures.append(f"A_N not strictly increasing: {a_n}")
    bands = {}
    for r in (2, 6):
        bands[r] = abs(prescribed_ratio(zeros[14], r) / prescribed_ratio(zeros[13], r) - 1)
        if not bands[r] < 0.01:
            failures.append(f"ratio s={r}: band {bands[r]:.3g}")
    table = compute_coefficients(model, (1 << 12) - 1)
    for s in range(3, 13):
        eig = eigen_first_components(JacobiTruncation.from_table(table, 1 << s)).nodes
        exact = spacing_report(zeros[s]).max_ratio
        rel = abs(spacing_report(eig).max_ratio / exact - 1)
        if not rel <= 1e-6:
            failures.append(f"N=2^{s}: eigenvalue spacing off by {rel:.3g}")
    const = GammaModel.constant(1 / 32)
    # s = 1 has a single pair, so A_2 = 1 trivially
    for s in range(2, 11):
        try:
            small_gamma_bound_check(const, s)
        except AssertionError as exc:
            failures.append(str(exc))
    verdict(8, "Model 1 spacing growth, ratio bands, eigen agreement, small-gamma bound", failures,
            f"bands {bands[2]:.1e} / {bands[6]:.1e}")


def test_criterion_9_properties(verdict, tables_2_14):
    failures = []
    for i in MODELS:
        table = tables_2_14[i]
        for size in (2, 3, 5, 8, 17, 64, 100, 256, 1024):
            if not interlacing_check(JacobiTruncation.from_table(table, size)):
                failures.append(f"model{i}: interlacing fails at N={size}")
        x = table.a - table.a.mean()
        xhat = fft_radix2(x)
        lhs = float(np.sum(np.abs(xhat) ** 2))
        rhs = len(x) * float(np.sum(x * x))
        if not abs(lhs - rhs) <= 1e-9 * rhs:
            failures.append(f"model{i}: Parseval off by {abs(lhs / rhs - 1):.3g}")
        model = GammaModel.model(i)
        for s in range(1, 13):
            z = exact_zeros(model, s).zeros
            iv = level_intervals(model, s)
            inside = (z[:, None] >= iv[:, 0]) & (z[:, None] <= iv[:, 1])
            if len(z) != 1 << s or not np.array_equal(inside.sum(axis=0), np.ones(1 << s)):
                failures.append(f"model{i} s={s}: zeros not one per level interval")
    for g in (0.01, 1 / 32, 0.1, 0.2, 0.23, 0.2499):
        cap = math.exp(log_capacity(GammaModel.constant(g)))
        if not abs(cap - g) <= 1e-15:
            failures.append(f"Cap(const {g}) = {cap!r}")
    again = compute_coefficients(GammaModel.model(1), 1 << 14)
    if not again == tables_2_14[1]:
        failures.append("coefficient rerun differs")
    z1, z2 = exact_zeros(GammaModel.model(2), 10).zeros, exact_zeros(GammaModel.model(2), 10).zeros
    if z1.tobytes() != z2.tobytes():
        failures.append("zero rerun differs")
    verdict(9, "interlacing, Parseval, zero placement, constant capacity, determinism", failures)
