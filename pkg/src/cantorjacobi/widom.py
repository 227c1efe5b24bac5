"""Widom-Hilbert factors W^2_n = a_1 ... a_n / Cap^n, kept in log scale."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gamma import LOG_TINY
from .recurrence import CoefficientTable

__all__ = [
    "WidomSeries",
    "widom_series",
    "dyadic_gap_bound",
    "growth_report",
    "CAPACITY_TOL",
]

# keeps n * log Cap accurate to ~1e-8 at n = 2^20
CAPACITY_TOL = 1e-14

LOG_HUGE = math.log(np.finfo(float).max)


def _split(x: float) -> tuple[float, float]:
    """x = hi + lo exactly, hi carrying at most 26 significant bits."""
    c = 134217729.0 * x  # 2^27 + 1
    hi = c - (c - x)
    return hi, x - hi


@dataclass(frozen=True, eq=False)
class WidomSeries:
    """``logw2[n - 1]`` is log W^2_n; ``w2`` is its exponential (inf on overflow)."""

    logw2: np.ndarray
    log_capacity: float

    @property
    def w2(self) -> np.ndarray:
        with np.errstate(over="ignore"):
            return np.exp(self.logw2)

    def __len__(self):
        return len(self.logw2)

    def log_at(self, n: int) -> float:
        return float(self.logw2[n - 1])

    def at(self, n: int) -> float:
        v = self.log_at(n)
        return math.inf if v > LOG_HUGE else math.exp(v)


def widom_series(table: CoefficientTable, log_cap: float, count: int | None = None) -> WidomSeries:
    """log W^2_n = S_n / 2 - n log Cap for n = 1..count.

    ``n * log_cap`` is formed exactly as two doubles (n < 2^27 times a
    26-bit head is exact), and the large cancelling parts are subtracted
    before the small corrections are added.
    """
    n_max = table.size if count is None else count
    if n_max > table.size:
        raise ValueError(f"count {n_max} exceeds table size {table.size}")
    if n_max >= 1 << 27:
        raise ValueError("count too large for the exact product split")
    n = np.arange(1, n_max + 1, dtype=float)
    c_hi, c_lo = _split(log_cap)
    p_hi = n * c_hi
    p_lo = n * c_lo
    s_hi = 0.5 * table.prefix_hi[1 : n_max + 1]
    s_lo = 0.5 * table.prefix_lo[1 : n_max + 1]
    head = s_hi - p_hi
    # p_lo is itself exact but may be large; fold it in before s_lo
    logw2 = (head - p_lo) + s_lo
    return WidomSeries(logw2, log_cap)


def dyadic_gap_bound(
    series: WidomSeries, table: CoefficientTable, log_cap: float, s: int
) -> tuple[float, float]:
    """(W^2_{2^s - 1}, sqrt(2) Cap / a_{2^s}).

    Also checks W^2_{2^s - 1} = W^2_{2^s} Cap / a_{2^s} (to 1e-12 relative)
    and the lower bound lhs >= rhs.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    m = 1 << s
    if m > len(series):
        raise ValueError(f"2^{s} exceeds the series length {len(series)}")
    log_a = math.log(table.coefficient(m))
    lhs_log = series.log_at(m - 1)
    via_top = series.log_at(m) + log_cap - log_a
    if abs(math.expm1(lhs_log - via_top)) > 1e-12:
        raise AssertionError(f"identity W2(2^s-1) = W2(2^s) Cap / a(2^s) fails at s={s}")
    rhs_log = 0.5 * math.log(2.0) + log_cap - log_a
    lhs, rhs = _safe_exp(lhs_log), _safe_exp(rhs_log)
    if lhs < rhs * (1 - 1e-12):
        raise AssertionError(f"lower bound violated at s={s}: {lhs} < {rhs}")
    return lhs, rhs


def _safe_exp(v: float) -> float:
    if v > LOG_HUGE:
        return math.inf
    if v < LOG_TINY:
        return 0.0
    return math.exp(v)


def growth_report(series: WidomSeries) -> list[tuple[int, float]]:
    """(n, W^2_n / n), the quantity that stays bounded when W^2_n grows at most linearly."""
    n = np.arange(1, len(series) + 1)
    with np.errstate(over="ignore"):
        ratio = np.exp(series.logw2 - np.log(n))
    return list(zip(n.tolist(), ratio.tolist()))
