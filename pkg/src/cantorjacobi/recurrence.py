"""Off-diagonal Jacobi coefficients a_n for the equilibrium measure of K(gamma).

The diagonal is constant, b_n = 1/2. Every product of consecutive a_j that
the recursion needs is taken from prefix sums of log a_j^2, which are kept
as an unevaluated pair ``hi + lo`` (running two-sum compensation) so that
differences of prefix sums stay accurate at n ~ 2^20.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDomainError
from .gamma import GammaModel, log_norm_dyadic_table

__all__ = [
    "CoefficientTable",
    "compute_coefficients",
    "dyadic_subsequence",
    "dyadic_ratios",
    "min_prefix_check",
    "MAX_COUNT",
]

MAX_COUNT = 1 << 20
B_VALUE = 0.5


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """a_1..a_N together with compensated prefix sums S_m = sum_{j<=m} log a_j^2.

    ``a[n - 1]`` is a_n. ``prefix_hi[m] + prefix_lo[m]`` is S_m, with S_0 = 0.
    """

    a: np.ndarray
    prefix_hi: np.ndarray
    prefix_lo: np.ndarray
    model: GammaModel | None = None
    b_value: float = B_VALUE

    def __len__(self) -> int:
        return len(self.a)

    @property
    def size(self) -> int:
        return len(self.a)

    def coefficient(self, n: int) -> float:
        return float(self.a[n - 1])

    @property
    def log_a2_prefix(self) -> np.ndarray:
        return self.prefix_hi + self.prefix_lo

    def prefix(self, m: int) -> float:
        return float(self.prefix_hi[m] + self.prefix_lo[m])

    def range_log(self, i: int, j: int) -> float:
        """S_j - S_i, i.e. the log of a_{i+1}^2 ... a_j^2."""
        return float((self.prefix_hi[j] - self.prefix_hi[i]) + (self.prefix_lo[j] - self.prefix_lo[i]))

    def log_kappa(self, n: int) -> float:
        """Log of the leading coefficient of the n-th orthonormal polynomial."""
        return -0.5 * self.prefix(n)

    def __eq__(self, other):
        if not isinstance(other, CoefficientTable):
            return NotImplemented
        return (
            np.array_equal(self.a, other.a)
            and np.array_equal(self.prefix_hi, other.prefix_hi)
            and np.array_equal(self.prefix_lo, other.prefix_lo)
        )

    __hash__ = None


def _table(a, hi, lo, model, upto):
    return CoefficientTable(
        np.array(a[1 : upto + 1]),
        np.array(hi[: upto + 1]),
        np.array(lo[: upto + 1]),
        model,
    )


def compute_coefficients(model: GammaModel, count: int) -> CoefficientTable:
    """Run the recursion for a_1..a_count.

    Raises :class:`NumericalDomainError` (carrying the partial table) if a
    difference that must be positive in exact arithmetic is not.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    smax = count.bit_length() - 1
    lnd = log_norm_dyadic_table(model, smax)

    a = [0.0] * (count + 1)
    hi = [0.0] * (count + 1)
    lo = [0.0] * (count + 1)

    exp, log, sqrt, expm1 = math.exp, math.log, math.sqrt, math.expm1

    a1 = exp(lnd[0])
    a[1] = a1
    hi[1] = 2.0 * log(a1)

    for m in range(2, count + 1):
        s = (m & -m).bit_length() - 1
        if m == 2:
            v = exp(lnd[1] - lnd[0])
        elif m >> s == 1:
            # m = 2^s: divide the norm ratio by a_{2^(s-1)+1} ... a_{2^s - 1}
            h = m >> 1
            inner = (hi[m - 1] - hi[h]) + (lo[m - 1] - lo[h])
            v = exp(lnd[s] - lnd[s - 1] - 0.5 * inner)
        elif s == 0:
            prev = a[m - 1]
            d = (a1 - prev) * (a1 + prev)
            if not d > 0:
                raise NumericalDomainError(m, d, _table(a, hi, lo, model, m - 1))
            v = sqrt(d)
        else:
            # m = 2^s (2k + 1) with s, k >= 1
            step = 1 << s
            base = m - step
            j = base - step
            l1 = (hi[base] - hi[j]) + (lo[base] - lo[j])
            l2 = (hi[m - 1] - hi[base]) + (lo[m - 1] - lo[base])
            d = 2.0 * lnd[s] - l1
            if not d > 0:
                raise NumericalDomainError(m, d, _table(a, hi, lo, model, m - 1))
            v = sqrt(exp(l1 - l2) * expm1(d))
        a[m] = v
        x = 2.0 * log(v)
        h0 = hi[m - 1]
        t = h0 + x
        bp = t - h0
        hi[m] = t
        lo[m] = lo[m - 1] + ((h0 - (t - bp)) + (x - bp))

    return _table(a, hi, lo, model, count)


def dyadic_subsequence(table: CoefficientTable) -> list[tuple[int, float]]:
    """Pairs (s, a_{2^s}) for all 2^s <= N."""
    return [(s, table.coefficient(1 << s)) for s in range(table.size.bit_length())]


def dyadic_ratios(table: CoefficientTable) -> list[tuple[int, float]]:
    """Pairs (n, a_{2^n} / a_{2^(n+1)}) for all 2^(n+1) <= N."""
    sub = dyadic_subsequence(table)
    return [(s, x / y) for (s, x), (_, y) in zip(sub, sub[1:])]


def min_prefix_check(table: CoefficientTable, n: int) -> bool:
    """True iff min(a_1..a_{2^n}) is attained exactly (and only) at 2^n."""
    m = 1 << n
    if m > table.size:
        raise ValueError(f"table has {table.size} entries, need {m}")
    head = table.a[:m]
    return int(np.argmin(head)) == m - 1 and np.count_nonzero(head == head[-1]) == 1
