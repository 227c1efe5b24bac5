"""Jacobi coefficients of the equilibrium measure on the Julia set of z^2 - c, c >= 2.

The measure is symmetric (b_n = 0) and the squared off-diagonal entries obey

    a_1^2 = c,  a_{2n}^2 = a_n^2 / a_{2n-1}^2,  a_{2n+1}^2 = c - a_{2n}^2,

which follows from P_{2n}(z) = P_n(z^2 - c) for the monic orthogonal
polynomials. The capacity of these Julia sets is 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "JuliaCoefficientTable",
    "compute_julia_coefficients",
    "julia_widom_factors",
    "julia_dyadic_decay",
]


@dataclass(frozen=True, eq=False)
class JuliaCoefficientTable:
    c: float
    a2: np.ndarray  # a2[n - 1] = a_n^2
    b_value: float = 0.0

    def __len__(self):
        return len(self.a2)

    @property
    def a(self) -> np.ndarray:
        return np.sqrt(self.a2)


def compute_julia_coefficients(c: float, count: int) -> JuliaCoefficientTable:
    if not c >= 2:
        raise ValueError(f"c must be >= 2, got {c}")
    if count < 1:
        raise ValueError("count must be >= 1")
    c = float(c)
    a2 = [0.0] * (count + 1)
    a2[1] = c
    for m in range(2, count + 1):
        if m & 1:
            a2[m] = c - a2[m - 1]
        else:
            # a_{m-1}^2 >= c - 1 >= 1, never zero
            a2[m] = a2[m >> 1] / a2[m - 1]
    return JuliaCoefficientTable(c, np.array(a2[1:]))


def julia_widom_factors(table: JuliaCoefficientTable, upto: int | None = None) -> list[tuple[int, float]]:
    """(n, W^2_n) with W^2_n = a_1 ... a_n, summed in log scale."""
    n = len(table) if upto is None else upto
    if n > len(table):
        raise ValueError(f"upto {n} exceeds table size {len(table)}")
    logw = 0.5 * np.cumsum(np.log(table.a2[:n]))
    return list(zip(range(1, n + 1), np.exp(logw).tolist()))


def julia_dyadic_decay(table: JuliaCoefficientTable) -> list[tuple[int, float]]:
    """(n, a_{2^n}) for all 2^n within the table."""
    return [(s, float(np.sqrt(table.a2[(1 << s) - 1]))) for s in range(len(table).bit_length())]
