"""Gauss quadrature from a finite Jacobi matrix.

Eigenvalues come from an implicit-shift QL iteration on the tridiagonal.
Only the first row of the accumulated rotation product is carried along,
which is all the Christoffel weights need, so a size-N problem costs O(N^2)
time and O(N) memory.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ConvergenceFailure
from .gamma import GammaModel
from .recurrence import CoefficientTable, compute_coefficients
from .zeros import exact_zeros

__all__ = [
    "JacobiTruncation",
    "QuadratureRule",
    "ReliabilityReport",
    "eigen_first_components",
    "reliability",
    "interlacing_check",
    "MAX_QUAD_SIZE",
]

MAX_QUAD_SIZE = 1 << 14
DEFAULT_TOL = 2.0**-52


@dataclass(frozen=True, eq=False)
class JacobiTruncation:
    diagonal: np.ndarray
    offdiagonal: np.ndarray

    def __post_init__(self):
        d = np.ascontiguousarray(self.diagonal, dtype=float)
        e = np.ascontiguousarray(self.offdiagonal, dtype=float)
        if d.ndim != 1 or len(d) < 1:
            raise ValueError("diagonal must be a nonempty vector")
        if len(e) != len(d) - 1:
            raise ValueError(f"need {len(d) - 1} off-diagonal entries, got {len(e)}")
        if np.any(~(e > 0)):
            raise ValueError("off-diagonal entries must be strictly positive")
        object.__setattr__(self, "diagonal", d)
        object.__setattr__(self, "offdiagonal", e)

    @property
    def size(self) -> int:
        return len(self.diagonal)

    @classmethod
    def from_table(cls, table: CoefficientTable, size: int) -> "JacobiTruncation":
        if size > table.size + 1:
            raise ValueError(f"size {size} needs {size - 1} coefficients, table has {table.size}")
        return cls(np.full(size, table.b_value), table.a[: size - 1])

    def leading(self, size: int) -> "JacobiTruncation":
        return JacobiTruncation(self.diagonal[:size], self.offdiagonal[: size - 1])

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.nodes)

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


@dataclass(frozen=True)
class ReliabilityReport:
    n: int
    R1: float
    R2: float


@numba.njit(cache=True)
def _ql_first_row(d, e, z, tol, max_sweeps):
    """In-place implicit QL. ``e[i]`` couples d[i] and d[i+1]; ``e[n-1]`` is scratch.

    Returns -1 on success, otherwise the index of the eigenvalue that failed.
    """
    n = d.shape[0]
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps == max_sweeps:
                return l
            sweeps += 1
            # shift from the leading 2x2 block of the unreduced part
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            underflow = False
            i = m - 1
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def eigen_first_components(
    J: JacobiTruncation, tol: float = DEFAULT_TOL, max_sweeps: int = 50
) -> QuadratureRule:
    """Nodes (ascending eigenvalues) and weights (squared first eigenvector components)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    d = J.diagonal.copy()
    e = np.zeros(J.size)
    e[: J.size - 1] = J.offdiagonal
    z = np.zeros(J.size)
    z[0] = 1.0
    failed = _ql_first_row(d, e, z, tol, max_sweeps)
    if failed >= 0:
        raise ConvergenceFailure(int(failed), max_sweeps)
    order = np.argsort(d, kind="stable")
    w = z[order] ** 2
    return QuadratureRule(d[order], w)


def reliability(
    model: GammaModel,
    n: int,
    table: CoefficientTable | None = None,
    tol: float = DEFAULT_TOL,
) -> ReliabilityReport:
    """Mean deviation of Jacobi eigenvalues from exact zeros (R1) and of
    Christoffel weights from 2^-n (R2) for the 2^n truncation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = 1 << n
    if table is None or table.size < size - 1:
        table = compute_coefficients(model, max(size - 1, 1))
    rule = eigen_first_components(JacobiTruncation.from_table(table, size), tol)
    q = exact_zeros(model, n).zeros
    r1 = float(np.mean(np.abs(rule.nodes - q)))
    r2 = float(np.mean(np.abs(1.0 / size - rule.weights)))
    return ReliabilityReport(n, r1, r2)


def interlacing_check(J: JacobiTruncation) -> bool:
    """Strict interlacing of the eigenvalues of J and its leading (N-1) block."""
    if J.size < 2:
        raise ValueError("interlacing needs N >= 2")
    outer = eigen_first_components(J).nodes
    inner = eigen_first_components(J.leading(J.size - 1)).nodes
    return bool(np.all(outer[:-1] < inner) and np.all(inner < outer[1:]))
