import numpy as np
import pytest

from cantorjacobi.gamma import GammaModel, log_capacity
from cantorjacobi.recurrence import compute_coefficients

MODELS = [1, 2, 3, 4]


@pytest.fixture(scope="session")
def tables_2_14():
    return {i: compute_coefficients(GammaModel.model(i), 1 << 14) for i in MODELS}


@pytest.fixture(scope="session")
def tables_2_20():
    return {i: compute_coefficients(GammaModel.model(i), 1 << 20) for i in MODELS}


@pytest.fixture(scope="session")
def log_caps():
    return {i: log_capacity(GammaModel.model(i), 1e-14) for i in MODELS}


def lanczos(nodes, weights, steps):
    """Jacobi coefficients (a, b) of a discrete measure, by Lanczos with full
    reorthogonalization on diag(nodes) started from sqrt(weights)."""
    nodes = np.asarray(nodes, dtype=float)
    basis = np.zeros((steps + 1, len(nodes)))
    q = np.sqrt(np.asarray(weights, dtype=float))
    basis[0] = q / np.linalg.norm(q)
    a, b = [], []
    prev, beta = np.zeros_like(q), 0.0
    for j in range(steps):
        v = nodes * basis[j] - beta * prev
        alpha = basis[j] @ v
        v -= alpha * basis[j]
        for _ in range(2):
            v -= basis[: j + 1].T @ (basis[: j + 1] @ v)
        beta = np.linalg.norm(v)
        a.append(beta)
        b.append(alpha)
        prev = basis[j]
        basis[j + 1] = v / beta
    return np.array(a), np.array(b)
