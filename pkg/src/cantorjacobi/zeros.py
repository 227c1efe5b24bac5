"""Exact zeros of the monic orthogonal polynomials of degree 2^s on K(gamma)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gamma import GammaModel, compose_branches

__all__ = ["ZeroSet", "exact_zeros", "zero_of_q1", "MAX_LEVEL"]

MAX_LEVEL = 24


@dataclass(frozen=True, eq=False)
class ZeroSet:
    s: int
    zeros: np.ndarray

    def __len__(self):
        return len(self.zeros)


def exact_zeros(model: GammaModel, s: int, allow_large: bool = False) -> ZeroSet:
    """The 2^s zeros, i.e. all inverse-branch images of 0, in ascending order."""
    if s < 1:
        raise ValueError(f"s must be >= 1, got {s}")
    if s > MAX_LEVEL and not allow_large:
        raise ValueError(f"s = {s} exceeds the default cap {MAX_LEVEL}; pass allow_large=True")
    pts = compose_branches(model, s, 0.0)
    pts.sort(kind="stable")
    return ZeroSet(s, pts)


def zero_of_q1() -> float:
    # Q_1(x) = x - b_1 with b_1 = 1/2
    return 0.5
