"""Spacing statistics of the exact zeros of Q_{2^s}."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .gamma import GammaModel
from .zeros import ZeroSet, exact_zeros

__all__ = ["SpacingReport", "pair_gaps", "spacing_report", "prescribed_ratio", "small_gamma_bound_check"]


@dataclass(frozen=True, eq=False)
class SpacingReport:
    N: int
    pair_gaps: np.ndarray
    max_ratio: float
    min_gap: float


def _values(zeros) -> np.ndarray:
    return np.asarray(zeros.zeros if isinstance(zeros, ZeroSet) else zeros, dtype=float)


def pair_gaps(zeros) -> np.ndarray:
    """x_2 - x_1, x_4 - x_3, ... for sorted zeros."""
    x = _values(zeros)
    if len(x) % 2:
        raise ValueError("need an even number of zeros")
    return x[1::2] - x[0::2]


def spacing_report(zeros) -> SpacingReport:
    x = _values(zeros)
    if len(x) < 4:
        raise ValueError("need at least 4 zeros")
    gaps = pair_gaps(x)
    return SpacingReport(
        N=len(x),
        pair_gaps=gaps,
        max_ratio=float(gaps.max() / gaps.min()),
        min_gap=float(np.diff(x).min()),
    )


def prescribed_ratio(zeros, s: int) -> float:
    """Gap of the s-th pair over the gap of the first pair."""
    gaps = pair_gaps(zeros)
    if not 1 <= s <= len(gaps):
        raise ValueError(f"pair index {s} out of range 1..{len(gaps)}")
    return float(gaps[s - 1] / gaps[0])


def small_gamma_bound_check(model: GammaModel, s: int) -> tuple[float, float]:
    """(A_{2^s}, (8/7) exp(16 M)) with M the partial sum of gamma_1..gamma_s.

    Requires gamma_k <= 1/32 for k <= s. Raises AssertionError if the bound fails.
    """
    if s < 2:
        raise ValueError("s must be >= 2")
    gammas = model.gammas(s)
    if np.any(gammas > 1.0 / 32.0):
        k = int(np.argmax(gammas > 1.0 / 32.0)) + 1
        raise PreconditionError(f"gamma_{k} = {gammas[k - 1]!r} exceeds 1/32")
    ratio = spacing_report(exact_zeros(model, s)).max_ratio
    bound = 8.0 / 7.0 * math.exp(16.0 * math.fsum(gammas))
    if not ratio <= bound:
        raise AssertionError(f"A_(2^{s}) = {ratio} exceeds {bound}")
    return ratio, bound
