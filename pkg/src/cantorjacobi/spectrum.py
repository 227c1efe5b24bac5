"""Normalized periodograms of coefficient sequences and their peaks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SpectrumReport",
    "fft_radix2",
    "power_spectrum",
    "top_peaks",
    "dyadic_match",
]


def _is_pow2(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _bit_reverse(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for _ in range(bits):
        rev = (rev << 1) | (idx & 1)
        idx >>= 1
    return rev


def fft_radix2(x) -> np.ndarray:
    """Iterative decimation-in-time FFT, X_k = sum_n x_n exp(-2 pi i k n / N)."""
    x = np.asarray(x, dtype=complex)
    n = len(x)
    if not _is_pow2(n):
        raise ValueError(f"length {n} is not a power of two")
    y = x[_bit_reverse(n)]
    twiddle = np.exp(-2j * np.pi * np.arange(n // 2) / n)
    half = 1
    while half < n:
        span = 2 * half
        w = twiddle[:: n // span][:half]
        blocks = y.reshape(-1, span)
        top = blocks[:, :half].copy()
        bot = blocks[:, half:] * w
        blocks[:, :half] = top + bot
        blocks[:, half:] = top - bot
        y = blocks.reshape(-1)
        half = span
    return y


@dataclass(frozen=True, eq=False)
class SpectrumReport:
    size: int
    freqs: np.ndarray
    power: np.ndarray
    zero_signal: bool = False
    peaks: list = field(default_factory=list)


def power_spectrum(x, size: int | None = None) -> SpectrumReport:
    """Mean-removed, normalized |DFT|^2 on the grid k/N.

    A constant input has nothing left after mean removal; the power is then
    all zeros and ``zero_signal`` is set.
    """
    x = np.asarray(x, dtype=float)
    n = len(x) if size is None else size
    if len(x) != n:
        raise ValueError(f"expected {n} samples, got {len(x)}")
    if not _is_pow2(n) or n < 4:
        raise ValueError(f"size must be a power of two >= 4, got {n}")
    xhat = fft_radix2(x - x.mean())
    raw = xhat.real**2 + xhat.imag**2
    # real input: |X_k| = |X_{N-k}| exactly; average away the rounding difference
    raw[1:] = 0.5 * (raw[1:] + raw[1:][::-1])
    total = raw.sum()
    freqs = np.arange(n) / n
    if total == 0.0 or total < 1e-300:
        return SpectrumReport(n, freqs, np.zeros(n), zero_signal=True)
    power = raw / total
    report = SpectrumReport(n, freqs, power)
    report.peaks.extend(_local_maxima(power, freqs))
    return report


def _local_maxima(power: np.ndarray, freqs: np.ndarray) -> list[tuple[float, float]]:
    n = len(power)
    out = []
    k = 1
    while k < n:
        left = power[k - 1]
        if power[k] > left:
            # walk across a plateau; it counts once, at its lowest index
            j = k
            while j + 1 < n and power[j + 1] == power[k]:
                j += 1
            right = power[(j + 1) % n]
            if power[k] > right:
                out.append((float(freqs[k]), float(power[k])))
            k = j + 1
        else:
            k += 1
    out.sort(key=lambda fp: (-fp[1], fp[0]))
    return out


def top_peaks(report: SpectrumReport, count: int) -> list[tuple[float, float]]:
    """The ``count`` largest strict local maxima (bin 0 excluded), by power."""
    if count < 1:
        raise ValueError("count must be >= 1")
    return report.peaks[:count]


def dyadic_match(freqs, max_denom_exp: int, size: int | None = None) -> list[bool]:
    """Whether each grid frequency k/N equals m/2^j for some j <= max_denom_exp.

    Works on integer bin indices, so there is no tolerance. ``size`` defaults
    to the smallest power of two that puts every frequency on the grid.
    """
    freqs = [float(f) for f in freqs]
    if size is None:
        size = 1
        while any(f * size != int(f * size) for f in freqs):
            size <<= 1
            if size > 1 << 62:
                raise ValueError("frequencies are not dyadic grid points")
    out = []
    for f in freqs:
        k = f * size
        if k != int(k):
            raise ValueError(f"{f} is not on the 1/{size} grid")
        out.append((int(k) << max_denom_exp) % size == 0)
    return out
