"""Parameter sequences for the weakly equilibrium Cantor sets K(gamma).

All length-like quantities (r_s, dyadic norms, capacity) are handled as
natural logarithms: r_s behaves like Cap^(2^s) and leaves double precision
after about ten levels.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import GammaDomainError, GammaRangeError, UnderflowError

__all__ = [
    "GammaModel",
    "CapacityEstimate",
    "CapacityTruncationWarning",
    "parse_model",
    "log_r",
    "log_norm_dyadic",
    "log_capacity",
    "capacity_estimate",
    "level_intervals",
    "compose_branches",
    "to_linear",
]

# log of the smallest positive normal double
LOG_TINY = math.log(np.finfo(float).tiny)

_REFERENCE_MODELS = {
    "model1": (50.0, 4.0),
    "model2": (50.0, 2.0),
    "model3": (50.0, 1.25),
}


class CapacityTruncationWarning(UserWarning):
    """The capacity series could not be summed to the requested tolerance."""


@dataclass(frozen=True)
class GammaModel:
    """A sequence gamma_1, gamma_2, ... with values in (0, 1/4).

    ``kind`` is one of ``model1``..``model4``, ``powerlaw``, ``const`` or
    ``explicit``. Power laws are ``gamma_s = 1/4 - 1/(p + s)**q``; the four
    reference models are power laws with p = 50 (and model4 the constant
    1/4 - 1/50).
    """

    kind: str
    params: tuple = ()
    values: tuple = field(default=(), repr=False)

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind in _REFERENCE_MODELS:
            object.__setattr__(self, "params", _REFERENCE_MODELS[kind])
        elif kind == "model4":
            object.__setattr__(self, "params", (0.25 - 1.0 / 50.0,))
        elif kind == "powerlaw":
            p, q = map(float, self.params)
            if not (p > 0 and q > 0):
                raise GammaDomainError(f"power law needs p > 0 and q > 0, got {p}, {q}")
            object.__setattr__(self, "params", (p, q))
        elif kind == "const":
            (g,) = self.params
            object.__setattr__(self, "params", (float(g),))
        elif kind == "explicit":
            vals = tuple(float(v) for v in (self.values or self.params))
            if not vals:
                raise GammaRangeError("explicit model needs at least one value")
            object.__setattr__(self, "values", vals)
            object.__setattr__(self, "params", ())
        else:
            raise ValueError(f"unknown model kind {self.kind!r}")
        # fail at construction for sequences that are invalid everywhere
        if kind in ("const", "model4"):
            self.gamma(1)
        elif kind == "explicit":
            for s in range(1, len(self.values) + 1):
                self.gamma(s)
        else:
            self.gamma(1)

    # constructors -------------------------------------------------------
    @classmethod
    def model(cls, i: int) -> "GammaModel":
        return cls(f"model{i}")

    @classmethod
    def constant(cls, g: float) -> "GammaModel":
        return cls("const", (g,))

    @classmethod
    def powerlaw(cls, p: float, q: float) -> "GammaModel":
        return cls("powerlaw", (p, q))

    @classmethod
    def explicit(cls, values) -> "GammaModel":
        return cls("explicit", values=tuple(values))

    # evaluation ---------------------------------------------------------
    @property
    def is_power_law(self) -> bool:
        return self.kind in ("model1", "model2", "model3", "powerlaw")

    @property
    def is_constant(self) -> bool:
        return self.kind in ("const", "model4")

    @property
    def length(self) -> int | None:
        """Number of available terms, ``None`` for infinite sequences."""
        return len(self.values) if self.kind == "explicit" else None

    def gamma(self, s: int) -> float:
        if s < 1:
            raise GammaRangeError(f"gamma is indexed from 1, got {s}")
        if self.is_constant:
            g = self.params[0]
        elif self.kind == "explicit":
            if s > len(self.values):
                raise GammaRangeError(
                    f"explicit model has {len(self.values)} terms, gamma_{s} requested"
                )
            g = self.values[s - 1]
        else:
            p, q = self.params
            g = 0.25 - 1.0 / (p + s) ** q
        if not (0.0 < g < 0.25):
            raise GammaDomainError(f"gamma_{s} = {g!r} is outside (0, 1/4)")
        return g

    def gammas(self, upto: int) -> np.ndarray:
        """gamma_1..gamma_upto as an array."""
        return np.array([self.gamma(s) for s in range(1, upto + 1)])

    def epsilon(self, s: int) -> float:
        return 1.0 - 4.0 * self.gamma(s)

    def gamma_min(self, upto: int | None = None) -> float:
        """Lower bound for gamma_k over k <= upto (all k when ``upto`` is None)."""
        if self.is_constant:
            return self.params[0]
        if self.kind == "explicit":
            n = len(self.values) if upto is None else min(upto, len(self.values))
            return min(self.values[:n])
        # power laws increase in s
        return self.gamma(1)

    def describe(self) -> str:
        if self.kind == "model4":
            return "gamma_s = 1/4 - 1/50"
        if self.is_power_law:
            p, q = self.params
            return f"gamma_s = 1/4 - 1/({p:g} + s)^{q:g}"
        if self.kind == "const":
            return f"gamma_s = {self.params[0]!r}"
        return "gamma = [" + ", ".join(repr(v) for v in self.values) + "]"

    def spec(self) -> str:
        """Inverse of :func:`parse_model`."""
        if self.kind.startswith("model"):
            return self.kind
        if self.kind == "powerlaw":
            return f"powerlaw:p={self.params[0]!r},q={self.params[1]!r}"
        if self.kind == "const":
            return f"const:g={self.params[0]!r}"
        return "explicit:" + ",".join(repr(v) for v in self.values)


def _keyvals(body: str) -> dict[str, float]:
    out = {}
    for item in body.split(","):
        key, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {item!r}")
        out[key.strip()] = float(val)
    return out


def parse_model(text: str) -> GammaModel:
    """Parse ``model1..4``, ``powerlaw:p=..,q=..``, ``const:g=..`` or ``explicit:..``."""
    text = text.strip()
    head, _, body = text.partition(":")
    head = head.lower()
    if head in ("model1", "model2", "model3", "model4") and not body:
        return GammaModel(head)
    if head == "powerlaw":
        kv = _keyvals(body)
        if set(kv) != {"p", "q"}:
            raise ValueError(f"powerlaw needs p and q, got {sorted(kv)}")
        return GammaModel.powerlaw(kv["p"], kv["q"])
    if head == "const":
        kv = _keyvals(body)
        if set(kv) != {"g"}:
            raise ValueError(f"const needs g, got {sorted(kv)}")
        return GammaModel.constant(kv["g"])
    if head == "explicit":
        return GammaModel.explicit(float(v) for v in body.split(",") if v.strip())
    raise ValueError(f"cannot parse model spec {text!r}")


def to_linear(log_value: float) -> float:
    """exp(log_value), refusing results that would underflow."""
    if log_value < LOG_TINY:
        raise UnderflowError(f"exp({log_value}) underflows double precision")
    return math.exp(log_value)


def log_r(model: GammaModel, s: int) -> float:
    """log r_s with r_0 = 1 and r_s = gamma_s * r_{s-1}**2."""
    if s < 0:
        raise GammaRangeError(f"s must be >= 0, got {s}")
    out = 0.0
    for k in range(1, s + 1):
        out = math.log(model.gamma(k)) + 2.0 * out
    return out


def log_r_table(model: GammaModel, smax: int) -> list[float]:
    """[log r_0, ..., log r_smax] via the same recursion as :func:`log_r`."""
    out = [0.0]
    for k in range(1, smax + 1):
        out.append(math.log(model.gamma(k)) + 2.0 * out[-1])
    return out


def log_norm_dyadic(model: GammaModel, s: int, _log_r: float | None = None) -> float:
    """log of the L2 norm of the monic orthogonal polynomial of degree 2^s."""
    lr = log_r(model, s) if _log_r is None else _log_r
    return 0.5 * math.log(1.0 - 2.0 * model.gamma(s + 1)) + lr - math.log(2.0)


def log_norm_dyadic_table(model: GammaModel, smax: int) -> list[float]:
    lr = log_r_table(model, smax)
    return [log_norm_dyadic(model, s, lr[s]) for s in range(smax + 1)]


@dataclass(frozen=True)
class CapacityEstimate:
    log_value: float
    terms: int
    tail_bound: float
    converged: bool

    @property
    def value(self) -> float:
        return to_linear(self.log_value)


def capacity_estimate(model: GammaModel, tol: float = 1e-14) -> CapacityEstimate:
    """Truncated sum of 2^-k log gamma_k with an explicit bound on the tail.

    The tail beyond K terms is at most 2^-K log(1/gamma_min); K is the
    first index where that bound is below both ``tol`` and the rounding
    level of the sum. For explicit sequences K cannot exceed the list
    length; the achieved bound is then reported with ``converged=False``.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    big = math.log(1.0 / model.gamma_min())
    # also sum past the point where the tail drops below rounding of the total
    target = min(tol, math.ldexp(big, -54))
    terms = 1
    while math.ldexp(big, -terms) >= target:
        terms += 1
    converged = True
    if model.length is not None and terms > model.length:
        terms = model.length
        converged = False
    bound = math.ldexp(big, -terms)
    total = math.fsum(math.ldexp(math.log(model.gamma(k)), -k) for k in range(1, terms + 1))
    return CapacityEstimate(total, terms, bound, converged)


def log_capacity(model: GammaModel, tol: float = 1e-14) -> float:
    """log Cap(K(gamma)) to within ``tol`` (best effort for short explicit lists)."""
    est = capacity_estimate(model, tol)
    if not est.converged:
        warnings.warn(
            f"capacity series truncated at {est.terms} terms; tail bound {est.tail_bound:.3g} > tol",
            CapacityTruncationWarning,
            stacklevel=2,
        )
    return est.log_value


def compose_branches(model: GammaModel, s: int, t) -> np.ndarray:
    """Apply every composition v_{i1,1} o ... o v_{is,s} to the points ``t``.

    Works level by level from the innermost map outward, so the result has
    ``2**s * len(t)`` entries in branch order (not sorted).
    """
    if s < 1:
        raise GammaRangeError(f"s must be >= 1, got {s}")
    pts = np.atleast_1d(np.asarray(t, dtype=float))
    for n in range(s, 0, -1):
        g = model.gamma(n)
        rad = 1.0 - 2.0 * g + 2.0 * g * pts
        if np.any(rad < 0):
            raise GammaDomainError(f"negative radicand at level {n}")
        root = np.sqrt(rad)
        if n == 1:
            left = 0.5 - 0.5 * root
            pts = np.concatenate([left, 1.0 - left])
        else:
            pts = np.concatenate([root, -root])
    return pts


def level_intervals(model: GammaModel, s: int) -> np.ndarray:
    """The 2^s closed intervals of E_s as a sorted ``(2**s, 2)`` array."""
    lo = compose_branches(model, s, -1.0)
    hi = compose_branches(model, s, 1.0)
    iv = np.column_stack([np.minimum(lo, hi), np.maximum(lo, hi)])
    return iv[np.argsort(iv[:, 0], kind="stable")]
