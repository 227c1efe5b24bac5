"""Orthogonal polynomials, Gauss quadrature and spectra for equilibrium
measures of weakly equilibrium Cantor sets and quadratic Julia sets."""

__version__ = "0.1.0"

from .errors import (
    ConvergenceFailure,
    GammaDomainError,
    GammaRangeError,
    NumericalDomainError,
    PreconditionError,
    UnderflowError,
)
from .gamma import (
    GammaModel,
    capacity_estimate,
    level_intervals,
    log_capacity,
    log_norm_dyadic,
    log_r,
    parse_model,
)
from .julia import compute_julia_coefficients, julia_dyadic_decay, julia_widom_factors
from .quadrature import (
    JacobiTruncation,
    QuadratureRule,
    ReliabilityReport,
    eigen_first_components,
    interlacing_check,
    reliability,
)
from .recurrence import (
    CoefficientTable,
    compute_coefficients,
    dyadic_ratios,
    dyadic_subsequence,
    min_prefix_check,
)
from .spacing import prescribed_ratio, small_gamma_bound_check, spacing_report
from .spectrum import dyadic_match, power_spectrum, top_peaks
from .widom import dyadic_gap_bound, growth_report, widom_series
from .zeros import exact_zeros, zero_of_q1
