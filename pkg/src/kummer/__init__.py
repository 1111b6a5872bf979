"""Kummer confluent hypergeometric functions from uniform asymptotic expansions.

The expansions hold when any of ``a``, ``b`` or ``z`` is large, including
the transition ``a ~ b`` where the saddle point of the underlying integral
vanishes.  Coefficients are generated numerically on the fly.
"""

from .coefficients import (
    CoefficientSet,
    StirlingTable,
    Which,
    coefficient_set,
    f_from_a_recursive,
    f_from_a_stirling,
    integrand_series,
    phi_derivatives,
    psi_derivatives,
)
from .errors import DomainError, KummerError, NumericalError, UsageError
from .evaluation import (
    ExpansionResult,
    QualityWarning,
    eval_M,
    eval_M_scaled,
    eval_U,
    eval_U_scaled,
    log1p_stable,
    log_gamma_ratio,
)
from .scaling import Parameters, SaddleData, ScaledParameters, domain_check, saddle, scale
from .series import (
    TruncatedSeries,
    invert_transformation,
    series_compose,
    series_derivative,
    series_mul,
    series_reciprocal,
    series_sqrt,
)
from .verify import (
    ResidualReport,
    TableReport,
    error_table,
    oracle_M,
    oracle_U,
    recurrence_residual,
    wronskian_residual,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSet", "DomainError", "ExpansionResult", "KummerError", "NumericalError",
    "Parameters", "QualityWarning", "ResidualReport", "SaddleData", "ScaledParameters",
    "StirlingTable", "TableReport", "TruncatedSeries", "UsageError", "Which",
    "coefficient_set", "domain_check", "error_table", "eval_M", "eval_M_scaled", "eval_U",
    "eval_U_scaled", "f_from_a_recursive", "f_from_a_stirling", "integrand_series",
    "invert_transformation", "log1p_stable", "log_gamma_ratio", "oracle_M", "oracle_U",
    "phi_derivatives", "psi_derivatives", "recurrence_residual", "saddle", "scale",
    "series_compose", "series_derivative", "series_mul", "series_reciprocal", "series_sqrt",
    "wronskian_residual",
]
