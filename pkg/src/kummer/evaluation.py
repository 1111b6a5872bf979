"""Scaled and unscaled Kummer functions from the uniform expansions.

    M(a, b, z)   = e**z Gamma(b)/Gamma(a) z**(a-b) Mt(a, b, z)
    U(a, b+1, z) = z**(-a) Ut(a, b+1, z)

    Mt ~ e**(-z A) f0 sum_n  ft_n / z**n
    Ut ~ e**(+z A) p0 sum_n (-1)**n pt_n / z**n

Front factors are assembled as logarithms; a linear value is produced only
when it is representable as a normal double.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import asdict, dataclass

from .coefficients import DEFAULT_TERMS, MAX_TERMS, Which, coefficient_set
from .elementary import log1p_stable, log_gamma_ratio  # noqa: F401  (re-exported)
from .errors import DomainError, UsageError
from .scaling import DEFAULT_RHO, Parameters, domain_check, saddle, scale, scale_shifted

__all__ = [
    "ExpansionResult",
    "QualityWarning",
    "eval_M",
    "eval_M_scaled",
    "eval_U",
    "eval_U_scaled",
    "log1p_stable",
    "log_gamma_ratio",
]

_LOG_MAX = math.log(1.7976931348623157e308)
_LOG_MIN_NORMAL = math.log(2.2250738585072014e-308)


class QualityWarning(UserWarning):
    """The saddle point lies beyond ``rho``; coefficients may be large."""


@dataclass(frozen=True)
class ExpansionResult:
    """Value of an expansion with its diagnostics.

    ``value`` is ``sign * exp(log_magnitude)`` when that is a normal double
    and ``0.0`` otherwise, in which case ``status`` says whether the true
    value overflows or underflows.  ``last_term_ratio`` is the magnitude of
    the highest-order term kept, relative to the sum of the series.
    """

    value: float
    log_magnitude: float
    sign: int
    terms_used: int
    last_term_ratio: float
    domain_ok: bool
    status: str = "ok"

    def to_dict(self) -> dict:
        return asdict(self)


def _finish(log_mag: float, sign: int, terms: int, ratio: float, ok: bool, linear=None):
    if log_mag > _LOG_MAX:
        return ExpansionResult(0.0, log_mag, sign, terms, ratio, ok, "overflow")
    if log_mag < _LOG_MIN_NORMAL:
        return ExpansionResult(0.0 * sign, log_mag, sign, terms, ratio, ok, "underflow")
    if linear is None or not (math.isfinite(linear) and abs(linear) >= 2.2250738585072014e-308):
        linear = sign * math.exp(log_mag)
    return ExpansionResult(linear, log_mag, sign, terms, ratio, ok)


def _check_terms(N: int) -> None:
    if not isinstance(N, int) or not 0 <= N <= MAX_TERMS:
        raise UsageError(f"number of terms N must be an integer in [0, {MAX_TERMS}], got {N!r}")


def _series_sum(coeffs, z: float, alternate: bool):
    """Sum ``c_n (+-1/z)**n`` from the highest order down."""
    x = -1.0 / z if alternate else 1.0 / z
    terms = [float(c) * x**n for n, c in enumerate(coeffs)]
    total = 0.0
    for term in reversed(terms):
        total += term
    if total == 0.0:
        raise DomainError("expansion sum vanished; parameters far outside the asymptotic regime")
    return total, abs(terms[-1]) / abs(total)


def _scaled(which: Which, p: Parameters, N: int, rho: float) -> ExpansionResult:
    _check_terms(N)
    sp = scale(p) if which is Which.M else scale_shifted(p)
    sd = saddle(sp)
    ok = domain_check(sp, rho)
    if not ok:
        warnings.warn(
            f"t0 = {sd.t0:.6g} exceeds rho = {rho:g}; expansion accuracy degrades",
            QualityWarning,
            stacklevel=3,
        )
    cs = coefficient_set(which, sp, N)
    total, ratio = _series_sum(cs.f_tilde, p.z, alternate=which is Which.U)
    sign = 1 if total > 0 else -1
    phase = -p.z * sd.A if which is Which.M else p.z * sd.A
    lead = sd.f0 if which is Which.M else sd.p0
    log_mag = phase + math.log(lead) + math.log(abs(total))
    linear = _product(lambda: math.exp(phase) * lead * total)
    return _finish(log_mag, sign, N + 1, ratio, ok, linear)


def _product(thunk):
    try:
        return thunk()
    except OverflowError:
        return None


def eval_M_scaled(p: Parameters, N: int = DEFAULT_TERMS, rho: float = DEFAULT_RHO) -> ExpansionResult:
    """Scaled function ``Mt(a, b, z)`` summed through ``n = N``.

    Valid for either ordering of ``a`` and ``b``; ``a == b`` gives exactly 1.
    A :class:`QualityWarning` is issued (and ``domain_ok`` is false) when
    the saddle point lies beyond ``rho``.
    """
    return _scaled(Which.M, p, N, rho)


def eval_U_scaled(p: Parameters, N: int = DEFAULT_TERMS, rho: float = DEFAULT_RHO) -> ExpansionResult:
    """Scaled function ``Ut(a, b+1, z)``; note ``p.b`` is the b of ``U(a, b+1, z)``.

    Here ``b`` may be any value above -1, since only ``b + 1`` has to be
    positive for ``U(a, b+1, z)``.
    """
    return _scaled(Which.U, p, N, rho)


def eval_M(p: Parameters, N: int = DEFAULT_TERMS, rho: float = DEFAULT_RHO) -> ExpansionResult:
    """``M(a, b, z)``, unscaled through logarithms."""
    r = eval_M_scaled(p, N, rho)
    a, b, z = p.a, p.b, p.z
    lg = log_gamma_ratio(b, a)
    log_front = z + lg + (a - b) * math.log(z)
    log_mag = log_front + r.log_magnitude
    linear = None
    if r.status == "ok":
        linear = _product(lambda: math.exp(z) * math.exp(lg) * z ** (a - b) * r.value)
    return _finish(log_mag, r.sign, r.terms_used, r.last_term_ratio, r.domain_ok, linear)


def eval_U(p: Parameters, N: int = DEFAULT_TERMS, rho: float = DEFAULT_RHO) -> ExpansionResult:
    """``U(a, b+1, z)``; ``p.b`` is the b of ``U(a, b+1, z)``."""
    r = eval_U_scaled(p, N, rho)
    log_mag = -p.a * math.log(p.z) + r.log_magnitude
    linear = _product(lambda: p.z ** (-p.a) * r.value) if r.status == "ok" else None
    return _finish(log_mag, r.sign, r.terms_used, r.last_term_ratio, r.domain_ok, linear)
