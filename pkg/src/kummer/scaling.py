"""Scaled variables, the saddle point and the validity region.

Everything here is a pure function of real inputs.  The saddle point is
never formed by the subtractive root formula; it is always ``t0 = mu * tau``
with ``tau`` taken from the quotient form, which stays finite and accurate
as ``mu`` tends to zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elementary import log1p_stable
from .errors import DomainError

DEFAULT_RHO = 0.8


@dataclass(frozen=True)
class Parameters:
    """The raw triple ``(a, b, z)``."""

    a: float
    b: float
    z: float


@dataclass(frozen=True)
class ScaledParameters:
    """``alpha = a/z``, ``beta = b/z``, ``mu = (b - a)/z``, ``lam = b - a``."""

    alpha: float
    beta: float
    mu: float
    lam: float


@dataclass(frozen=True)
class SaddleData:
    t0: float
    tau: float
    A: float
    f0: float
    p0: float


def _check_finite_positive(name: str, value: float, floor: float = 0.0) -> None:
    if not math.isfinite(value) or value <= floor:
        raise DomainError(f"{name} must be finite and > {floor:g}, got {value!r}")


def scale(p: Parameters) -> ScaledParameters:
    """Map ``(a, b, z)`` to the scaled variables.

    ``mu`` is formed from a single subtraction ``b - a`` followed by one
    division, so ``a == b`` gives ``mu == 0`` exactly.
    """
    _check_finite_positive("a", p.a)
    _check_finite_positive("b", p.b)
    _check_finite_positive("z", p.z)
    return _scale_unchecked(p)


def scale_shifted(p: Parameters) -> ScaledParameters:
    """Like :func:`scale` but only requires ``b > -1``.

    Used for ``U(a, b+1, z)``, which is defined as long as its second
    argument ``b + 1`` is positive.  The recurrence and Wronskian checks
    need it with ``b + 1`` just below one.
    """
    _check_finite_positive("a", p.a)
    _check_finite_positive("b + 1", p.b + 1.0)
    _check_finite_positive("z", p.z)
    if p.b / p.z <= -1.0:
        raise DomainError("b/z must exceed -1 for the saddle point to exist")
    return _scale_unchecked(p)


def _scale_unchecked(p: Parameters) -> ScaledParameters:
    lam = p.b - p.a
    return ScaledParameters(alpha=p.a / p.z, beta=p.b / p.z, mu=lam / p.z, lam=lam)


def tau_of(mu, beta):
    """``tau = t0/mu`` from the quotient form; accepts complex ``mu``.

    The discriminant is written as ``(beta + 1)**2 - 4*mu``; for real
    positive parameters this equals ``(beta - 1)**2 + 4*alpha``, which is the
    form :func:`saddle` uses.
    """
    disc = (beta + 1.0) ** 2 - 4.0 * mu
    root = disc ** 0.5
    return 2.0 / (beta + 1.0 + root)


def saddle(sp: ScaledParameters) -> SaddleData:
    """Saddle point ``t0`` and the quantities derived from it.

    Returns ``t0``, ``tau``, the phase ``A`` and the leading amplitudes
    ``f0`` (for M) and ``p0`` (for U).  At ``mu == 0`` these are exactly
    ``0, 1/(beta+1), 0, 1, 1``.
    """
    alpha, beta, mu = sp.alpha, sp.beta, sp.mu
    disc = (beta - 1.0) ** 2 + 4.0 * alpha
    if not disc > 0.0:
        raise ArithmeticError(f"non-positive discriminant {disc!r}: invalid scaled parameters")
    denom = beta + 1.0 + math.sqrt(disc)
    if not denom > 0.0:
        raise DomainError("beta + 1 + sqrt(disc) must be positive")
    tau = 2.0 / denom
    t0 = mu * tau
    if t0 >= 1.0:
        raise DomainError(f"saddle at or beyond t=1 (t0={t0!r})")
    if mu == 0.0:
        return SaddleData(t0=0.0, tau=tau, A=0.0, f0=1.0, p0=1.0)
    # beta*mu*tau**2 - 2*mu*tau + 1 factors as (1 - t0)(1 - t0*tau) once
    # beta is eliminated through (beta + 1) t0 = t0**2 + mu; both factors
    # are positive and free of cancellation.
    q = (1.0 - t0) * (1.0 - t0 * tau)
    if not q > 0.0:
        raise DomainError("saddle points coalesce; the expansion does not apply")
    f0 = 1.0 / math.sqrt(q)
    A = mu * (tau - math.log(tau) - 1.0) - alpha * log1p_stable(-t0)
    return SaddleData(t0=t0, tau=tau, A=A, f0=f0, p0=(1.0 - t0) * f0)


def domain_check(sp: ScaledParameters, rho: float = DEFAULT_RHO) -> bool:
    """True when the saddle point satisfies ``t0 <= rho``.

    Equivalent to ``alpha >= rho**2 - rho + (1 - rho)*beta``; points on the
    line itself count as inside, with a few ulps of slack for the rounding
    in evaluating the line.
    """
    if not (0.0 < rho < 1.0):
        raise DomainError(f"rho must lie in (0, 1), got {rho!r}")
    line = rho * rho - rho + (1.0 - rho) * sp.beta
    slack = 8.0 * 2.0 ** -53 * (rho + abs((1.0 - rho) * sp.beta) + rho * rho)
    return sp.alpha >= line - slack
