"""Expansion coefficients for the scaled M and U functions.

The pipeline at a fixed ``(mu, beta)``:

1. derivatives of ``phi(t) = t - alpha ln(1-t) - mu ln t`` at ``t0`` and of
   ``psi(s) = s - mu ln s`` at ``s0 = mu``;
2. the local inverse ``t(s)`` of ``phi(t) - phi(t0) = psi(s) - psi(s0)``;
3. Taylor coefficients ``a_k`` of the integrand ``f(s) = s t'(s) / (t(1-t))``
   (M) or ``p(s) = s t'(s) / t`` (U) about ``s = mu``;
4. ``f_n`` from ``a_k`` by repeated integration by parts, then ``f_n / f_0``.

Step 1 involves ``mu**(1-k)`` and ``t0**(-k)``, so for small ``|mu|`` the
intermediate coefficients are huge and the normalised ``f_n/f_0`` (which
vanish at ``mu = 0``) lose about ``|mu|**-n`` in relative accuracy.  The
normalised coefficients are analytic in ``mu`` near zero for fixed ``beta``,
so in that range they are instead interpolated from samples of the same
pipeline on a circle in the complex ``mu`` plane.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Optional

import numpy as np

from .errors import DomainError, UsageError
from .scaling import ScaledParameters, saddle, tau_of
from .series import (
    TruncatedSeries,
    _mul,
    _reciprocal,
    invert_transformation,
    series_derivative,
)

DEFAULT_TERMS = 4
MAX_TERMS = 8

# Circle sampling for the small-mu path.
_CIRCLE_POINTS = 32
_CIRCLE_MAX_RADIUS = 0.2
_CIRCLE_SAFETY = 5.0


class Which(str, enum.Enum):
    M = "M"
    U = "U"

    @classmethod
    def parse(cls, value) -> "Which":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise UsageError(f"which must be 'M' or 'U', got {value!r}") from None


@dataclass(frozen=True)
class StirlingTable:
    """Signed Stirling numbers of the first kind and the weights ``T(n, k)``.

    ``s[n][m]`` for ``0 <= m <= n <= 2*nmax`` and ``T[n][k]`` for
    ``1 <= k <= n <= nmax`` (``T[n][0]`` is unused and zero).
    """

    nmax: int
    s: tuple = field(repr=False)
    T: tuple = field(repr=False)

    @classmethod
    def build(cls, nmax: int = MAX_TERMS) -> "StirlingTable":
        size = 2 * nmax + 1
        s = [[0] * (size + 1) for _ in range(size + 1)]
        s[0][0] = 1
        for n in range(size):
            for m in range(1, n + 2):
                s[n + 1][m] = s[n][m - 1] - n * s[n][m]
        T = [[0] * (nmax + 1) for _ in range(nmax + 1)]
        for n in range(1, nmax + 1):
            for k in range(1, n + 1):
                T[n][k] = sum(
                    (-1) ** (n + m + k) * comb(n + k, n + m) * s[n + m][m]
                    for m in range(k + 1)
                )
        return cls(nmax, tuple(map(tuple, s)), tuple(map(tuple, T)))

    def row(self, n: int) -> list:
        """Weights ``[T(n,1), ..., T(n,n)]``."""
        return list(self.T[n][1 : n + 1])


_DEFAULT_TABLE = StirlingTable.build(MAX_TERMS)


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Coefficients of one expansion at fixed ``(mu, beta)``.

    ``t_series`` and ``a`` come from the direct pipeline and are ``None``
    when the small-``mu`` path produced the coefficients (they are
    ill-conditioned there, and undefined at ``mu = 0``).  ``method`` is one
    of ``"pipeline"``, ``"circle"`` or ``"limit"``.
    """

    mu: float
    beta: float
    which: Which
    tau: float
    t_series: Optional[TruncatedSeries]
    a: Optional[np.ndarray]
    f: np.ndarray
    f_tilde: np.ndarray
    method: str

    def to_dict(self) -> dict:
        return {
            "which": self.which.value,
            "mu": self.mu,
            "beta": self.beta,
            "tau": self.tau,
            "f": [float(v) for v in self.f],
            "f_tilde": [float(v) for v in self.f_tilde],
            "method": self.method,
        }


def _phi_derivs(alpha, mu, t0, kmax: int) -> np.ndarray:
    d = np.zeros(kmax + 1, dtype=np.result_type(alpha, mu, t0, float))
    u = 1.0 / (1.0 - t0)
    v = -1.0 / t0
    pu, pv = u, v
    for k in range(2, kmax + 1):
        pu *= u
        pv *= v
        d[k] = math.factorial(k - 1) * (alpha * pu + mu * pv)
    return d


def _psi_derivs(mu, kmax: int) -> np.ndarray:
    d = np.zeros(kmax + 1, dtype=np.result_type(mu, float))
    w = -1.0 / mu
    pw = 1.0
    for k in range(2, kmax + 1):
        pw *= w
        d[k] = -math.factorial(k - 1) * pw
    return d


def phi_derivatives(sp: ScaledParameters, t0: float, K: int) -> np.ndarray:
    """``d[k]`` is the k-th derivative of ``phi`` at ``t0`` for ``2 <= k <= K``.

    Uses ``phi^(k)(t) = alpha (k-1)!/(1-t)**k + (-1)**k mu (k-1)!/t**k``.
    ``d[0]`` and ``d[1]`` are left at zero.
    """
    if t0 == 0.0 or t0 == 1.0:
        raise DomainError(f"phi derivatives are singular at t0={t0!r}")
    return _phi_derivs(sp.alpha, sp.mu, t0, K)


def psi_derivatives(mu: float, K: int) -> np.ndarray:
    """``d[k] = (-1)**k (k-1)! / mu**(k-1)`` for ``2 <= k <= K``."""
    if mu == 0.0:
        raise DomainError("psi derivatives are singular at mu = 0")
    return _psi_derivs(mu, K)


def _integrand(which: Which, mu, t: np.ndarray) -> np.ndarray:
    """Taylor coefficients of the integrand given the coefficients of ``t(s)``."""
    order = t.size - 2
    dt = t[1:] * np.arange(1, t.size)
    s = np.zeros(order + 1, dtype=np.result_type(mu, float))
    s[0] = mu
    if order >= 1:
        s[1] = 1.0
    num = _mul(s, dt, order)
    if which is Which.M:
        one_minus_t = -t[: order + 1]
        one_minus_t[0] += 1.0
        den = _mul(t, one_minus_t, order)
    else:
        den = t[: order + 1]
    return _mul(num, _reciprocal(den), order)


def integrand_series(which, sp: ScaledParameters, t_series: TruncatedSeries) -> np.ndarray:
    """Coefficients ``a_k`` of the integrand about ``s = mu``.

    M: ``f(s) = s/(t(1-t)) dt/ds``.  U: ``p(s) = s/t dt/ds``.  The result has
    one entry fewer than ``t_series``.
    """
    which = Which.parse(which)
    if t_series.center != sp.mu:
        raise UsageError("t_series must be centred at s0 = mu")
    dt = series_derivative(t_series)
    order = dt.order
    t = t_series.coeffs
    if t[0] == 0:
        raise DomainError("integrand undefined when t0 = 0")
    return _integrand(which, sp.mu, t[: order + 2])


def f_from_a_recursive(a, mu, N: int) -> np.ndarray:
    """``f_0..f_N`` through ``c_m^(n+1) = m c_{m+1}^(n) + mu (m+1) c_{m+2}^(n)``."""
    a = np.asarray(a)
    if a.size < 2 * N + 1:
        raise UsageError(f"need at least {2 * N + 1} integrand coefficients, got {a.size}")
    c = a[: 2 * N + 1].astype(np.result_type(a, mu, float))
    f = np.zeros(N + 1, dtype=c.dtype)
    f[0] = c[0]
    for n in range(1, N + 1):
        m = np.arange(c.size - 2)
        c = m * c[1:-1] + mu * (m + 1) * c[2:]
        f[n] = c[0]
    return f


def f_from_a_stirling(a, mu, N: int, tbl: StirlingTable = _DEFAULT_TABLE) -> np.ndarray:
    """``f_n = sum_{k=1}^{n} T(n,k) mu**k a_{k+n}`` with ``f_0 = a_0``."""
    a = np.asarray(a)
    if tbl.nmax < N:
        raise UsageError(f"Stirling table covers n <= {tbl.nmax}, need {N}")
    if a.size < 2 * N + 1:
        raise UsageError(f"need at least {2 * N + 1} integrand coefficients, got {a.size}")
    f = np.zeros(N + 1, dtype=np.result_type(a, mu, float))
    f[0] = a[0]
    for n in range(1, N + 1):
        acc = 0.0
        muk = 1.0
        for k in range(1, n + 1):
            muk = muk * mu
            acc += tbl.T[n][k] * muk * a[k + n]
        f[n] = acc
    return f


def _pipeline(which: Which, mu, beta, N: int):
    """Direct pipeline; ``mu`` may be complex.  Returns ``(tau, t, a, f)``."""
    alpha = beta - mu
    tau = tau_of(mu, beta)
    t0 = mu * tau
    K = 2 * N + 1
    phi = _phi_derivs(alpha, mu, t0, K + 1)
    psi = _psi_derivs(mu, K + 1)
    if not np.iscomplexobj(phi) and mu < 0:
        # Both sides of phi(t) - phi(t0) = psi(s) - psi(s0) change sign
        # together; negating them leaves t(s) unchanged and makes the
        # second derivatives positive.
        phi, psi = -phi, -psi
    t = invert_transformation(phi, psi, K, t0=t0, s0=mu)
    a = _integrand(which, mu, t.coeffs)
    f = f_from_a_recursive(a, mu, N)
    return tau, t, a, f


def _circle_radius(beta: float) -> float:
    # Nearest singularity in mu at fixed beta: the saddle reaches t = 1 at
    # mu = beta when beta >= 1, otherwise the saddles coalesce at
    # mu = (beta + 1)**2 / 4.
    rho = beta if beta >= 1.0 else (beta + 1.0) ** 2 / 4.0
    return min(_CIRCLE_MAX_RADIUS, rho / _CIRCLE_SAFETY)


@lru_cache(maxsize=256)
def _circle_samples(which: Which, beta: float, N: int, radius: float):
    angles = 2.0 * np.pi * (np.arange(_CIRCLE_POINTS) + 0.5) / _CIRCLE_POINTS
    nodes = radius * np.exp(1j * angles)
    values = np.empty((_CIRCLE_POINTS, N + 1), dtype=complex)
    for i, node in enumerate(nodes):
        _, _, _, f = _pipeline(which, complex(node), beta, N)
        values[i] = f / f[0]
    return nodes, values


def _circle_interpolate(which: Which, mu: float, beta: float, N: int, radius: float) -> np.ndarray:
    """Normalised coefficients at real ``mu`` from the circle samples.

    This is the trapezoidal-rule Cauchy interpolant: exact for polynomials
    of degree below the number of nodes and, inside the circle, never
    amplifying the sampling error.
    """
    nodes, values = _circle_samples(which, beta, N, radius)
    m = _CIRCLE_POINTS
    q = mu / nodes
    # sum_{j=1}^{m-1} q**j: the j = 0 term is dropped because every
    # normalised coefficient with n >= 1 vanishes at mu = 0, which keeps
    # the sampling noise proportional to |mu|.
    weights = (q - q ** m) / (1.0 - q) / m
    ft = (weights @ values).real
    ft[0] = 1.0
    return ft


def coefficient_set(which, sp: ScaledParameters, N: int = DEFAULT_TERMS) -> CoefficientSet:
    """Coefficients ``f_n`` and ``f_n/f_0`` (or ``p_n``, ``p_n/p_0``), ``n <= N``."""
    which = Which.parse(which)
    if not 0 <= N <= MAX_TERMS:
        raise UsageError(f"N must lie in [0, {MAX_TERMS}], got {N}")
    sd = saddle(sp)
    lead = sd.f0 if which is Which.M else sd.p0
    mu, beta = sp.mu, sp.beta
    if mu == 0.0:
        ft = np.zeros(N + 1)
        ft[0] = 1.0
        return CoefficientSet(mu, beta, which, sd.tau, None, None, ft * lead, ft, "limit")
    radius = _circle_radius(beta)
    if abs(mu) < radius and N > 0:
        ft = _circle_interpolate(which, mu, beta, N, radius)
        return CoefficientSet(mu, beta, which, sd.tau, None, None, ft * lead, ft, "circle")
    _, t, a, f = _pipeline(which, mu, beta, max(N, 1))
    f = f[: N + 1]
    return CoefficientSet(mu, beta, which, sd.tau, t, a, f, f / f[0], "pipeline")
