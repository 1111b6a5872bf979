"""Truncated power series over machine numbers.

A :class:`TruncatedSeries` holds the coefficients of ``sum c_k (x - centre)**k``
for ``k = 0..order``.  Coefficients may be real or complex; complex series are
needed when coefficient functions are sampled off the real axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, UsageError


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    center: complex | float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.ndim != 1 or c.size == 0:
            raise UsageError("coefficients must be a non-empty 1-D array")
        if not np.issubdtype(c.dtype, np.complexfloating):
            c = c.astype(float)
        if not np.all(np.isfinite(c)):
            raise DomainError("series coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.center, self.coeffs[: order + 1])

    def __call__(self, x):
        """Evaluate the truncated polynomial at ``x`` by Horner's rule."""
        h = x - self.center
        acc = 0.0
        for c in self.coeffs[::-1]:
            acc = acc * h + c
        return acc

    def __repr__(self):
        return f"TruncatedSeries(center={self.center!r}, coeffs={self.coeffs.tolist()!r})"


def _is_complex(*arrays) -> bool:
    return any(np.iscomplexobj(a) for a in arrays)


def _same_center(u: TruncatedSeries, v: TruncatedSeries) -> None:
    if u.center != v.center:
        raise UsageError(f"series centred at {u.center!r} and {v.center!r} cannot be combined")


def _mul(u: np.ndarray, v: np.ndarray, order: int) -> np.ndarray:
    return np.convolve(u[: order + 1], v[: order + 1])[: order + 1]


def _reciprocal(u: np.ndarray) -> np.ndarray:
    n = u.size
    v = np.zeros(n, dtype=np.result_type(u, float))
    v[0] = 1.0 / u[0]
    for k in range(1, n):
        v[k] = -v[0] * np.dot(u[1 : k + 1], v[k - 1 :: -1])
    return v


def _sqrt(u: np.ndarray) -> np.ndarray:
    n = u.size
    s = np.zeros(n, dtype=np.result_type(u, float))
    s[0] = np.sqrt(u[0])
    two_s0 = 2.0 * s[0]
    for k in range(1, n):
        s[k] = (u[k] - np.dot(s[1:k], s[k - 1 : 0 : -1])) / two_s0
    return s


def _compose(outer: np.ndarray, inner: np.ndarray, order: int) -> np.ndarray:
    """Coefficients of ``outer(inner(y))`` where ``inner`` has no constant term."""
    res = np.zeros(order + 1, dtype=np.result_type(outer, inner, float))
    for c in outer[: order + 1][::-1]:
        res = _mul(res, inner, order)
        res[0] += c
    return res


def series_mul(u: TruncatedSeries, v: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at the smaller of the two orders."""
    _same_center(u, v)
    order = min(u.order, v.order)
    return TruncatedSeries(u.center, _mul(u.coeffs, v.coeffs, order))


def series_reciprocal(u: TruncatedSeries) -> TruncatedSeries:
    if u.coeffs[0] == 0:
        raise DomainError("reciprocal of a series with zero constant term")
    return TruncatedSeries(u.center, _reciprocal(u.coeffs))


def series_sqrt(u: TruncatedSeries) -> TruncatedSeries:
    """Square root with the positive constant term.

    Real series need ``u[0] > 0``.  Complex series take the principal root
    of ``u[0]``, which the caller must keep away from the branch cut.
    """
    u0 = u.coeffs[0]
    if np.iscomplexobj(u.coeffs):
        if u0 == 0 or (u0.imag == 0 and u0.real < 0):
            raise DomainError(f"complex series square root on the branch cut, u0={u0!r}")
    elif not u0 > 0:
        raise DomainError(f"square root needs a positive constant term, got {u0!r}")
    return TruncatedSeries(u.center, _sqrt(u.coeffs))


def series_derivative(u: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; the order drops by one."""
    if u.order == 0:
        return TruncatedSeries(u.center, np.zeros(1, dtype=u.coeffs.dtype))
    k = np.arange(1, u.order + 1)
    return TruncatedSeries(u.center, u.coeffs[1:] * k)


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """``outer(inner(x))`` as a series in ``x`` about ``inner.center``.

    ``inner`` must take the value ``outer.center`` at its own centre.
    """
    if inner.coeffs[0] != outer.center:
        raise UsageError("inner series must start at the centre of the outer series")
    shifted = inner.coeffs.copy()
    shifted[0] = 0
    order = min(outer.order, inner.order)
    return TruncatedSeries(inner.center, _compose(outer.coeffs, shifted, order))


def invert_transformation(phi_derivs, psi_derivs, K: int, *, t0=0.0, s0=0.0) -> TruncatedSeries:
    """Local inverse ``t(s)`` of ``phi(t) - phi(t0) = psi(s) - psi(s0)``.

    Parameters
    ----------
    phi_derivs, psi_derivs : array_like
        ``phi_derivs[k]`` is the k-th derivative of ``phi`` at ``t0`` (and
        likewise for ``psi`` at ``s0``).  Entries 0 and 1 are ignored; indices
        up to ``K + 1`` are required.
    K : int
        Order of the returned series.
    t0, s0 : float or complex
        Constant term of the result and its expansion centre.

    Returns
    -------
    TruncatedSeries
        Coefficients ``t0, t1, ..., tK`` about ``s0`` with ``t1 > 0``.

    Notes
    -----
    Both sides are written as ``x * sqrt(P(x))`` with ``P`` normalised to
    start at 1, leaving ``g(x) = t1 * R(y)`` with ``g(x) = x + O(x**2)``,
    ``R(y) = y + O(y**2)`` and ``t1 = sqrt(psi2/phi2)``.  The unknown
    ``x = t - t0`` is then fixed one coefficient at a time: with ``x_k``
    set to zero the ``y**k`` coefficient of ``g(x(y))`` is the part due to
    lower orders, and since ``g'(0) = 1`` the remainder is ``x_k``.
    """
    phi = np.asarray(phi_derivs)
    psi = np.asarray(psi_derivs)
    if K < 1:
        raise UsageError("K must be at least 1")
    if phi.size < K + 2 or psi.size < K + 2:
        raise UsageError(f"derivative arrays need indices up to {K + 1}")
    if _is_complex(phi, psi):
        ratio = psi[2] / phi[2]
        if not ratio.real > 0:
            raise DomainError("psi''/phi'' must have positive real part")
    elif not (phi[2] > 0 and psi[2] > 0):
        raise DomainError("second derivatives at the saddle points must be positive")

    fact = np.array([math.factorial(k) for k in range(2, K + 2)], dtype=float)
    p_bar = phi[2 : K + 2] / fact
    q_bar = psi[2 : K + 2] / fact
    t1 = np.sqrt(q_bar[0] / p_bar[0])
    # g(x) = x sqrt(P(x)/P0) and R(y) = y sqrt(Q(y)/Q0), order K.
    g = np.concatenate(([0.0], _sqrt(p_bar / p_bar[0])))
    rhs = t1 * np.concatenate(([0.0], _sqrt(q_bar / q_bar[0])))

    x = np.zeros(K + 1, dtype=np.result_type(g, rhs, float))
    x[1] = rhs[1]
    for k in range(2, K + 1):
        lower = _compose(g[: k + 1], x[: k + 1], k)
        x[k] = rhs[k] - lower[k]
    x[0] = t0
    return TruncatedSeries(s0, x)
