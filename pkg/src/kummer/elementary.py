"""Elementary functions evaluated with the care the expansions need."""

import math

from .errors import DomainError

_EPS = 2.0 ** -53


def log1p_stable(x: float) -> float:
    """Return ``ln(1 + x)`` without losing the low bits of a small ``x``.

    For ``|x| <= 1/2`` the identity ``ln(1+x) = 2 artanh(x / (2 + x))`` is
    used and the inverse hyperbolic tangent is summed from its Maclaurin
    series; ``|x/(2+x)| <= 1/3`` there, so about seventeen terms suffice.
    Outside that band the plain logarithm is already accurate.

    Raises
    ------
    DomainError
        If ``x <= -1`` or ``x`` is not finite.
    """
    if not math.isfinite(x) or x <= -1.0:
        raise DomainError(f"log1p_stable needs x > -1, got {x!r}")
    if x == 0.0:
        return 0.0
    if abs(x) > 0.5:
        return math.log1p(x) if x < 0 else math.log(1.0 + x)
    w = x / (2.0 + x)
    w2 = w * w
    term = w
    total = w
    k = 1
    while abs(term) > _EPS * abs(total) * 0.25:
        term *= w2
        k += 2
        total += term / k
    return 2.0 * total


def log_gamma_ratio(b: float, a: float) -> float:
    """Return ``ln(Gamma(b) / Gamma(a))`` for positive ``a`` and ``b``."""
    if not (math.isfinite(a) and math.isfinite(b)) or a <= 0 or b <= 0:
        raise DomainError(f"log_gamma_ratio needs a, b > 0, got a={a!r}, b={b!r}")
    if a == b:
        return 0.0
    return math.lgamma(b) - math.lgamma(a)
