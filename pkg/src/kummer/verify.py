"""Ground truth and self-consistency checks.

The oracles work in extended precision (mpmath) from textbook
representations that share nothing with the asymptotic code: the Maclaurin
series for M and the Laplace integral for U.  The residual checks use only
the asymptotic evaluations and exact contiguous relations between them.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import mpmath as mp

from .coefficients import DEFAULT_TERMS, Which
from .errors import DomainError, NumericalError
from .evaluation import eval_M_scaled, eval_U_scaled
from .scaling import Parameters

DEFAULT_DIGITS = 30


class OracleValue(NamedTuple):
    value: mp.mpf
    log_magnitude: mp.mpf


@dataclass(frozen=True)
class ResidualReport:
    kind: str  # "recurrence_M", "recurrence_U" or "wronskian"
    a: float
    b: float
    z: float
    N: int
    residual: float


def _check_oracle_args(p: Parameters, digits: int) -> None:
    if digits < 30:
        raise DomainError("oracles need precision_digits >= 30")
    for name in ("a", "z"):
        v = getattr(p, name)
        if not (math.isfinite(v) and v > 0):
            raise DomainError(f"{name} must be positive, got {v!r}")
    if not math.isfinite(p.b):
        raise DomainError("b must be finite")


def oracle_M(p: Parameters, precision_digits: int = DEFAULT_DIGITS) -> OracleValue:
    """``M(a, b, z)`` from its Maclaurin series in extended precision.

    All terms are positive for positive parameters, so the sum has no
    cancellation; summation stops once a term drops below
    ``10**-precision_digits`` of the partial sum while the terms decrease.
    """
    _check_oracle_args(p, precision_digits)
    if p.b <= 0 and p.b == int(p.b):
        raise DomainError("b must not be a non-positive integer")
    with mp.workdps(precision_digits + 10):
        a, b, z = mp.mpf(p.a), mp.mpf(p.b), mp.mpf(p.z)
        tol = mp.mpf(10) ** (-precision_digits - 5)
        term = mp.mpf(1)
        total = mp.mpf(1)
        k = 0
        limit = 100000 + 50 * int(p.z)
        while True:
            ratio = (a + k) * z / ((b + k) * (k + 1))
            term *= ratio
            total += term
            k += 1
            if ratio < 1 and term < tol * total:
                break
            if k > limit:
                raise NumericalError(f"Maclaurin series for M did not converge in {limit} terms")
        return OracleValue(+total, mp.log(total))


def _u_breakpoints(a, b, z):
    """Break points for the Laplace integral around its peak."""
    # d/dt [(a-1) ln t - z t + (b-a-1) ln(1+t)] = 0  <=>  z t**2 + (z-b+2) t - (a-1) = 0
    c1 = z - b + 2
    disc = c1 * c1 + 4 * z * (a - 1)
    if a > 1:
        root = mp.sqrt(disc)
        tpk = 2 * (a - 1) / (c1 + root) if c1 > 0 else (root - c1) / (2 * z)
    else:
        tpk = mp.mpf(0)
    g2 = (a - 1) / tpk**2 + (b - a - 1) / (1 + tpk) ** 2 if tpk > 0 else z * z
    width = 1 / mp.sqrt(abs(g2)) if g2 != 0 else 1 / z
    width = max(width, tpk * mp.mpf(10) ** -6, mp.mpf(10) ** -30)
    pts = [mp.mpf(0)]
    for k in (-12, -6, -3, -1, 0, 1, 3, 6, 12, 25, 50):
        x = tpk + k * width
        if x > pts[-1] * (1 + mp.mpf(10) ** -10) and x > 0:
            pts.append(x)
    pts.append(mp.inf)
    return tpk, pts


def oracle_U(p: Parameters, precision_digits: int = DEFAULT_DIGITS) -> OracleValue:
    """``U(a, b, z)`` (standard argument order) by quadrature.

    Uses ``U(a,b,z) = 1/Gamma(a) int_0^inf exp(-z t) t**(a-1) (1+t)**(b-a-1) dt``
    with tanh-sinh quadrature split around the peak of the integrand.  For
    ``a < 1`` the substitution ``t = u**(1/a)`` removes the endpoint
    singularity.  Note the argument convention differs from :func:`eval_U`,
    which returns ``U(a, b+1, z)``.
    """
    _check_oracle_args(p, precision_digits)
    with mp.workdps(precision_digits + 10):
        a, b, z = mp.mpf(p.a), mp.mpf(p.b), mp.mpf(p.z)
        target = mp.mpf(10) ** (-precision_digits - 3)
        if a >= 1:
            tpk, pts = _u_breakpoints(a, b, z)

            def logf(t):
                return -z * t + (a - 1) * mp.log(t) + (b - a - 1) * mp.log1p(t)

            shift = logf(tpk) if tpk > 0 else mp.mpf(0)

            def f(t):
                if t == 0:
                    return mp.mpf(1) if a == 1 and shift == 0 else mp.mpf(0)
                return mp.exp(logf(t) - shift)

            jac = mp.mpf(0)
        else:
            shift = mp.mpf(0)
            scale = z ** (-a)
            pts = [mp.mpf(0)] + [scale * k for k in (mp.mpf("0.1"), 1, 3, 10, 30, 100)] + [mp.inf]

            def f(u):
                t = u ** (1 / a)
                return mp.exp(-z * t + (b - a - 1) * mp.log1p(t))

            jac = -mp.log(a)
        integral, err = mp.quad(f, pts, error=True, maxdegree=10)
        if not integral > 0 or err > target * integral:
            raise NumericalError(
                f"quadrature for U({p.a}, {p.b}, {p.z}) reached only relative error "
                f"{mp.nstr(err / integral, 3)}"
            )
        log_u = mp.log(integral) + shift + jac - mp.loggamma(a)
        return OracleValue(mp.exp(log_u), log_u)


def _log_scaled(which: Which, a: float, b: float, z: float, N: int) -> float:
    """Log of Mt(a, b, z) or of Ut(a, b, z) in the standard argument order."""
    if which is Which.M:
        r = eval_M_scaled(Parameters(a, b, z), N)
    else:
        try:
            r = eval_U_scaled(Parameters(a, b - 1.0, z), N)
        except DomainError as exc:
            raise DomainError(f"U({a!r}, {b!r}, {z!r}) is outside the expansion's domain: {exc}") from exc
    if r.sign < 0:
        raise NumericalError("scaled function evaluated negative; outside the asymptotic regime")
    return r.log_magnitude


def recurrence_residual(which, p: Parameters, N: int = DEFAULT_TERMS) -> ResidualReport:
    """Deviation from 1 of the scaled three-term recurrence.

    M: ``(z Mt(a+1,b+1) + a Mt(a,b)) / (z Mt(a+1,b))``.
    U: ``(a Ut(a+1,b) + z Ut(a,b-1)) / (z Ut(a,b))``, with ``Ut(a, b, z)``
    meaning ``z**a U(a, b, z)``; each is obtained from the expansion of
    ``U(a', b'+1, z)`` with ``b' = b - 1``.
    """
    which = Which.parse(which)
    a, b, z = p.a, p.b, p.z
    if which is Which.M:
        l1 = _log_scaled(which, a + 1, b + 1, z, N)
        l2 = _log_scaled(which, a, b, z, N)
        l3 = _log_scaled(which, a + 1, b, z, N)
        expr = math.exp(l1 - l3) + math.exp(math.log(a / z) + l2 - l3)
    else:
        l1 = _log_scaled(which, a + 1, b, z, N)
        l2 = _log_scaled(which, a, b - 1, z, N)
        l3 = _log_scaled(which, a, b, z, N)
        expr = math.exp(math.log(a / z) + l1 - l3) + math.exp(l2 - l3)
    return ResidualReport(f"recurrence_{which.value}", a, b, z, N, abs(expr - 1.0))


def wronskian_residual(p: Parameters, N: int = DEFAULT_TERMS) -> ResidualReport:
    """Deviation from 1 of ``(a/z) Mt(a,b) Ut(a+1,b+1) + Mt(a+1,b+1) Ut(a,b)``."""
    a, b, z = p.a, p.b, p.z
    m1 = _log_scaled(Which.M, a, b, z, N)
    u1 = _log_scaled(Which.U, a + 1, b + 1, z, N)
    m2 = _log_scaled(Which.M, a + 1, b + 1, z, N)
    u2 = _log_scaled(Which.U, a, b, z, N)
    expr = math.exp(math.log(a / z) + m1 + u1) + math.exp(m2 + u2)
    return ResidualReport("wronskian", a, b, z, N, abs(expr - 1.0))


TABLE1_A = (99, 199, 299, 399, 499, 501, 601, 701, 801, 901)
TABLE2_AB = (101, 301, 501, 701, 901)


@dataclass
class TableReport:
    """A grid of residuals in the row/column layout of the published tables."""

    table_id: str
    z: float
    blocks: dict  # block title -> list of (row label, [values])
    columns: list
    params: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        for i, (title, rows) in enumerate(self.blocks.items()):
            if len(self.blocks) > 1:
                if i:
                    buf.write("\n")
                buf.write(f"# {title}\n")
            writer.writerow(["a", *self.columns])
            for label, values in rows:
                writer.writerow([_fmt_label(label), *(f"{v:.1e}" for v in values)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = []
        head = f"{'a':>7}" + "".join(f"{c:>12}" for c in self.columns)
        for title, rows in self.blocks.items():
            lines.append(f"{title}  (z = {self.z:g})")
            lines.append(head)
            lines.append("-" * len(head))
            for label, values in rows:
                lines.append(f"{_fmt_label(label):>7}" + "".join(f"{v:>12.2e}" for v in values))
            lines.append("")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "table": self.table_id,
            "z": self.z,
            "columns": self.columns,
            "blocks": {k: [[lab, vals] for lab, vals in v] for k, v in self.blocks.items()},
        }


def _fmt_label(x) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def error_table(
    table_id: str = "table1",
    *,
    z: Optional[float] = None,
    a_list: Optional[Sequence[float]] = None,
    b_list: Optional[Sequence[float]] = None,
    n_list: Optional[Sequence[int]] = None,
) -> TableReport:
    """Residual grids laid out like the published tables.

    ``table1``: recurrence residuals of Mt and Ut, rows ``a``, columns the
    number of terms ``n``; ``b = z = 500`` by default.  ``table2``: Wronskian
    residuals at ``N = 4``, rows ``a`` and columns ``b``; ``z = 500``.
    """
    if table_id == "table1":
        z = 500.0 if z is None else float(z)
        b = 500.0 if b_list is None else float(b_list[0])
        a_vals = TABLE1_A if a_list is None else a_list
        ns = list(range(5)) if n_list is None else list(n_list)
        blocks = {}
        for which in (Which.M, Which.U):
            rows = []
            for a in a_vals:
                p = Parameters(float(a), b, z)
                rows.append((a, [recurrence_residual(which, p, n).residual for n in ns]))
            blocks[f"{which.value}t(a,b,z)"] = rows
        cols = [f"n{n}" for n in ns]
        return TableReport("table1", z, blocks, cols, {"b": b, "n": ns})
    if table_id == "table2":
        z = 500.0 if z is None else float(z)
        a_vals = TABLE2_AB if a_list is None else a_list
        b_vals = TABLE2_AB if b_list is None else b_list
        n = DEFAULT_TERMS if n_list is None else int(n_list[0])
        rows = []
        for a in a_vals:
            rows.append((a, [wronskian_residual(Parameters(float(a), float(b), z), n).residual for b in b_vals]))
        cols = [f"b{_fmt_label(b)}" for b in b_vals]
        return TableReport("table2", z, {"Wronskian": rows}, cols, {"N": n})
    raise DomainError(f"unknown table {table_id!r}; expected 'table1' or 'table2'")
