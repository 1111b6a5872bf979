"""Acceptance gate: each test checks one criterion at its stated tolerance
and records a single PASS/FAIL line (shown in the terminal summary)."""

import math
import random
import warnings

import mpmath as mp
import numpy as np

from kummer.coefficients import StirlingTable, Which, coefficient_set, f_from_a_recursive, f_from_a_stirling
from kummer.evaluation import QualityWarning, eval_M, eval_U
from kummer.scaling import Parameters, ScaledParameters, saddle, scale
from kummer.verify import error_table, oracle_M, oracle_U, wronskian_residual

from oracles import f1_tilde_closed, p1_tilde_closed

# Published recurrence residuals, z = b = 500, columns n = 0..4.
TABLE1_A = [99, 199, 299, 399, 499, 501, 601, 701, 801, 901]
TABLE1_M = [
    [0.48e-05, 0.43e-08, 0.16e-09, 0.76e-12, 0.46e-13],
    [0.16e-05, 0.12e-08, 0.98e-11, 0.10e-14, 0.46e-13],
    [0.82e-06, 0.55e-09, 0.14e-11, 0.10e-12, 0.11e-12],
    [0.51e-06, 0.30e-09, 0.30e-12, 0.16e-14, 0.39e-14],
    [0.35e-06, 0.19e-09, 0.39e-13, 0.10e-14, 0.40e-15],
    [0.35e-06, 0.19e-09, 0.37e-13, 0.10e-14, 0.10e-14],
    [0.26e-06, 0.13e-09, 0.53e-13, 0.25e-13, 0.25e-13],
    [0.20e-06, 0.89e-10, 0.64e-13, 0.23e-13, 0.23e-13],
    [0.16e-06, 0.66e-10, 0.74e-13, 0.33e-13, 0.33e-13],
    [0.13e-06, 0.51e-10, 0.24e-12, 0.20e-12, 0.20e-12],
]
TABLE1_U = [
    [0.29e-05, 0.45e-08, 0.17e-09, 0.28e-12, 0.39e-13],
    [0.84e-06, 0.15e-09, 0.11e-10, 0.34e-13, 0.66e-13],
    [0.40e-06, 0.77e-10, 0.18e-11, 0.35e-13, 0.42e-13],
    [0.23e-06, 0.80e-10, 0.40e-12, 0.10e-14, 0.10e-14],
    [0.15e-06, 0.63e-10, 0.87e-13, 0.10e-14, 0.0],
    [0.14e-06, 0.62e-10, 0.85e-13, 0.0, 0.80e-15],
    [0.10e-06, 0.48e-10, 0.37e-14, 0.10e-14, 0.17e-14],
    [0.73e-07, 0.37e-10, 0.43e-13, 0.64e-13, 0.64e-13],
    [0.55e-07, 0.28e-10, 0.11e-13, 0.36e-13, 0.36e-13],
    [0.43e-07, 0.23e-10, 0.16e-12, 0.18e-12, 0.18e-12],
]
# Published Wronskian residuals, z = 500, N = 4; rows a, columns b.
TABLE2_AB = [101, 301, 501, 701, 901]
TABLE2 = [
    [0.0, 0.46e-12, 0.14e-11, 0.42e-12, 0.71e-12],
    [0.52e-13, 0.40e-15, 0.32e-13, 0.73e-13, 0.63e-13],
    [0.13e-12, 0.15e-13, 0.10e-13, 0.50e-14, 0.27e-13],
    [0.17e-12, 0.89e-13, 0.31e-13, 0.0, 0.67e-13],
    [0.14e-12, 0.14e-12, 0.18e-12, 0.14e-13, 0.10e-14],
]

FLOOR = 1e-13


def within_band(ours: float, published: float) -> bool:
    """Factor-10 agreement, or <= 1e-12 where the published entry is at the rounding floor."""
    if published <= FLOOR:
        return ours <= 1e-12
    return published / 10 <= ours <= published * 10


def compare_grid(label, ours_rows, published_rows, row_labels, col_labels):
    misses = []
    for lab, ours, pub in zip(row_labels, ours_rows, published_rows):
        for col, o, p in zip(col_labels, ours, pub):
            if not within_band(o, p):
                misses.append(f"{label} a={lab} {col}: {o:.2e} vs {p:.2e}")
    return misses


def test_criterion_1_table1(acceptance):
    t = error_table("table1")
    cols = [f"n={n}" for n in range(5)]
    misses = []
    for (title, rows), published in zip(t.blocks.items(), (TABLE1_M, TABLE1_U)):
        assert [r[0] for r in rows] == TABLE1_A
        misses += compare_grid(title, [r[1] for r in rows], published, TABLE1_A, cols)
    detail = "100 cells within band" if not misses else f"{len(misses)}/100 cells outside band: " + "; ".join(misses)
    assert acceptance(1, not misses, detail), detail


def test_criterion_2_table2(acceptance):
    t = error_table("table2")
    rows = t.blocks["Wronskian"]
    misses = compare_grid("W", [r[1] for r in rows], TABLE2, TABLE2_AB, [f"b={b}" for b in TABLE2_AB])
    worst = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", QualityWarning)
        for z in (5.0, 50.0):
            vals = [v for _, r in error_table("table2", z=z).blocks["Wronskian"] for v in r]
            worst[z] = max(vals)
            if worst[z] > 1e-10:
                misses.append(f"z={z:g}: max residual {worst[z]:.2e} > 1e-10")
    detail = (
        f"25 cells within band; max residual z=5 {worst[5.0]:.1e}, z=50 {worst[50.0]:.1e}"
        if not misses
        else f"{len(misses)} misses: " + "; ".join(misses)
    )
    assert acceptance(2, not misses, detail), detail


def test_criterion_3_extreme_magnitude(acceptance):
    r = eval_U(Parameters(130.0, 25.1, 100.0))
    target = 3.872389298556e-293
    mantissa = math.exp(r.log_magnitude - math.log(10) * -293)
    same_digits = f"{r.value:.10e}" == f"{target:.10e}" and f"{mantissa:.10f}" == "3.8723892986"
    rel = abs(math.expm1(r.log_magnitude - math.log(3.8723892985558665e-293)))
    ok = r.sign == 1 and same_digits and rel <= 1e-11
    detail = f"U = {r.value!r} (log {r.log_magnitude!r}), relative deviation {rel:.1e}"
    assert acceptance(3, ok, detail), detail


def test_criterion_4_spot_checks(acceptance):
    w1 = wronskian_residual(Parameters(0.5, 0.7, 100.0), 4).residual
    w2 = wronskian_residual(Parameters(50.5, 100.7, 1.0), 4).residual
    ok = w1 <= 1e-10 and w2 <= 1e-11
    detail = f"(0.5, 0.7, 100): {w1:.3e} <= 1e-10; (50.5, 100.7, 1): {w2:.3e} <= 1e-11"
    assert acceptance(4, ok, detail), detail


def test_criterion_5_closed_form_anchors(acceptance):
    grid = [0.1, 0.5, 1.0, 2.0, 5.0]
    worst = 0.0
    signs = set()
    for alpha in grid:
        for beta in grid:
            mu = beta - alpha
            signs.add(np.sign(mu))
            sp = ScaledParameters(alpha, beta, mu, mu)
            for which, closed in ((Which.M, f1_tilde_closed), (Which.U, p1_tilde_closed)):
                cs = coefficient_set(which, sp, 4)
                ref = closed(mu, saddle(sp).tau)
                err = abs(cs.f_tilde[1] - ref) / abs(ref) if ref != 0 else abs(cs.f_tilde[1])
                worst = max(worst, err)
    ok = worst <= 1e-10 and {-1.0, 1.0} <= signs
    detail = f"25-point grid, both signs of mu, max relative error {worst:.1e} <= 1e-10"
    assert acceptance(5, ok, detail), detail


def test_criterion_6_appendix_equivalence(acceptance):
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(100):
        N = int(rng.integers(0, 9))
        a = rng.uniform(-5, 5, 2 * N + 1)
        mu = float(rng.uniform(-3, 3))
        f1 = f_from_a_recursive(a, mu, N)
        f2 = f_from_a_stirling(a, mu, N)
        nonzero = np.abs(f1) > 0
        worst = max(worst, float(np.max(np.abs(f1 - f2)[nonzero] / np.abs(f1)[nonzero], initial=0.0)))
    tbl = StirlingTable.build(8)
    rows_ok = [tbl.row(n) for n in range(1, 5)] == [[1], [2, 3], [6, 20, 15], [24, 130, 210, 105]]
    ok = worst <= 1e-12 and rows_ok
    detail = f"100 random inputs, max relative difference {worst:.1e} <= 1e-12; T rows exact: {rows_ok}"
    assert acceptance(6, ok, detail), detail


def test_criterion_7_elementary_limits(acceptance):
    worst = 0.0
    for a in (0.5, 5.0, 50.0):
        for z in (1.0, 10.0, 100.0, 1000.0):
            m = eval_M(Parameters(a, a, z))
            u = eval_U(Parameters(a, a, z))
            worst = max(worst, abs(math.expm1(m.log_magnitude - z)), abs(math.expm1(u.log_magnitude + a * math.log(z))))
            if m.status == "ok":
                worst = max(worst, abs(m.value / math.exp(z) - 1))
            if u.status == "ok":
                worst = max(worst, abs(u.value / z**-a - 1))
    ok = worst <= 1e-14
    detail = f"12 (a, z) pairs, max relative error {worst:.1e} <= 1e-14"
    assert acceptance(7, ok, detail), detail


def _random_points(n, seed=8):
    # Dyadic grid 2**-32 so that a + 1 and b + 1 are exact in the Wronskian.
    rng = random.Random(seed)
    q = 2.0**32
    pts = []
    while len(pts) < n:
        a, b, z = (round(rng.uniform(1, 1000) * q) / q for _ in range(3))
        if saddle(scale(Parameters(a, b, z))).t0 <= 0.8:
            pts.append((a, b, z))
    return pts


def test_criterion_8_oracle_agreement(acceptance):
    digits = 30
    worst_ratio = 0.0
    worst_w = mp.mpf(0)
    fails = []
    for a, b, z in _random_points(50):
        p = Parameters(a, b, z)
        m_ref = oracle_M(p, digits)
        u_ref = oracle_U(Parameters(a, b + 1, z), digits)  # U(a, b+1, z)
        for name, r, ref in (("M", eval_M(p), m_ref), ("U", eval_U(p), u_ref)):
            err = abs(math.expm1(r.log_magnitude - float(ref.log_magnitude)))
            tol = max(1e-10, 10 * r.last_term_ratio)
            worst_ratio = max(worst_ratio, err / tol)
            if err > tol:
                fails.append(f"{name}({a:.3f},{b:.3f},{z:.3f}) err {err:.1e} > {tol:.1e}")
        with mp.workdps(digits + 10):
            lhs = (a * m_ref.value * oracle_U(Parameters(a + 1, b + 1, z), digits).value
                   + mp.mpf(a) / b * oracle_M(Parameters(a + 1, b + 1, z), digits).value * oracle_U(p, digits).value)
            rhs = mp.exp(z + mp.loggamma(b) - mp.loggamma(a) - b * mp.log(z))
            worst_w = max(worst_w, abs(lhs / rhs - 1))
    if worst_w > mp.mpf("1e-25"):
        fails.append(f"oracle Wronskian {mp.nstr(worst_w, 3)} > 1e-25")
    detail = (
        f"50 points, worst error/tolerance {worst_ratio:.2e}; oracle Wronskian {mp.nstr(worst_w, 3)} <= 1e-25"
        if not fails
        else "; ".join(fails)
    )
    assert acceptance(8, not fails, detail), detail
