"""Independent reference computations used only by the tests."""

import mpmath as mp


def f1_tilde_closed(mu, tau):
    num = (mu**2 * tau**5 - 13 * mu**2 * tau**4 - mu * tau**4 + 21 * tau**3 * mu
           + 4 * mu * tau**2 - 9 * tau**2 - 2 * tau - 1)
    return mu * tau**2 * num / (12 * (mu * tau**2 - 1) ** 3 * (1 - mu * tau))


def p1_tilde_closed(mu, tau):
    num = mu**2 * tau**4 - mu * tau**3 + 8 * mu * tau**2 - 9 * tau + 1
    return mu * tau**2 * (1 - tau) * num / (12 * (mu * tau**2 - 1) ** 3 * (mu * tau - 1))


def integrand_taylor_pointwise(which, alpha, beta, mu, kmax, dps=80, points=40, shrink=8):
    """Taylor coefficients of the integrand about s = mu, by root finding.

    Works with the real forms phi(t) = t - alpha ln(1-t) - mu ln|t| and
    psi(s) = s - mu ln|s|, valid for either sign of mu.  For each sample
    point s the transformation phi(t) - phi(t0) = psi(s) - psi(mu) is
    solved for t by bisection-type iteration on the branch
    sign(t - t0) = sign(s - mu).  The integrand is sampled at Chebyshev
    points around mu (never at mu itself, where it is 0/0) and the
    interpolating polynomial is re-expanded about mu.
    """
    with mp.workdps(dps):
        alpha, beta, mu = mp.mpf(alpha), mp.mpf(beta), mp.mpf(mu)
        t0 = 2 * mu / (beta + 1 + mp.sqrt((beta - 1) ** 2 + 4 * alpha))
        phi = lambda t: t - alpha * mp.log(1 - t) - mu * mp.log(abs(t))
        psi = lambda s: s - mu * mp.log(abs(s))
        phi0, psi0 = phi(t0), psi(mu)
        # Stay well inside the region where s and t keep their signs.
        gap_t = min(abs(t0), 1 - t0)
        spread = min(abs(mu), gap_t) / shrink
        xs = [mp.cos(mp.pi * (j + mp.mpf(1) / 2) / points) for j in range(points)]
        ys = []
        for x in xs:
            s = mu + spread * x
            rhs = psi(s) - psi0
            g = lambda t: phi(t) - phi0 - rhs
            if x > 0:
                lo, hi = t0, t0 + gap_t * (1 - mp.mpf(10) ** -30)
            else:
                lo, hi = t0 - gap_t * (1 - mp.mpf(10) ** -30), t0
            lo_v, hi_v = g(lo), g(hi)
            if x > 0:
                lo = t0 + (hi - t0) * mp.mpf(10) ** -40
            else:
                hi = t0 - (t0 - lo) * mp.mpf(10) ** -40
            t = mp.findroot(g, (lo, hi), solver="anderson")
            # polish to full working precision with Newton steps
            for _ in range(4):
                t -= g(t) / (1 + alpha / (1 - t) - mu / t)
            dtds = (1 - mu / s) / (1 + alpha / (1 - t) - mu / t)
            if which == "M":
                ys.append(s / (t * (1 - t)) * dtds)
            else:
                ys.append(s / t * dtds)
        V = mp.matrix([[x**k for k in range(points)] for x in xs])
        c = mp.lu_solve(V, mp.matrix(ys))
        return [c[k] / spread**k for k in range(kmax + 1)]


def f_from_a_mp(a, mu, N):
    c = list(a)
    out = [c[0]]
    for _ in range(N):
        c = [m * c[m + 1] + mu * (m + 1) * c[m + 2] for m in range(len(c) - 2)]
        out.append(c[0])
    return out


def normalised_coefficients_mp(which, alpha, beta, mu, N, **kw):
    with mp.workdps(kw.get("dps", 80)):
        a = integrand_taylor_pointwise(which, alpha, beta, mu, 2 * N, **kw)
        f = f_from_a_mp(a, mp.mpf(mu), N)
        return [float(v / f[0]) for v in f]
