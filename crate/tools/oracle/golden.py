"""Arbitrary-precision oracle for the golden values used by the test suites.

Evaluates the closed-form axial integrands with mpmath at 30 significant
digits, independently of the Rust quadrature. Run from the repository root:

    python3 tools/oracle/golden.py

Writes:
    crates/core/tests/golden/scalars.txt    named scalar goldens
    crates/cli/tests/golden/fig1_oracle.csv fig1 curves at 20 digits
    crates/cli/tests/golden/fig2_oracle.csv fig2 curves at 20 digits
"""

import math
import sys

from mpmath import mp, mpf, quad, sqrt, inf, beta, gamma, loggamma, pi, exp

mp.dps = 30

C = beta(mpf(1) / 4, mpf(1) / 4)


def outer(x, rho):
    q = 1 - 2 * x
    return q / sqrt(rho**4 * x**4 * (x - 1) ** 4 + q * q)


def inner(x, rho):
    q = 2 * x * x - 2 * x + 1
    return q / sqrt(rho**4 * x**4 * (x - 1) ** 4 + q * q)


def splits_outer(rho):
    pts = {mpf(1)}
    w = min(mpf(1), 1 / rho)
    for k in (mpf("0.1"), mpf(1), mpf(10)):
        pts.add(1 + w * k)
    knee = rho ** (mpf(-2) / 3)
    for k in (1, 4, 16):
        if knee * k > 1:
            pts.add(knee * k)
    pts.update({mpf(2), mpf(10)})
    return sorted(pts) + [inf]


def splits_inner(rho):
    pts = {mpf(1) / 2, mpf(1)}
    w = min(mpf("0.25"), 1 / rho)
    for k in (mpf("0.1"), mpf(1)):
        p = 1 - w * k
        if p > mpf(1) / 2:
            pts.add(p)
    return sorted(pts)


def i_outer(rho):
    rho = mpf(rho)
    return quad(lambda x: outer(x, rho), splits_outer(rho))


def i_inner(rho):
    rho = mpf(rho)
    return quad(lambda x: inner(x, rho), splits_inner(rho))


def single(sigma):
    """int_sigma^inf du / sqrt(u^4 + 1)"""
    sigma = mpf(sigma)
    pts = [sigma, sigma + 1, sigma + 10, inf]
    return quad(lambda t: 1 / sqrt(t**4 + 1), pts)


def phi(beta_, r):
    rho = mpf(r) / beta_
    return mpf(r) / beta_**2 * i_outer(rho)


def phi_tilde(beta_, r):
    rho = mpf(r) / beta_
    return -mpf(r) / beta_**2 * i_inner(rho)


def phi_minus_inf(beta_, r):
    return 2 * (phi(beta_, r) - phi_tilde(beta_, r))


def fmt(v):
    return mp.nstr(v, 20, min_fixed=1, max_fixed=0)


def lin_grid(a, b, n):
    step = (b - a) / (n - 1)
    g = [a + i * step for i in range(n)]
    g[-1] = b
    return g


def log_grid(a, b, n):
    la, lb = math.log(a), math.log(b)
    step = (lb - la) / (n - 1)
    g = [math.exp(la + i * step) for i in range(n)]
    g[0], g[-1] = a, b
    return g


def scalars(out):
    one = mpf(1)
    rows = [
        ("gamma_quarter", gamma(one / 4)),
        ("born_constant", C),
        ("born_constant_quarter", C / 4),
        ("inner_integral_rho1", i_inner(1)),
        ("outer_integral_rho1", i_outer(1)),
        ("outer_integral_rho1000", i_outer(1000)),
        ("phi_at_electron_b1_r1", phi(one, one)),
        ("phi_tilde_at_electron_b1_r1", phi_tilde(one, one)),
        ("phi_minus_infinity_b1_r1", phi_minus_inf(one, one)),
        ("phi_minus_infinity_b1_r0.5", phi_minus_inf(one, mpf("0.5"))),
        ("phi_minus_infinity_b1_r2", phi_minus_inf(one, mpf(2))),
        ("def1_b1_r1", -(phi(one, one) + C / 4)),
        ("def2_b1_r1", -(phi_tilde(one, one) + C / 4)),
        ("inner_integrand_rho1_x0.75", inner(mpf("0.75"), one)),
    ]
    for x in ["0.001", "0.1", "0.25", "0.5", "1.5", "3.7", "10.1", "50.5", "100.3", "170"]:
        rows.append(("log_gamma_" + x, loggamma(mpf(x))))
    for name, v in rows:
        out.write(f"{name} {fmt(v)}\n")


def fig1(out, n=200):
    out.write("r,phi_minus_infinity\n")
    for r in log_grid(0.01, 50.0, n):
        out.write(f"{r!r},{fmt(phi_minus_inf(mpf(1), mpf(r)))}\n")


def fig2(out, n=500):
    out.write("r,def1,def2,coulomb,single\n")
    for r in lin_grid(0.02, 10.0, n):
        rr = mpf(r)
        d1 = -(phi(mpf(1), rr) + C / 4)
        d2 = -(phi_tilde(mpf(1), rr) + C / 4)
        out.write(f"{r!r},{fmt(d1)},{fmt(d2)},{fmt(-1 / rr)},{fmt(-single(rr))}\n")


if __name__ == "__main__":
    which = sys.argv[1:] or ["scalars", "fig1", "fig2"]
    if "scalars" in which:
        with open("crates/core/tests/golden/scalars.txt", "w") as f:
            scalars(f)
    if "fig1" in which:
        with open("crates/cli/tests/golden/fig1_oracle.csv", "w") as f:
            fig1(f)
    if "fig2" in which:
        with open("crates/cli/tests/golden/fig2_oracle.csv", "w") as f:
            fig2(f)
