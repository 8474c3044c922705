#!/usr/bin/env python3
"""Generate frozen reference values for the test suite.

Everything here is computed with mpmath at 40 significant digits using
implementations that are deliberately independent of the package: direct
series for the lattice theta function, mp.quad for every integral, and
classical cosh/sinh closed forms for the resummed Fourier series.  The
script cross-checks redundant routes against each other and aborts if any
disagree, so a frozen value can only come from at least two consistent
derivations.

Outputs:
    tests/fixtures/golden.json     string-precision values plus metadata
    src/casimirlab/_golden.py      the same values rounded to doubles

Run from the repository root:  python3 scripts/make_fixtures.py
"""

import json
import os
import sys

import mpmath as mp

mp.mp.dps = 40

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

CHECKS = []


def check(name, diff, tol):
    ok = abs(diff) < tol
    CHECKS.append((name, float(abs(diff)), float(tol), ok))
    status = "ok" if ok else "FAIL"
    print(f"  [{status}] {name}: |diff| = {mp.nstr(abs(diff), 3)} (tol {float(tol):g})")
    if not ok:
        raise SystemExit(f"cross-check failed: {name}")


# ----------------------------------------------------------------------
# theta function, two independent evaluation routes


def theta_direct(z, s, terms=4000):
    """Sum_{n in Z} exp(-pi n^2 s + 2 pi i n z) for real z, s > 0."""
    z, s = mp.mpf(z), mp.mpf(s)
    total = mp.mpf(1)
    for n in range(1, terms):
        envelope = 2 * mp.exp(-mp.pi * n * n * s)
        total += envelope * mp.cos(2 * mp.pi * n * z)
        if envelope < mp.mpf(10) ** (-mp.mp.dps - 8):
            return total
    raise SystemExit("theta_direct did not converge")


def theta_image(z, s, terms=4000):
    """Same function via the heat-kernel image sum, good for small s."""
    z, s = mp.mpf(z), mp.mpf(s)
    total = mp.mpf(0)
    for k in range(-terms, terms + 1):
        t = mp.exp(-mp.pi * (k + z) ** 2 / s)
        total += t
        if k > 3 and t < mp.mpf(10) ** (-mp.mp.dps - 8) and z + k > 0:
            break
    return total / mp.sqrt(s)


def theta(z, s):
    return theta_direct(z, s) if s >= mp.mpf("0.3") else theta_image(z, s)


print("theta consistency:")
for z in (0, mp.mpf(1) / 4, mp.mpf(1) / 2, mp.mpf("0.31")):
    for s in (mp.mpf("0.3"), mp.mpf("0.7"), 1, 3):
        check(
            f"theta direct vs image z={mp.nstr(mp.mpf(z),3)} s={mp.nstr(mp.mpf(s),3)}",
            theta_direct(z, s) - theta_image(z, s),
            mp.mpf(10) ** (-35),
        )

theta_0_i = theta_direct(0, 1)
check(
    "theta(0,i) vs pi^(1/4)/Gamma(3/4)",
    theta_0_i - mp.pi ** mp.mpf("0.25") / mp.gamma(mp.mpf(3) / 4),
    mp.mpf(10) ** (-35),
)

# ----------------------------------------------------------------------
# erf anchor: library value vs quadrature of the defining integral

erf_1 = mp.erf(1)
erf_1_quad = 2 / mp.sqrt(mp.pi) * mp.quad(lambda t: mp.exp(-t * t), [0, 1])
check("erf(1) vs defining integral", erf_1 - erf_1_quad, mp.mpf(10) ** (-35))

# ----------------------------------------------------------------------
# Bessel K0 anchors: library vs the exponential-integral representation

k0_1 = mp.besselk(0, 1)
two_k0_2 = 2 * mp.besselk(0, 2)
k0_2_quad = mp.quad(lambda u: mp.exp(-1 / u - u) / u, [0, 1, mp.inf])
check("2*K0(2) vs int exp(-1/u-u)/u", two_k0_2 - k0_2_quad, mp.mpf(10) ** (-30))

# ----------------------------------------------------------------------
# reflecting-mode closed forms


def force_reflecting(beta, L):
    s = L * mp.sqrt(2 * beta)
    return mp.sqrt(2 * beta) / (mp.exp(s) + 1)


F_R_1_1 = force_reflecting(1, 1)
check(
    "reflecting force stable vs naive form",
    F_R_1_1 - mp.sqrt(mp.mpf(1) / 2) * (1 - mp.exp(-mp.sqrt(2))) / mp.sinh(mp.sqrt(2)),
    mp.mpf(10) ** (-38),
)

V_half_b1_L2 = 1 / mp.cosh(mp.sqrt(2))
check(
    "midpoint parity identity 2 sinh(s/2)/sinh(s) = 1/cosh(s/2)",
    V_half_b1_L2 - 2 * mp.sinh(mp.sqrt(2)) / mp.sinh(2 * mp.sqrt(2)),
    mp.mpf(10) ** (-38),
)

# ----------------------------------------------------------------------
# absorbing mode, outside of a single wall


def rho_outside(beta, x):
    beta, x = mp.mpf(beta), mp.mpf(x)
    split = mp.sqrt(x * x / (8 * beta))

    def f(u):
        return -2 * beta * mp.exp(-4 * beta * u) / mp.sqrt(2 * mp.pi * u) * mp.erf(
            x / mp.sqrt(2 * u)
        )

    return mp.quad(f, [0, split, 8 * split, mp.inf])


rho_out_b1_x1 = rho_outside(1, -1)
check(
    "rho_outside(-50) saturates at sqrt(beta/2)",
    rho_outside(1, -50) - mp.sqrt(mp.mpf(1) / 2),
    mp.mpf(10) ** (-18),
)


def parity_outside(beta, x, y):
    beta, x, y = mp.mpf(beta), mp.mpf(x), mp.mpf(y)

    def f(u):
        c = 2 * mp.sqrt(2 * u)
        return 4 * beta * mp.exp(-4 * beta * u) * mp.erf((x + y) / c) * mp.erf((y - x) / c)

    return 1 + mp.quad(f, [0, mp.mpf(1) / (4 * beta), mp.inf])


V_out_b1_m2_m1 = parity_outside(1, -2, -1)

flux_out_b1_xhalf = 4 / mp.pi * mp.besselk(0, mp.sqrt(2))


def flux_outside_quad(beta, x):
    beta, x = mp.mpf(beta), mp.mpf(abs(x))
    split = mp.sqrt(x * x / (8 * beta))

    def f(u):
        return 2 * beta / (mp.pi * u) * mp.exp(-x * x / (2 * u) - 4 * beta * u)

    return mp.quad(f, [0, split, 8 * split, mp.inf])


check(
    "outside flux quadrature vs Bessel identity",
    flux_outside_quad(1, -mp.mpf("0.5")) - flux_out_b1_xhalf,
    mp.mpf(10) ** (-30),
)

# ----------------------------------------------------------------------
# inside flux: theta-kernel integral vs resummed Fourier series


def flux_inside_theta(beta, L, x):
    beta, L, x = mp.mpf(beta), mp.mpf(L), mp.mpf(x)

    def f(u):
        s = mp.pi * u / L**2
        t1 = theta(x / (2 * L), s)
        t2 = theta((x + L) / (2 * L), s)
        return 2 * beta / L**2 * mp.exp(-4 * beta * u) * (t1 * t1 - t2 * t2)

    return mp.quad(f, [0, x * x / 2, L * L / mp.pi, mp.inf])


def flux_inside_series(beta, L, x):
    """Double Fourier series, inner index summed in closed form."""
    beta, L, x = mp.mpf(beta), mp.mpf(L), mp.mpf(x)
    theta_ang = mp.pi * x / L
    q = 2 * L * mp.sqrt(beta) / mp.pi

    def odd_cos_sum(a):
        # sum_{n odd} cos(n t)/(n^2+a^2)
        return (
            mp.pi
            / (4 * a)
            * (mp.cosh(a * (mp.pi - theta_ang)) - mp.cosh(a * theta_ang))
            / mp.sinh(a * mp.pi)
        )

    total = odd_cos_sum(q) / 2
    tiny = mp.mpf(10) ** (-mp.mp.dps - 5)
    m = 1
    while True:
        a = mp.sqrt(m * m + q * q)
        w = (
            mp.pi
            / (4 * a)
            * (mp.cosh(a * (mp.pi - theta_ang)) - (-1) ** m * mp.cosh(a * theta_ang))
            / mp.sinh(a * mp.pi)
        )
        total += mp.cos(m * theta_ang) * w
        if abs(w) < tiny and m > 10:
            break
        m += 1
        if m > 30000:
            raise SystemExit("flux series did not converge")
    return 16 * beta / mp.pi**2 * total


print("inside flux, theta route vs series route:")
flux_inside_b1_L1 = {}
for xv in ("0.1", "0.3", "0.5"):
    jt = flux_inside_theta(1, 1, mp.mpf(xv))
    js = flux_inside_series(1, 1, mp.mpf(xv))
    check(f"flux_inside theta vs series at x={xv}", jt - js, mp.mpf(10) ** (-25))
    flux_inside_b1_L1[xv] = js

check(
    "flux antisymmetry about the midpoint",
    flux_inside_series(1, 1, mp.mpf("0.7")) + flux_inside_b1_L1["0.3"],
    mp.mpf(10) ** (-30),
)

# ----------------------------------------------------------------------
# absorbing force: wall-rate integral form vs flux-limit extrapolation


def force_absorbing(beta, L):
    beta, L = mp.mpf(beta), mp.mpf(L)
    c = 4 * beta * L * L

    def f1(y):
        th = theta(0, 1 / (mp.pi * y))
        return 2 * beta / mp.pi * mp.exp(-c * y) / y * (1 - th * th)

    def f2(y):
        th = theta(mp.mpf(1) / 2, mp.pi * y)
        return 2 * beta * mp.exp(-c * y) * th * th

    s1 = 1 / (2 * L * mp.sqrt(beta))
    s2 = 1 / (2 * L * mp.sqrt(2 * beta))
    i1 = mp.quad(f1, [0, s1, 10 * s1, mp.inf])
    i2 = mp.quad(f2, [0, s2, 10 * s2, mp.inf])
    return i1 + i2


def force_absorbing_flux_limit(beta, L):
    beta, L = mp.mpf(beta), mp.mpf(L)
    x0 = mp.mpf("0.05") * min(L, 1 / mp.sqrt(beta))

    def D(x):
        jout = 4 * beta / mp.pi * mp.besselk(0, 2 * x * mp.sqrt(2 * beta))
        return jout - flux_inside_series(beta, L, x)

    d0, d1, d2 = D(x0), D(x0 / 2), D(x0 / 4)
    return (d0 - 20 * d1 + 64 * d2) / 45


print("absorbing force, integral form vs flux-limit Richardson:")
F_A = {}
for Lv in ("0.5", "1", "2"):
    fa = force_absorbing(1, mp.mpf(Lv))
    fr = force_absorbing_flux_limit(1, mp.mpf(Lv))
    check(f"force_absorbing routes at L={Lv}", (fa - fr) / fa, mp.mpf(10) ** (-7))
    print(f"    F_A(beta=1, L={Lv}) = {mp.nstr(fa, 25)}  route diff {mp.nstr(fa - fr, 3)}")
    F_A[Lv] = fa

# ----------------------------------------------------------------------
# inside density: direct partial sum (square cutoff) and resummed form


def density_inside_direct(beta, L, x, N):
    beta, L, x = mp.mpf(beta), mp.mpf(L), mp.mpf(x)
    pi = mp.pi
    cos_t = [mp.cos(pi * m * x / L) for m in range(N + 1)]
    sin_t = [mp.sin(pi * n * x / L) for n in range(N + 1)]
    total = mp.mpf(0)
    for n in range(1, N + 1, 2):
        total += 16 * beta * L / (n * pi * (n * n * pi * pi + 4 * beta * L * L)) * sin_t[n]
    for m in range(1, N + 1):
        for n in range(1 + (m % 2 == 1), N + 1, 2):
            if n == m:
                continue
            coef = 32 * beta * L * n / (
                pi * (n * n - m * m) * ((m * m + n * n) * pi * pi + 4 * beta * L * L)
            )
            total += coef * cos_t[m] * sin_t[n]
    return total


def density_inside_resummed(beta, L, x):
    beta, L, x = mp.mpf(beta), mp.mpf(L), mp.mpf(x)
    pi = mp.pi
    t = pi * x / L
    q = 2 * L * mp.sqrt(beta) / pi
    r = 2 * mp.sqrt(beta)
    single = (1 - (mp.sinh(r * (L - x)) + mp.sinh(r * x)) / mp.sinh(r * L)) / L
    c = q / mp.sqrt(2)
    part_a = (
        8 * beta * L / pi**2
        * (
            pi / (8 * c) * (mp.coth(pi * c) + mp.cosh(c * (pi - 2 * t)) / mp.sinh(c * pi))
            - 1 / (4 * c * c)
        )
    )
    tiny = mp.mpf(10) ** (-mp.mp.dps - 5)
    part_b = mp.mpf(0)
    m = 1
    while True:
        a = mp.sqrt(m * m + q * q)
        tm = (
            pi / 4
            * (mp.sinh(a * (pi - t)) + (-1) ** m * mp.sinh(a * t))
            / mp.sinh(a * pi)
        )
        term = mp.cos(m * t) * tm / (2 * m * m + q * q)
        part_b += term
        # Cut on a strictly positive envelope: both cos(m t) and tm can
        # vanish incidentally (e.g. every odd m at x = L / 2), which
        # must not be mistaken for convergence.
        envelope = pi / 4 * (mp.exp(-a * t) + mp.exp(-a * (pi - t))) / (2 * m * m + q * q)
        if envelope < tiny and m > 10:
            break
        m += 1
        if m > 30000:
            raise SystemExit("density series did not converge")
    return single + part_a - 32 * beta * L / pi**3 * part_b


print("inside density, direct partial sums converge to resummed value:")
rho_exact_x05 = density_inside_resummed(1, 1, mp.mpf("0.5"))
prev = None
for N in (128, 256, 512):
    d = density_inside_direct(1, 1, mp.mpf("0.5"), N)
    gap = abs(d - rho_exact_x05)
    print(f"    N={N}: partial = {mp.nstr(d, 20)}, |partial - exact| = {mp.nstr(gap, 3)}")
    if prev is not None and not gap < prev:
        raise SystemExit("direct density partial sums are not converging")
    prev = gap
check("density direct N=512 near resummed", prev, mp.mpf("2e-3"))
check(
    "density resummed symmetry rho(0.3) = rho(0.7)",
    density_inside_resummed(1, 1, mp.mpf("0.3")) - density_inside_resummed(1, 1, mp.mpf("0.7")),
    mp.mpf(10) ** (-30),
)
rho_partial_512_x05 = density_inside_direct(1, 1, mp.mpf("0.5"), 512)

# sanity: the resummed density must reproduce the wall flux by differentiation
fd_h = mp.mpf(10) ** (-8)
fd_flux = (
    density_inside_resummed(1, 1, mp.mpf("0.3") + fd_h)
    - density_inside_resummed(1, 1, mp.mpf("0.3") - fd_h)
) / (2 * fd_h)
check(
    "flux equals spatial derivative of density",
    fd_flux - flux_inside_b1_L1["0.3"],
    mp.mpf(10) ** (-12),
)

# ----------------------------------------------------------------------
# reflecting force on a 3x3 grid, for oracle comparisons

F_R_grid = {}
for b in ("0.5", "1", "2"):
    for Lv in ("0.5", "1", "2"):
        F_R_grid[f"{b},{Lv}"] = force_reflecting(mp.mpf(b), mp.mpf(Lv))

# ----------------------------------------------------------------------
# write outputs

values = {
    "theta_zero_tau_i": theta_0_i,
    "erf_one": erf_1,
    "bessel_k0_one": k0_1,
    "bessel_k0_two_doubled": two_k0_2,
    "force_reflecting_b1_L1": F_R_1_1,
    "parity_midpoint_b1_L2": V_half_b1_L2,
    "rho_outside_b1_x_minus1": rho_out_b1_x1,
    "parity_outside_b1_xm2_ym1": V_out_b1_m2_m1,
    "flux_outside_b1_x_minus_half": flux_out_b1_xhalf,
    "force_absorbing_b1_L0p5": F_A["0.5"],
    "force_absorbing_b1_L1": F_A["1"],
    "force_absorbing_b1_L2": F_A["2"],
    "flux_inside_b1_L1_x0p1": flux_inside_b1_L1["0.1"],
    "flux_inside_b1_L1_x0p3": flux_inside_b1_L1["0.3"],
    "flux_inside_b1_L1_x0p5": flux_inside_b1_L1["0.5"],
    "density_inside_partial_N512_b1_L1_x0p5": rho_partial_512_x05,
    "density_inside_b1_L1_x0p5": rho_exact_x05,
    "half_gaussian_weighted": 1 / (2 * mp.sqrt(2)),
}
for key, val in F_R_grid.items():
    b, Lv = key.split(",")
    values[f"force_reflecting_b{b.replace('.', 'p')}_L{Lv.replace('.', 'p')}"] = val

payload = {
    "_meta": {
        "generator": "scripts/make_fixtures.py",
        "mpmath_dps": 40,
        "cross_checks": [
            {"name": n, "abs_diff": d, "tol": t, "ok": ok} for n, d, t, ok in CHECKS
        ],
    },
    "values": {k: mp.nstr(v, 32) for k, v in sorted(values.items())},
}

fix_dir = os.path.join(ROOT, "tests", "fixtures")
os.makedirs(fix_dir, exist_ok=True)
with open(os.path.join(fix_dir, "golden.json"), "w") as fh:
    json.dump(payload, fh, indent=2, sort_keys=True)
    fh.write("\n")

lines = [
    '"""Frozen reference values. Generated by scripts/make_fixtures.py, do not edit."""',
    "",
]
for k in sorted(values):
    lines.append(f"{k.upper()} = {float(values[k])!r}")
lines.append("")
with open(os.path.join(ROOT, "src", "casimirlab", "_golden.py"), "w") as fh:
    fh.write("\n".join(lines))

print(f"\nwrote {len(values)} values, all {len(CHECKS)} cross-checks passed")
