#!/usr/bin/env python3
"""Independent mpmath oracle for data/fixtures.json.

Nothing here calls into the C++ library. Values are computed at 40 digits and written with
25 significant digits as {"re": "...", "im": "..."} strings.

    python3 tools/oracle/make_fixtures.py [output]
"""
import json
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
I = mp.mpc(0, 1)
PI = mp.pi
C0 = 1 / (2 * PI * I)


def digits(x):
    return mp.nstr(x, 25, min_fixed=-mp.inf, max_fixed=mp.inf) if x != 0 else "0"


def entry(z):
    z = mp.mpc(z)
    # quadrature / root-finding leave ~1e-40 dust on exactly real or imaginary values
    tiny = mp.mpf(10) ** -32 * max(1, abs(z))
    z = mp.mpc(0 if abs(z.real) < tiny else z.real, 0 if abs(z.imag) < tiny else z.imag)
    return {"re": digits(z.real), "im": digits(z.imag)}


# theta_1(z | q) = 2 sum (-1)^n q^{(n+1/2)^2} sin((2n+1) z); jtheta uses this normalization.
def gamma(mu):
    q = mp.exp(I * PI * mu)
    return -(PI * I / 3) * mp.jtheta(1, 0, q, 3) / mp.jtheta(1, 0, q, 1)


def log_eta(mu):
    # i pi mu / 12 + sum log(1 - q^{2n}), straight product, many more terms than needed
    q2 = mp.exp(2 * I * PI * mu)
    s = I * PI * mu / 12
    term = mp.mpf(1)
    for _ in range(400):
        term *= q2
        if abs(term) < mp.mpf(10) ** (-45):
            break
        s += mp.log(1 - term)
    return s


def eta(mu):
    return mp.exp(log_eta(mu))


def rf_quadrature(x, y, z):
    f = lambda t: 1 / mp.sqrt((t + x) * (t + y) * (t + z))
    return mp.quad(f, [0, 1, 10, mp.inf]) / 2


# Square lattice of the branch triple (1, 0, -1): g2 = 4, g3 = 0.
E = [mp.mpf(1), mp.mpf(0), mp.mpf(-1)]
OMEGA = mp.ellipk(mp.mpf(1) / 2) / mp.sqrt(2)  # real half-period, K(m=1/2)/sqrt(e1 - e3)
OMEGA_P = I * OMEGA
ETA1 = PI / (4 * OMEGA)  # Legendre relation plus the i-symmetry of the square lattice


def wp(z):
    # wp(z) = e3 + (e1 - e3) / sn^2(sqrt(e1 - e3) z | m), m = (e2 - e3)/(e1 - e3)
    s = mp.sqrt(E[0] - E[2])
    return E[2] + (E[0] - E[2]) / mp.ellipfun("sn", s * z, m=(E[1] - E[2]) / (E[0] - E[2])) ** 2


RAM = [OMEGA, OMEGA + OMEGA_P, OMEGA_P]


def frame(i):
    # d zeta / d x_i = sqrt(2 / wp''(zeta_i)), wp''(zeta_i) = 2 prod_{j != i} (e_i - e_j), principal root
    d2 = 2 * mp.fprod(E[i] - E[j] for j in range(3) if j != i)
    return mp.sqrt(2 / d2)


def rotation_lemniscatic():
    # On the square lattice eta1/omega equals pi/(4 omega^2 Im mu), so Omega(P_i, P_j) = wp(P_i - P_j)
    # in the zeta frame, and that value is the third half-period value e_k.
    f = [frame(i) for i in range(3)]
    fb = [mp.conj(x) for x in f]
    B = PI / (4 * OMEGA * mp.conj(OMEGA))
    beta = {}
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            k = 3 - i - j
            beta[(i, j)] = E[k] * f[i] * f[j] / 2
            beta[(i + 3, j + 3)] = mp.conj(beta[(i, j)])
    for i in range(3):
        for j in range(3):
            beta[(i, j + 3)] = B * f[i] * fb[j] / 2
            beta[(j + 3, i)] = beta[(i, j + 3)]
    return beta


def schiffer_diag_limit(i):
    """S_i as the limit of W(x, -x) - 1/(2x)^2 in the x_i = sqrt(lambda - lambda_i) frame.

    The two points sit on opposite sheets over lambda_i + x^2; W is (wp(u) + eta1/omega) d zeta d zeta.
    Richardson extrapolation in x^2.
    """
    zi = RAM[i]

    def zeta_of(x):
        z = zi + frame(i) * x
        for _ in range(60):
            g = wp(z) - E[i] - x * x
            dz = g / mp.diff(wp, z)
            z -= dz
            if abs(dz) < mp.mpf(10) ** (-35):
                break
        return z

    def w_val(x):
        zp, zm = zeta_of(x), zeta_of(-x)
        dp = 2 * x / mp.diff(wp, zp)
        dm = -2 * x / mp.diff(wp, zm)
        return (wp(zp - zm) + ETA1 / OMEGA) * dp * dm - 1 / (4 * x * x)

    hs = [mp.mpf("0.02") / 2**k for k in range(5)]
    vals = [w_val(h) for h in hs]
    # error expansion in powers of h^2
    table = [vals]
    for lvl in range(1, len(vals)):
        prev = table[-1]
        fac = mp.mpf(4) ** lvl
        table.append([(fac * prev[k + 1] - prev[k]) / (fac - 1) for k in range(len(prev) - 1)])
    return table[-1][0]


def prepotential_s(t):
    t1, t2, t3, t4, t5, t6 = t
    u = 2 * PI * I * t6 - 1
    poly = (-t1 * t2**2 / 4 - t1 * t5**2 / 4 + t1**2 * t3 / 2 - t1 * t4 * (2 * t6 - C0) / 2
            + (t2**2 * t4 * (t6 - C0) / 4 + t4 * t5**2 * t6 / 4 + t4**2 * t6 * (t6 - C0) / 2
               + t2**2 * t5**2 / 16) / t3)
    a = t2**4 / 32 * (-1 / (4 * PI * I) / t6**2 * gamma(t3 / t6) + 1 / t3 - C0 / (t3 * t6))
    b = t5**4 / 32 * (-PI * I / u**2 * gamma(2 * PI * I * t3 / (1 - 2 * PI * I * t6))
                      + 1 / t3 + 1 / (t3 * u))
    return poly + a + b


def prepotential_t(t):
    t1, t2, t3, t4, t5, t6 = t
    return (-t1 * t2**2 / 4 - t1 * t5**2 / 4 + t1 * t4 * (2 * t3 - C0) / 2 - t1**2 * t6 / 2
            - t3 * (t3 - C0) * t4**2 / (2 * t6) - t2**2 * t5**2 / (16 * t6)
            - t2**4 / (32 * t6) - t2**4 / t6**2 * gamma(t3 / t6) / (128 * PI * I)
            + t3 * t4 * t5**2 / (4 * t6)
            - t5**4 / (32 * t6) - t5**4 / t6**2 * gamma((1 - 2 * PI * I * t3) / (2 * PI * I * t6)) / (128 * PI * I)
            + (t3 - C0) * t4 * t2**2 / (4 * t6))


def g_function_t(t):
    # t6^{-1/2} variant, principal logarithms of t2 t5 and t6
    t1, t2, t3, t4, t5, t6 = t
    return -(log_eta(t3 / t6) + log_eta((1 - 2 * PI * I * t3) / (2 * PI * I * t6))
             + mp.log(t2 * t5) / 8 - mp.log(t6) / 2)


def point(*xs):
    return [mp.mpc(mp.mpf(a), mp.mpf(b)) for a, b in xs]


PT_S = point(("0.3", "0.1"), ("0.7", "-0.2"), ("0.09", "0.02"), ("0.45", "-0.05"), ("0.4", "0.2"), ("0.03", "-0.08"))
PT_T = point(("0.2", "-0.1"), ("0.1", "-0.4"), ("0.05", "-0.08"), ("0.3", "0.1"), ("0.2", "0.35"), ("-0.09", "0.01"))


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parents[2] / "data" / "fixtures.json"
    fx = {}
    qi = mp.exp(-PI)
    fx["T1P_I"] = mp.jtheta(1, 0, qi, 1)
    fx["ETA_I"] = eta(I)
    fx["GAMMA_I"] = gamma(I)
    fx["GAMMA_PT"] = gamma(mp.mpc("0.2", "0.9"))
    fx["RF_012"] = rf_quadrature(0, 1, 2)
    fx["OMEGA_LEMN"] = OMEGA
    fx["ETA1_LEMN"] = ETA1
    for (i, j), v in sorted(rotation_lemniscatic().items()):
        fx[f"ROT_LEMN_{i}{j}"] = v
    for i in range(3):
        fx[f"S_LEMN_{i}"] = schiffer_diag_limit(i)
    fx["F_S_PT1"] = prepotential_s(PT_S)
    fx["F_T_PT1"] = prepotential_t(PT_T)
    fx["G_T_PT1"] = g_function_t(PT_T)
    doc = {
        "format": "name -> {re, im}, 25 significant digits",
        "generator": "tools/oracle/make_fixtures.py (mpmath, 40 digits)",
        "points": {
            "F_S_PT1": [entry(z) for z in PT_S],
            "F_T_PT1": [entry(z) for z in PT_T],
        },
        "values": {k: entry(v) for k, v in fx.items()},
    }
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n")
    print(f"wrote {len(fx)} values to {out}")


if __name__ == "__main__":
    main()
