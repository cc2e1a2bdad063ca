"""Regenerate the frozen values in tests/reference_values.py.

Independent of the package: adaptive scipy quadrature over the ellipse,
mpmath for the constants, and a lens-area form of the energy double integral
(the overlap of an ellipse with its translate by ``u`` is ``ab`` times the
overlap of two unit disks at distance ``|(u1/a, u2/b)|``).
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
from scipy.integrate import dblquad

A, B = 0.8, 1.2
OPTS = dict(epsabs=1e-13, epsrel=1e-13)


def over_ellipse(f):
    half = lambda x: B * np.sqrt(max(0.0, 1.0 - (x / A) ** 2))
    return dblquad(lambda y, x: f(x, y), -A, A, lambda x: -half(x), half, **OPTS)[0]


def over_ellipse_polar(f, z):
    """Polar coordinates centred at an interior ``z``; absorbs a log singularity."""
    zr, zi = z.real, z.imag

    def radius(t):
        c, s = np.cos(t), np.sin(t)
        qa = (c / A) ** 2 + (s / B) ** 2
        qb = 2 * (zr * c / A**2 + zi * s / B**2)
        qc = (zr / A) ** 2 + (zi / B) ** 2 - 1
        return (-qb + np.sqrt(qb * qb - 4 * qa * qc)) / (2 * qa)

    return dblquad(lambda r, t: f(zr + r * np.cos(t), zi + r * np.sin(t)) * r, 0, 2 * np.pi, 0, radius, **OPTS)[0]


def complex_integral(k):
    return over_ellipse(lambda x, y: k(x, y).real) + 1j * over_ellipse(lambda x, y: k(x, y).imag)


def W(u1, u2, al):
    r2 = u1 * u1 + u2 * u2
    return -0.5 * np.log(r2) + al * u1 * u1 / r2


def grad_W(u1, u2, al):
    r2 = u1 * u1 + u2 * u2
    return -u1 / r2 + al * (2 * u1 / r2 - 2 * u1**3 / r2**2), -u2 / r2 - al * 2 * u1 * u1 * u2 / r2**2


def lens_energy(a, b, al):
    disk_overlap = lambda r: 2 * np.arccos(r / 2) - (r / 2) * np.sqrt(4 - r * r)
    f = lambda r, t: W(a * r * np.cos(t), b * r * np.sin(t), al) * disk_overlap(r) * r
    inner = dblquad(f, 0, 2 * np.pi, 0, 2, epsabs=1e-14, epsrel=1e-14)[0]
    return 0.5 * inner / np.pi**2 + (a * a + b * b) / 8


def main():
    pi, area = np.pi, np.pi * A * B
    z = 2 + 0j
    print("CAUCHY_08_12_AT_2 =", complex_integral(lambda x, y: 1 / (pi * (z - (x + 1j * y)))).real)
    z = 2j
    print("CONV_CONJ_08_12_AT_2I =", complex_integral(lambda x, y: 1 / (pi * np.conj(z - (x + 1j * y)))))
    z = 1.5 + 0.5j
    print("Z_OVER_ZBAR2_08_12_AT_15_05 =",
          complex_integral(lambda x, y: -(z - (x + 1j * y)) / np.conj(z - (x + 1j * y)) ** 2 / pi))
    z = 2 + 1j
    g = [over_ellipse(lambda x, y: grad_W(z.real - x, z.imag - y, 0.5)[i]) / area for i in (0, 1)]
    print("GRAD_08_12_A05_AT_2_1 =", complex(*g))
    z = 0.1 + 0.1j
    print("LOGPOT_08_12_AT_01_01 =", over_ellipse_polar(lambda x, y: W(z.real - x, z.imag - y, 0.0), z) / area)
    z = 2 - 1j
    print("POT_08_12_A03_AT_2_M1 =", over_ellipse(lambda x, y: W(z.real - x, z.imag - y, 0.3)) / area)

    mp.mp.dps = 50
    al = mp.mpf("0.5")
    sm, sp = mp.sqrt(1 - al), mp.sqrt(1 + al)
    print("C_ALPHA_05 =", mp.nstr(mp.mpf(1) / 2 - mp.log((sm + sp) / 2) + al * sm / (sm + sp), 20))
    print("MIN_ENERGY_05 =", mp.nstr(mp.mpf(3) / 8 - mp.log((sm + sp) / 2) / 2 + al / 2 * sm / (sm + sp), 20))
    print("ELLIPSE_ENERGY_08_12 =", lens_energy(A, B, 0.5))


if __name__ == "__main__":
    main()
