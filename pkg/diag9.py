"""Locate slope poles on the descending circle; test Gauss quadrature."""

import math

import numpy as np

from ncsphere.elliptic import (
    _jacobian_constants,
    curve_point,
    elliptic_triple,
    period_Omega,
)
from ncsphere.moduli import PhiPoint
from ncsphere.pairing import curve_R, dR_dm, omega_density

phid = PhiPoint((1.1, 0.8, 0.4))
Td = elliptic_triple(phid)
Om = period_Omega(phid).Omega
k, l, mi, c_k, t_k = _jacobian_constants(phid)
print(f"k={k} l={l} mi={mi} c_k={c_k:.6f} t_k={t_k:.6f}")
ti = Td.M.tau.imag
prev = None
for frac in np.linspace(0.02, 0.98, 49):
    v = curve_point(Td, float(frac * ti)).normalized().array()
    den = v[0] ** 2 + c_k * v[l] ** 2
    if prev is not None and (den.real * prev < 0):
        print(f"  denominator sign change near frac {frac:.3f}")
    prev = den.real
    if abs(frac * 100 % 10) < 1:
        R = curve_R(phid, float(frac * ti), Td)
        print(f"  frac {frac:.2f}: den={den.real:+.5f}  R={R.real:+.6f}")

# Gauss-Legendre integral of omega over a pole-free window vs 6 pi Om dR
for lo, hi in ((0.10, 0.40), (0.55, 0.90), (0.10, 0.90)):
    xg, wg = np.polynomial.legendre.leggauss(24)
    a, b = lo * ti, hi * ti
    mids = 0.5 * (b - a) * xg + 0.5 * (b + a)
    vals = np.array([omega_density(float(m), phid, Td) for m in mids])
    integ = 0.5 * (b - a) * np.sum(wg * vals)
    rhs = 6 * math.pi * Om * (curve_R(phid, b, Td) - curve_R(phid, a, Td))
    scale = max(abs(integ), abs(rhs), 1.0)
    print(f"window ({lo},{hi}): int={integ:.8g} rhs={rhs:.8g} "
          f"rel={abs(integ - rhs) / scale:.3e}")
