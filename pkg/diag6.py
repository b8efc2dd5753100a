"""Confirm the derived rat2 constants on and off the real circle."""

import math

import numpy as np

from ncsphere.elliptic import curve_point, elliptic_triple, psi
from ncsphere.moduli import PhiPoint
from ncsphere.variety import (
    ProjPoint,
    involution,
    q_p,
    q_x,
    quadratic_form_eval,
)

for label, ph in (("asc", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc", PhiPoint((1.1, 0.8, 0.4)))):
    T = elliptic_triple(ph)
    p1, p2, p3 = ph.phi
    t1, t2, t3 = (math.tan(v) for v in ph.phi)
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    c1 = t2 * (1 + t1 * t2) / (t1 - t2)
    u = -t1 * t2 * t3 * (t1 * t1 * (t2 - t3) + t2 * (1 + t1 * t3)) / (
        (t1 - t2) * (1 + t1 * t3))
    v = t1 * t1 * t2 * t3 * (t2 - t3) / ((1 + t1 * t3) * (1 + t2 * t3))
    P, Q = q_p(ph), q_x(ph)
    worst_circ = 0.0
    for frac in (0.13, 0.37, 0.58, 0.81):
        m = frac * T.M.tau.imag
        vv = curve_point(T, m).normalized().array()
        Zn = ProjPoint(tuple(vv), "Z")
        j2Z = involution("I2", involution("I0", Zn))
        lhs = b * quadratic_form_eval(P, Zn, j2Z) / \
            quadratic_form_eval(Q, Zn, j2Z)
        rhs = u * vv[3] ** 2 / (vv[3] ** 2 + c1 * vv[2] ** 2) + v
        worst_circ = max(worst_circ, abs(lhs - rhs))
    rng = np.random.default_rng(5)
    worst_off = 0.0
    for _ in range(8):
        z = complex(rng.uniform(0, 1), rng.uniform(-0.15, 0.15))
        vv = psi(z, T).normalized().array()
        Zn = ProjPoint(tuple(vv), "Z")
        j2Z = involution("I2", involution("I0", Zn))
        lhs = b * quadratic_form_eval(P, Zn, j2Z) / \
            quadratic_form_eval(Q, Zn, j2Z)
        rhs = u * vv[3] ** 2 / (vv[3] ** 2 + c1 * vv[2] ** 2) + v
        worst_off = max(worst_off, abs(lhs - rhs))
    print(f"{label}: circle worst {worst_circ:.3e}, off-circle worst {worst_off:.3e}")
    print(f"   u={u:+.8f} c1={c1:+.8f} v={v:+.8f}")
