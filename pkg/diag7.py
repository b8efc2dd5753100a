"""Unique Mobius fit of the bilinear ratio in w = Z3^2/Z2^2."""

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


def lhs_w(ph, T, zpt):
    vv = zpt.normalized().array()
    Zn = ProjPoint(tuple(vv), "Z")
    j2Z = involution("I2", involution("I0", Zn))
    p1, p2, p3 = ph.phi
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    t = b * quadratic_form_eval(q_p(ph), Zn, j2Z) / \
        quadratic_form_eval(q_x(ph), Zn, j2Z)
    w = vv[3] ** 2 / vv[2] ** 2
    return t, w


for label, ph in (("asc", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc", PhiPoint((1.1, 0.8, 0.4))),
                  ("mid", PhiPoint((0.8, 0.4, 1.1)))):
    T = elliptic_triple(ph)
    tau_im = T.M.tau.imag if abs(T.M.tau.real) < 1e-12 else None
    samples = []
    for frac in (0.11, 0.29, 0.47):
        m = frac * (tau_im if tau_im else 1.0)
        samples.append(lhs_w(ph, T, curve_point(T, m)))
    # t*w = A*w - c*t + B with A = u+v, B = v*c
    M = np.array([[w, -t, 1.0] for t, w in samples], dtype=complex)
    rhs = np.array([t * w for t, w in samples], dtype=complex)
    A, c, B = np.linalg.solve(M, rhs)
    v = B / c
    u = A - v
    # verify at 20 fresh points, on circle and complex z
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(20):
        z = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.2, 0.2))
        t, w = lhs_w(ph, T, psi(z, T))
        worst = max(worst, abs(t - (u * w / (w + c) + v)))
    t1, t2, t3 = (math.tan(x) for x in ph.phi)
    c1 = t2 * (1 + t1 * t2) / (t1 - t2)
    s1 = 1 + t2 * t3
    print(f"{label}: u={u:.10f} c={c:.10f} v={v:.10f} worst={worst:.2e}")
    print(f"   c1={c1:+.8f} -1/s1={-1/s1:+.8f} u+v={A:.8f}")
