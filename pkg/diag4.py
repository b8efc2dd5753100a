"""Fit lhs = u * x/(x + c y) + v for rat2, with (u, c, v) all free."""

import math
from itertools import permutations

import numpy as np

from ncsphere.elliptic import curve_point, elliptic_triple
from ncsphere.moduli import PhiPoint, trig_invariants
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
    tri = trig_invariants(ph)
    s1, s2, s3 = tri.s
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    P, Q = q_p(ph), q_x(ph)
    pts = []
    for frac in (0.13, 0.27, 0.44, 0.58, 0.77, 0.88):
        m = frac * T.M.tau.imag
        v = curve_point(T, m).normalized().array()
        pts.append(ProjPoint(tuple(v), "Z"))
    for jname, jfn in (
            ("I2I0", lambda Z: involution("I2", involution("I0", Z))),
            ("I2", lambda Z: involution("I2", Z))):
        lhs = []
        skip = False
        for Z in pts:
            jZ = jfn(Z)
            den = quadratic_form_eval(Q, Z, jZ)
            if abs(den) < 1e-10:
                skip = True
                break
            lhs.append(b * quadratic_form_eval(P, Z, jZ) / den)
        if skip:
            continue
        print(f"{label} {jname}: lhs = "
              f"{[f'{t.real:+.6f}' for t in lhs]}")
        varr = [Z.array() for Z in pts]
        for al, be in permutations(range(4), 2):
            x = np.array([vv[al] ** 2 for vv in varr])
            y = np.array([vv[be] ** 2 for vv in varr])
            t = np.array(lhs)
            # t = u x/(x + c y) + v  <=>  t x + c (t y) = (u+v) x + (v c) y
            A = np.stack([t * y, x, y], axis=1)
            rhs = t * x
            sol, *_ = np.linalg.lstsq(A[:3], rhs[:3], rcond=None)
            c, alpha, beta = sol
            ok = all(abs(A[i] @ sol - rhs[i]) < 1e-8 * max(1.0, abs(rhs[i]))
                     for i in (3, 4, 5))
            if ok and abs(c) > 1e-8:
                v0 = beta / c
                u = alpha - v0
                print(f"{label} {jname} (Z{al}, Z{be}): "
                      f"u={u.real:+.8f} c={c.real:+.8f} v={v0.real:+.8f}")
    print(f"  {label} candidates: c1={math.tan(p2) / math.tan(p1 - p2):+.6f} "
          f"1/s1={1 / s1:+.6f} 1/s2={1 / s2:+.6f} 1/s3={1 / s3:+.6f}")
    print(f"  t1={math.tan(p1):+.6f} t2={math.tan(p2):+.6f} t3={math.tan(p3):+.6f} "
          f"b={b:+.6f}")
