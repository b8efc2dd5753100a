"""Third round: theta-closed vol slope across chambers; rat2 brute force."""

import math
from itertools import permutations

import numpy as np

from ncsphere.elliptic import curve_point, elliptic_triple, period_Omega
from ncsphere.moduli import PhiPoint, trig_invariants
from ncsphere.pairing import omega_density
from ncsphere.theta import theta
from ncsphere.variety import (
    ProjPoint,
    involution,
    q_p,
    q_x,
    quadratic_form_eval,
)

print("=== theta-closed R across chambers ===")
for label, ph in (("asc", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc", PhiPoint((1.1, 0.8, 0.4))),
                  ("mid", PhiPoint((0.8, 0.4, 1.1))),
                  ("mid2", PhiPoint((0.4, 1.1, 0.8)))):
    T = elliptic_triple(ph)
    M, eta = T.M, T.eta
    tri = trig_invariants(ph)
    s1 = tri.s[0]
    lam, Lam = T.lam, tri.Lambda
    prod_sin = math.prod(math.sin(p) for p in ph.phi)
    b1 = 4 * theta(1, eta, M) ** 2 / (s1 * theta(2, eta, M) ** 2)
    b2 = 4 * (s1 - 1) / s1
    c_big = (24 * (2 * math.pi) ** 3 * prod_sin ** 2 * theta(1, eta, M)
             * theta(3, 0.0, M) ** 2 * theta(4, 0.0, M) ** 2
             / (math.pi * b2 * lam * Lam
                * theta(2, eta, M) * theta(3, eta, M) * theta(4, eta, M)))

    def R_closed(m):
        t1s = theta(1, 1j * m, M) ** 2
        t2s = theta(2, 1j * m, M) ** 2
        return c_big * t1s / (b1 * t1s + b2 * t2s)

    Om = period_Omega(ph).Omega
    rs = []
    for frac in (0.23, 0.47, 0.71):
        m = frac * T.M.tau.imag
        om = omega_density(m, ph, T)
        h = 1e-6
        dr = (R_closed(m + h) - R_closed(m - h)) / (2 * h)
        rs.append(om / (6 * math.pi * Om * dr))
    print(f"{label}: ratios {[f'{r.real:+.9f}{r.imag:+.1e}j' for r in rs]}")

print()
print("=== rat2 brute force on the real circle (asc) ===")
ph = PhiPoint((0.4, 0.8, 1.1))
T = elliptic_triple(ph)
p1, p2, p3 = ph.phi
s1 = trig_invariants(ph).s[0]
b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
P, Q = q_p(ph), q_x(ph)

fracs = (0.17, 0.33, 0.52, 0.74)
pts = []
for frac in fracs:
    m = frac * T.M.tau.imag
    v = curve_point(T, m).normalized().array()
    pts.append(ProjPoint(tuple(v), "Z"))

combos = {
    "I0": lambda Z: involution("I0", Z),
    "I1": lambda Z: involution("I1", Z),
    "I2": lambda Z: involution("I2", Z),
    "I3": lambda Z: involution("I3", Z),
    "I2I0": lambda Z: involution("I2", involution("I0", Z)),
    "I3I0": lambda Z: involution("I3", involution("I0", Z)),
    "I1I0": lambda Z: involution("I1", involution("I0", Z)),
    "inv": lambda Z: involution("I", Z),
    "invI0": lambda Z: involution("I", involution("I0", Z)),
    "invI3I0": lambda Z: involution(
        "I", involution("I3", involution("I0", Z))),
}

for name, jfn in combos.items():
    lhs = []
    ok_eval = True
    for Z in pts:
        jZ = jfn(Z)
        den = quadratic_form_eval(Q, Z, jZ)
        if abs(den) < 1e-10:
            ok_eval = False
            break
        lhs.append(b * quadratic_form_eval(P, Z, jZ) / den)
    if not ok_eval:
        continue
    varr = [Z.array() for Z in pts]
    for al, be in permutations(range(4), 2):
        x = np.array([vv[al] ** 2 for vv in varr])
        y = np.array([vv[be] ** 2 for vv in varr])
        t = np.array(lhs)
        # t = x/(x + c y) + v0  <=>  y t c - x v0 - y w = x - t x,  w := v0 c
        A = np.stack([y * t, -x, -y], axis=1)
        rhs = x - t * x
        sol, *_ = np.linalg.lstsq(A[:3], rhs[:3], rcond=None)
        c, v0, w = sol
        res4 = abs(A[3] @ sol - rhs[3])
        consist = abs(v0 * c - w)
        if res4 < 1e-8 * max(1.0, abs(rhs[3])) and consist < 1e-6:
            print(f"  HIT {name} pair (Z{al}, Z{be}): c={c.real:+.6f} "
                  f"v0={v0.real:+.6f}  (res4={res4:.1e})")

print()
print("candidate constants:")
print(f"  1/s1={1 / s1:+.6f}  tan(p2)cot(p1-p2)={math.tan(p2) / math.tan(p1 - p2):+.6f}")
print(f"  tan(p3)cot(p1-p3)={math.tan(p3) / math.tan(p1 - p3):+.6f}  "
      f"tan(p2)cot(p3-p2)={math.tan(p2) / math.tan(p3 - p2):+.6f}")
print(f"  tan(p1)cot(p2-p1)={math.tan(p1) / math.tan(p2 - p1):+.6f}  "
      f"tan(p1)cot(p3-p1)={math.tan(p1) / math.tan(p3 - p1):+.6f}")
print(f"  tan(p3)cot(p2-p3)={math.tan(p3) / math.tan(p2 - p3):+.6f}  "
      f"tan(p2)cot(p2-p1)={math.tan(p2) / math.tan(p2 - p1):+.6f}")
