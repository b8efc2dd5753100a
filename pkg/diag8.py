"""Closed form for the rat2 offset v, with numeric validation of every step."""

import math

import numpy as np
import sympy as sp

from ncsphere.elliptic import curve_point, elliptic_triple
from ncsphere.moduli import PhiPoint
from ncsphere.variety import (
    ProjPoint,
    involution,
    q_p,
    q_x,
    quadratic_form_eval,
)

t1, t2, t3, x = sp.symbols("t1 t2 t3 x", positive=True)
s1 = 1 + t2 * t3
s2 = 1 + t1 * t3
s3 = 1 + t1 * t2

Z0sq = x
Zsq = {1: x - s1, 2: x - s2, 3: x - s3}

# diagonal coefficients over the common prod-cos^2 factor
qx = {0: -(t1 - t2) * (t1 - t3) * (t2 - t3),
      1: -(1 + t1 ** 2) * (t2 - t3),
      2: -(1 + t2 ** 2) * (t3 - t1),
      3: -(1 + t3 ** 2) * (t1 - t2)}


def pk(tk, tl, tm):
    return tk * (tl - tm) * (1 - tl * tm + tk * tl + tk * tm)


qp = {0: sp.Integer(0), 1: pk(t1, t2, t3), 2: pk(t2, t3, t1),
      3: pk(t3, t1, t2)}

eps = {0: -1, 1: 1, 2: -1, 3: 1}  # sign pattern of the composed flip
b = t2 * t3 / s1

Qv = sum(qx[k] * eps[k] * (Z0sq if k == 0 else Zsq[k]) for k in range(4))
Pv = sum(qp[k] * eps[k] * (Z0sq if k == 0 else Zsq[k]) for k in range(4))
lhs_sym = b * Pv / Qv

# validate against the module at two real-circle points
ph = PhiPoint((0.4, 0.8, 1.1))
T = elliptic_triple(ph)
tv = [math.tan(v) for v in ph.phi]
sv = [1 + tv[1] * tv[2], 1 + tv[0] * tv[2], 1 + tv[0] * tv[1]]
for frac in (0.17, 0.43):
    m = frac * T.M.tau.imag
    vv = curve_point(T, m).normalized().array()
    ratios = [(vv[0] ** 2 - vv[j] ** 2) / sv[j - 1] for j in (1, 2, 3)]
    print("common-value spread:", np.ptp(np.abs(ratios)))
    xval = vv[0] ** 2 / ratios[0]
    Zn = ProjPoint(tuple(vv), "Z")
    j2Z = involution("I2", involution("I0", Zn))
    num = quadratic_form_eval(q_p(ph), Zn, j2Z) / \
        quadratic_form_eval(q_x(ph), Zn, j2Z)
    bnum = math.sin(ph.phi[1]) * math.sin(ph.phi[2]) / \
        math.cos(ph.phi[1] - ph.phi[2])
    tnum = bnum * num
    tsym = complex(lhs_sym.subs({t1: tv[0], t2: tv[1], t3: tv[2], x: xval}))
    print(f"  lhs module {tnum:.12f}  symbolic {tsym:.12f}  "
          f"diff {abs(tnum - tsym):.2e}")

c1 = t2 * (1 + t1 * t2) / (t1 - t2)
u = t1 * t2 * t3
w = Zsq[3] / Zsq[2]
vexpr = sp.cancel(sp.together(lhs_sym - u * w / (w + c1)))
vred = sp.factor(sp.simplify(vexpr))
print("v =", vred)
print("x-free:", x not in vred.free_symbols)
print("v numeric asc:", complex(vred.subs({t1: tv[0], t2: tv[1], t3: tv[2]})
                                if x not in vred.free_symbols
                                else vred.subs({t1: tv[0], t2: tv[1],
                                                t3: tv[2], x: 2.0})))
