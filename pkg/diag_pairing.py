"""Diagnostics for the three smoke failures."""

import math

import numpy as np

from ncsphere.elliptic import (
    curve_point,
    elliptic_triple,
    elliptic_triple_from_tau_eta,
    period_Omega,
    psi,
    _jacobian_constants,
)
from ncsphere.moduli import PhiPoint, trig_invariants
from ncsphere.pairing import (
    dR_dm,
    g_closed,
    omega_density,
    pairing_density,
)
from ncsphere.theta import theta
from ncsphere.variety import (
    ProjPoint,
    involution,
    q_p,
    q_pprime,
    q_prime,
    q_x,
    quadratic_form_eval,
)

print("=== A: D/g per m at failing (tau, eta) pairs ===")
for tau, eta in ((1.0j, 0.22), (1.5j, 0.41), (1.2j, 0.22), (1.2j, 0.35)):
    T = elliptic_triple_from_tau_eta(tau, eta)
    out = []
    for frac in (0.15, 0.35, 0.55, 0.75):
        m = frac * tau.imag
        r = pairing_density(m, None, T) / g_closed(m, T)
        out.append(f"{r.real:+.6f}{r.imag:+.1e}j")
    print(f"tau={tau} eta={eta}: {out}")
    print(f"   abc = {[f'{v:.4f}' for v in T.abc]}")

print()
print("=== B: vol ascending, alternative slope conventions ===")
phi = PhiPoint((0.4, 0.8, 1.1))
T = elliptic_triple(phi)
Om = period_Omega(phi).Omega
k, l, mi, c_k, t_k = _jacobian_constants(phi)
print(f"k={k} l={l} m={mi} c_k={c_k:.6f} t_k={t_k:.6f}")
p = [None, *phi.phi]


def slope_general(Z, num_idx, den_idx, c, t):
    v = Z.normalized().array()
    return t * v[num_idx] ** 2 / (v[num_idx] ** 2 + c * v[den_idx] ** 2)


def dnum(fn, m, h=1e-6):
    return (fn(m + h) - fn(m - h)) / (2 * h)


# current: R = t_k Zm^2/(Zm^2 + c_k Zl^2), c_k = tan(pl)/tan(pk-pl)
# swap:    R = t_k Zl^2/(Zl^2 + c'  Zm^2), c'  = tan(pm)/tan(pk-pm)
# start:   R = t_1 Z0^2/(Z0^2 + a Z1^2), a = cot(p1-p2) cot(p1-p3)
c_swap = math.tan(p[mi]) / math.tan(p[k] - p[mi])
a_start = (math.cos(p[1] - p[2]) / math.sin(p[1] - p[2])) * (
    math.cos(p[1] - p[3]) / math.sin(p[1] - p[3]))
print(f"c_swap={c_swap:.6f} a_start={a_start:.6f}")

variants = {
    "current(m|l)": lambda m: slope_general(curve_point(T, m), mi, l, c_k, t_k),
    "swapped(l|m)": lambda m: slope_general(curve_point(T, m), l, mi, c_swap, t_k),
    "start(0|1)": lambda m: slope_general(curve_point(T, m), 0, 1, a_start,
                                          math.tan(p[1])),
}
for frac in (0.195, 0.402, 0.684):
    m = frac * T.M.tau.imag
    om = omega_density(m, phi, T)
    row = [f"omega={om.real:+.6f}"]
    for name, fn in variants.items():
        rhs = 6 * math.pi * Om * dnum(fn, m)
        row.append(f"{name}: ratio={(om / rhs).real:+.8f}")
    print("  " + "  ".join(row))

print()
print("=== C: rat1/rat2 on the real circle, both chambers ===")
for label, ph in (("asc", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc", PhiPoint((1.1, 0.8, 0.4)))):
    Tp = elliptic_triple(ph)
    p1, p2, p3 = ph.phi
    s1 = trig_invariants(ph).s[0]
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    a = (math.cos(p1 - p2) / math.sin(p1 - p2)) * (
        math.cos(p1 - p3) / math.sin(p1 - p3))
    c1 = math.tan(p2) * math.cos(p1 - p2) / math.sin(p1 - p2)
    print(f"{label}: s1={s1:.6f} b={b:.6f} a={a:.6f} c1={c1:.6f}")
    for frac in (0.23, 0.61):
        m = frac * Tp.M.tau.imag
        Z = curve_point(Tp, m)
        v = Z.normalized().array()
        Zn = ProjPoint(tuple(v), "Z")
        jZ = involution("I3", involution("I0", Zn))
        j2Z = involution("I2", involution("I0", Zn))
        lhs1 = b * quadratic_form_eval(q_pprime(ph), Zn, jZ) / \
            quadratic_form_eval(q_prime(ph), Zn, jZ)
        rhs1 = v[0] ** 2 / (v[0] ** 2 + a * v[1] ** 2) - 1 / s1
        lhs2 = b * quadratic_form_eval(q_p(ph), Zn, j2Z) / \
            quadratic_form_eval(q_x(ph), Zn, j2Z)
        rhs2 = v[3] ** 2 / (v[3] ** 2 + c1 * v[2] ** 2) - 1 / s1
        print(f"  m={m:.4f}:")
        print(f"    rat1 lhs={lhs1:+.8f} rhs={rhs1:+.8f} "
              f"diff={abs(lhs1 - rhs1):.2e}")
        print(f"    rat2 lhs={lhs2:+.8f} rhs={rhs2:+.8f} "
              f"diff={abs(lhs2 - rhs2):.2e}")
        # structure probes: ratio and difference of the two sides
        print(f"    rat1 lhs+1/s1={lhs1 + 1 / s1:+.8f} "
              f"Z0^2/(Z0^2+aZ1^2)={v[0] ** 2 / (v[0] ** 2 + a * v[1] ** 2):+.8f}")
        print(f"    rat2 lhs+1/s1={lhs2 + 1 / s1:+.8f} "
              f"Z3^2/(Z3^2+c1Z2^2)={v[3] ** 2 / (v[3] ** 2 + c1 * v[2] ** 2):+.8f}")
