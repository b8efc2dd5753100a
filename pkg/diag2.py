"""Second diagnostics round: map the vol slope convention across chambers;
solve for rat2's correct Moebius constant."""

import math
from itertools import permutations

import numpy as np

from ncsphere.elliptic import (
    curve_point,
    elliptic_triple,
    omega_closed_form,
    period_Omega,
    psi,
    _jacobian_constants,
)
from ncsphere.moduli import PhiPoint, trig_invariants
from ncsphere.pairing import omega_density
from ncsphere.variety import (
    ProjPoint,
    involution,
    q_p,
    q_pprime,
    q_prime,
    q_x,
    quadratic_form_eval,
)


def dnum(fn, m, h=1e-6):
    return (fn(m + h) - fn(m - h)) / (2 * h)


print("=== B2: slope-variant scan across chambers ===")
for label, ph in (("asc(0.4,0.8,1.1)", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc(1.1,0.8,0.4)", PhiPoint((1.1, 0.8, 0.4))),
                  ("mid(0.8,0.4,1.1)", PhiPoint((0.8, 0.4, 1.1))),
                  ("mid2(0.4,1.1,0.8)", PhiPoint((0.4, 1.1, 0.8)))):
    T = elliptic_triple(ph)
    Om = period_Omega(ph).Omega
    p = [None, *ph.phi]
    fracs = (0.23, 0.47, 0.71)
    oms = [omega_density(f * T.M.tau.imag, ph, T) for f in fracs]

    def ratio_const(fn):
        """Return (is_const, value) of omega/(6 pi Om dR) over the fracs."""
        rs = []
        for f, om in zip(fracs, oms):
            m = f * T.M.tau.imag
            d = dnum(fn, m)
            if abs(d) < 1e-9:
                return (False, None)
            rs.append(om / (6 * math.pi * Om * d))
        spread = max(abs(r - rs[0]) for r in rs)
        return (spread < 1e-6 * max(1.0, abs(rs[0])), rs[0])

    hits = []
    # pair family: R = tan(p_k) Z_a^2/(Z_a^2 + c Z_b^2), c = tan(p_b') cot(p_k - p_b')
    # with all assignments of (k, a, b) and the constant from the b-side angle
    for k in (1, 2, 3):
        others = [j for j in (1, 2, 3) if j != k]
        for a, b in permutations(others):
            c = math.tan(p[b]) / math.tan(p[k] - p[b])

            def fn(m, a=a, b=b, c=c, k=k):
                v = curve_point(T, m).normalized().array()
                return (math.tan(p[k]) * v[a] ** 2
                        / (v[a] ** 2 + c * v[b] ** 2)).real

            ok, val = ratio_const(fn)
            if ok:
                hits.append(f"pair k={k} (Z{a},Z{b}) c=tan(p{b})cot(p{k}-p{b})"
                            f" -> ratio {val.real:+.9f}")
    # zero family: R = tan(p_k) Z0^2/(Z0^2 + a Z_k^2), a = cot(p_k-p_l) cot(p_k-p_m)
    for k in (1, 2, 3):
        lo, mo = [j for j in (1, 2, 3) if j != k]
        an = (math.cos(p[k] - p[lo]) / math.sin(p[k] - p[lo])) * (
            math.cos(p[k] - p[mo]) / math.sin(p[k] - p[mo]))

        def fn(m, k=k, an=an):
            v = curve_point(T, m).normalized().array()
            return (math.tan(p[k]) * v[0] ** 2
                    / (v[0] ** 2 + an * v[k] ** 2)).real

        ok, val = ratio_const(fn)
        if ok:
            hits.append(f"zero k={k} (Z0,Z{k}) a=cot-prod -> ratio {val.real:+.9f}")
    kk = _jacobian_constants(ph)[0]
    print(f"{label}: argmin k={kk}")
    for h in hits:
        print("   " + h)
    print(f"   Omega={Om:.8g} closed(k)={omega_closed_form(T, kk):.8g}")

print()
print("=== C2: solve rat2 constant on the real circle ===")
for label, ph in (("asc", PhiPoint((0.4, 0.8, 1.1))),
                  ("desc", PhiPoint((1.1, 0.8, 0.4)))):
    T = elliptic_triple(ph)
    p1, p2, p3 = ph.phi
    s1 = trig_invariants(ph).s[0]
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    cs = []
    for frac in (0.23, 0.47, 0.61):
        m = frac * T.M.tau.imag
        Z = curve_point(T, m)
        v = Z.normalized().array()
        Zn = ProjPoint(tuple(v), "Z")
        j2Z = involution("I2", involution("I0", Zn))
        lhs2 = b * quadratic_form_eval(q_p(ph), Zn, j2Z) / \
            quadratic_form_eval(q_x(ph), Zn, j2Z)
        t = lhs2 + 1 / s1
        # solve Z3^2/(Z3^2 + c Z2^2) = t  for c
        c_solved = (v[3] ** 2 * (1 - t) / t / v[2] ** 2).real
        cs.append(c_solved)
    print(f"{label}: solved c = {cs}")
    print(f"   candidates: tan(p2)cot(p1-p2)={math.tan(p2) / math.tan(p1 - p2):+.6f}"
          f"  tan(p3)cot(p1-p3)={math.tan(p3) / math.tan(p1 - p3):+.6f}"
          f"  tan(p2)cot(p3-p2)={math.tan(p2) / math.tan(p3 - p2):+.6f}"
          f"  cot(p1-p2)cot(p1-p3)={(1 / math.tan(p1 - p2)) * (1 / math.tan(p1 - p3)):+.6f}")
    # also try solving with the (Z2, Z3) pair swapped
    cs_sw = []
    for frac in (0.23, 0.47, 0.61):
        m = frac * T.M.tau.imag
        Z = curve_point(T, m)
        v = Z.normalized().array()
        Zn = ProjPoint(tuple(v), "Z")
        j2Z = involution("I2", involution("I0", Zn))
        lhs2 = b * quadratic_form_eval(q_p(ph), Zn, j2Z) / \
            quadratic_form_eval(q_x(ph), Zn, j2Z)
        t = lhs2 + 1 / s1
        cs_sw.append((v[2] ** 2 * (1 - t) / t / v[3] ** 2).real)
    print(f"   swapped-pair solved c = {cs_sw}")

print()
print("=== C3: rat1 at complex z (off the real circle) ===")
ph = PhiPoint((0.4, 0.8, 1.1))
T = elliptic_triple(ph)
p1, p2, p3 = ph.phi
s1 = trig_invariants(ph).s[0]
b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
a = (math.cos(p1 - p2) / math.sin(p1 - p2)) * (
    math.cos(p1 - p3) / math.sin(p1 - p3))
rng = np.random.default_rng(3)
worst = 0.0
for _ in range(8):
    z = complex(rng.uniform(0, 1), rng.uniform(-0.2, 0.2))
    Z = psi(z, T)
    v = Z.normalized().array()
    Zn = ProjPoint(tuple(v), "Z")
    jZ = involution("I3", involution("I0", Zn))
    lhs1 = b * quadratic_form_eval(q_pprime(ph), Zn, jZ) / \
        quadratic_form_eval(q_prime(ph), Zn, jZ)
    rhs1 = v[0] ** 2 / (v[0] ** 2 + a * v[1] ** 2) - 1 / s1
    worst = max(worst, abs(lhs1 - rhs1))
print(f"rat1 worst at complex z: {worst:.3e}")
