import cmath
import math

import numpy as np

from ncsphere.errors import ClassificationError, DegenerateError
from ncsphere.moduli import ResolventTriple, duality, phi_point, s_tilde, trig_invariants
from ncsphere.theta import theta
from ncsphere.variety import (
    involution,
    is_on_variety,
    projective_equal,
    sigma_cubic,
)
from ncsphere.elliptic import (
    EllipticTriple,
    curve_point,
    elliptic_triple,
    fiber_residual,
    jacobian_J,
    jacobian_R,
    omega_closed_form,
    period_Omega,
    psi,
    sklyanin_j,
    special_point,
)

phi = phi_point(1.1, 0.8, 0.4)
inv = trig_invariants(phi)
print("s:", inv.s)
T = elliptic_triple(phi)
print("tau:", T.M.tau, " eta:", T.eta, " lam:", T.lam)

# ellparam residuals: lam * s_k = theta_{k+1}(0)^2/theta_{k+1}(eta)^2
worst = 0.0
for k in (1, 2, 3):
    lhs = T.lam * inv.s[k - 1]
    rhs = theta(k + 1, 0.0, T.M) ** 2 / theta(k + 1, T.eta, T.M) ** 2
    worst = max(worst, abs(lhs - rhs))
print("ellparam2 residual:", worst)
assert worst < 1e-10

# j_k jt_l + jt_k j_l = 2 with jt_k = lam * s_k
worst = 0.0
for k in (1, 2, 3):
    for l in (1, 2, 3):
        if k == l:
            continue
        jk, jl = sklyanin_j(T, k), sklyanin_j(T, l)
        jtk, jtl = T.lam * inv.s[k - 1], T.lam * inv.s[l - 1]
        worst = max(worst, abs(jk * jtl + jtk * jl - 2))
print("j pairing identity worst:", worst)
assert worst < 1e-10

# lam * j_k = s-tilde_k
st = s_tilde(inv.s)
worst = max(abs(T.lam * sklyanin_j(T, k) - st[k - 1]) for k in (1, 2, 3))
print("lam j = s-tilde worst:", worst)
assert worst < 1e-10

# coupling ratios in theta form
e = T.eta
t1, t2, t3, t4 = (theta(j, e, T.M) for j in (1, 2, 3, 4))
J23 = t1**2 * t2**2 / (t3**2 * t4**2)
J31 = -(t1**2) * t3**2 / (t2**2 * t4**2)
J12 = t1**2 * t4**2 / (t2**2 * t3**2)
print("J theta vs trig:", abs(J23 - inv.J[0]), abs(J31 - inv.J[1]), abs(J12 - inv.J[2]))
assert max(abs(J23 - inv.J[0]), abs(J31 - inv.J[1]), abs(J12 - inv.J[2])) < 1e-10

# psi lies on the fiber; sigma translates by -eta; I inverts z
rng = np.random.default_rng(11)
worst_fib = worst_sig = worst_inv = 0.0
for _ in range(20):
    z = complex(rng.uniform(0.05, 0.45), rng.uniform(0.02, 0.4) * T.M.tau.imag)
    P = psi(z, T)
    worst_fib = max(worst_fib, fiber_residual(T.abc, P))
    assert is_on_variety(inv.s, P)
    img = sigma_cubic(P)
    tgt = psi(z - T.eta, T)
    a, b = img.normalized().array(), tgt.normalized().array()
    idx = int(np.argmax(np.abs(a)))
    worst_sig = max(worst_sig, float(np.max(np.abs(a / a[idx] - b / b[idx]))))
    u_pt = involution("Mhalf", P)
    back = involution("Mhalf", involution("I", u_pt))
    tgt2 = psi(-z, T)
    a, b = back.normalized().array(), tgt2.normalized().array()
    idx = int(np.argmax(np.abs(a)))
    worst_inv = max(worst_inv, float(np.max(np.abs(a / a[idx] - b / b[idx]))))
print("fiber residual worst:", worst_fib)
print("sigma translation worst:", worst_sig)
print("I inversion worst:", worst_inv)
assert worst_fib < 1e-11 and worst_sig < 1e-9 and worst_inv < 1e-9

# special points: psi at eta and its two-torsion translates
tau = T.M.tau
pairs = {
    "p0": T.eta,
    "p1": T.eta + 0.5,
    "p2": T.eta + 0.5 + tau / 2,
    "p3": T.eta + tau / 2,
    "q0": 0.0,
    "q1": 0.5,
    "q2": 0.5 + tau / 2,
    "q3": tau / 2,
}
for name, z in pairs.items():
    got = psi(z, T)
    want = special_point(name, T)
    assert projective_equal(got, want, 1e-9), (name, got.coords, want.coords)
print("special points ok")

# resolvent cubic identification: solve (X, Y) from two rows, check the rest
worst_lin = worst_cur = 0.0
for _ in range(20):
    z = complex(rng.uniform(0.05, 0.45), rng.uniform(0.02, 0.4) * T.M.tau.imag)
    u_pt = involution("Mhalf", psi(z, T)).normalized().array()
    u0 = u_pt[0]
    A = np.zeros((3, 2), dtype=complex)
    rhs = np.zeros(3, dtype=complex)
    for k in (1, 2, 3):
        A[k - 1, 0] = (u_pt[k] - u0) * inv.s[k - 1]
        A[k - 1, 1] = -1j * (u0 + u_pt[k])
        rhs[k - 1] = u_pt[k] - u0
    XY, *_rest = np.linalg.lstsq(A, rhs, rcond=None)
    X, Y = XY
    worst_lin = max(worst_lin, float(np.max(np.abs(A @ XY - rhs))))
    cur = Y**2 - math.prod((X * inv.s[j] - 1) for j in range(3))
    worst_cur = max(worst_cur, abs(cur))
print("resolvent cubic linear worst:", worst_lin)
print("resolvent cubic curve worst:", worst_cur)
assert worst_lin < 1e-9 and worst_cur < 1e-9

# dualities: same modular parameter, step shifted by a half period
for j in (1, 2, 3):
    ph2 = duality(j, phi)
    T2 = elliptic_triple(ph2)
    dtau = abs(T2.M.tau - T.M.tau)
    for sgn in (1, -1):
        d = T2.eta - sgn * T.eta
        yy = d.imag / tau.imag
        xx = d.real - yy * tau.real
        fx, fy = xx - round(xx * 2) / 2, yy - round(yy * 2) / 2
        if abs(fx) < 1e-9 and abs(fy) < 1e-9:
            print(f"duality {j}: dtau={dtau:.2e}, eta shift "
                  f"({round(xx * 2) / 2},{round(yy * 2) / 2}) sign {sgn}")
            break
    else:
        print(f"duality {j}: dtau={dtau:.2e}, eta {T2.eta} vs {T.eta} NO half shift")

# degenerate and classification errors
try:
    elliptic_triple(ResolventTriple(2.0, 2.0, 3.0))
    raise SystemExit("coincident triple accepted")
except DegenerateError:
    pass
try:
    period_Omega(phi_point(0.7, 0.7, 0.3))
    raise SystemExit("non-generic accepted")
except ClassificationError:
    pass
print("error paths ok")

# period: numeric vs closed form, k-independence, node doubling
for ph_test in (phi, phi_point(0.4, 0.8, 1.1)):
    Tt = elliptic_triple(ph_test)
    invt = trig_invariants(ph_test)
    jd = period_Omega(ph_test)
    closed = omega_closed_form(Tt, jd.k_index)
    print(f"phi={ph_test.phi}: k={jd.k_index} eta={Tt.eta}")
    print("  ratio numeric/closed:", jd.Omega / closed)
    jd2 = period_Omega(ph_test, nodes=1024)
    print("  node doubling delta:", abs(jd.Omega - jd2.Omega))
    vals = [omega_closed_form(Tt, k) / invt.s[k - 1] for k in (1, 2, 3)]
    print("  Omega_k/s_k spread:",
          max(abs(vals[0] - vals[1]), abs(vals[1] - vals[2])))

# jacobian slope in the canonical chamber (ascending angles, real eta)
phc = phi_point(0.4, 0.8, 1.1)
Tc = elliptic_triple(phc)
invc = trig_invariants(phc)
jdc = period_Omega(phc)
kk = jdc.k_index
ll, mm_ = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[kk]
hstep = 1e-5
worst_fd = 0.0
for mval in (0.21, 0.38, 0.57):
    mval = mval * Tc.M.tau.imag
    Zp = curve_point(Tc, mval + hstep)
    Zm = curve_point(Tc, mval - hstep)
    dR = (jacobian_R(phc, Zp) - jacobian_R(phc, Zm)) / (2 * hstep)
    Z0 = curve_point(Tc, mval)
    v = np.array([theta(j, 1j * mval, Tc.M) for j in (1, 2, 3, 4)])
    dv = 1j * np.array([theta(j, 1j * mval, Tc.M, order=1) for j in (1, 2, 3, 4)])
    den_eta = np.array([theta(j, Tc.eta, Tc.M) for j in (1, 2, 3, 4)])
    v, dv = v / den_eta, dv / den_eta
    chi = (v[kk] * dv[0] - v[0] * dv[kk]) / (invc.s[kk - 1] * v[ll] * v[mm_])
    JZ = jacobian_J(phc, Z0)
    worst_fd = max(worst_fd, abs(dR - JZ * chi) / max(1.0, abs(dR)))
print("dR = J chi FD worst (canonical):", worst_fd)

# J odd under conjugation on the real cycle (canonical chamber)
Z0 = curve_point(Tc, 0.3 * Tc.M.tau.imag)
print("Z0 coords:", np.round(Z0.coords, 4))
Zc = type(Z0)(tuple(np.conj(Z0.array())), Z0.role)
print("J(conj) + J:", abs(jacobian_J(phc, Zc) + jacobian_J(phc, Z0)))

# J vanishes at a ramification point (a coordinate zero)
from ncsphere.variety import proj_point as _pp
Zr = _pp([0, *curve_point(Tc, 0.0).coords[1:]], "Z")
print("J at ramification:", abs(jacobian_J(phc, Zr)))
print("SMOKE ELLIPTIC DONE")
