"""Scratch driver for pairing.py: calibrate _PAIR_ORIENT and _VOL_SIGN,
then exercise every contract surface.  Delete before commit."""

import cmath
import math
import time

import numpy as np

from ncsphere.elliptic import (
    curve_point,
    elliptic_triple,
    elliptic_triple_from_tau_eta,
    omega_closed_form,
    period_Omega,
    psi,
)
from ncsphere.moduli import PhiPoint, trig_invariants
from ncsphere.pairing import (
    ChernCycle,
    chern_cycle,
    central_form_rank,
    curve_R,
    cycle_pairing,
    dR_dm,
    derivative_lemma_residual,
    ending1_residual,
    g_closed,
    generator_deltas,
    omega_density,
    pairing_density,
    pairing_report,
    ratio_identity_residual,
    ratio_sigma_invariance,
    sigma_fourth,
    transport_residual,
    vol_integral_residual,
    vol_residual,
)
from ncsphere.nctorus import eval_grid, make_generator
from ncsphere.theta import modular_param


def check(name, val, tol):
    ok = val < tol
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {val:.3e} (tol {tol:.0e})")
    return ok


t0 = time.time()

# --- calibration point ------------------------------------------------
T = elliptic_triple_from_tau_eta(1.2j, 0.3)
m0 = 0.5
t1 = time.time()
D0 = pairing_density(m0, None, T)
t2 = time.time()
g0 = g_closed(m0, T)
print(f"calibration (tau=1.2i, eta=0.3, m=0.5)  [D took {t2 - t1:.2f}s]")
print(f"  D = {D0}")
print(f"  g = {g0}")
print(f"  D/g = {D0 / g0}")

# --- ratio over m and over (tau, eta) pairs ---------------------------
for m in (0.2, 0.9):
    D = pairing_density(m, None, T)
    g = g_closed(m, T)
    print(f"  m={m}: D/g = {D / g}")

for tau, eta in ((1.0j, 0.22), (1.5j, 0.41)):
    Tp = elliptic_triple_from_tau_eta(tau, eta)
    worst = 0.0
    # 10 nodes: stays clear of m = Im(tau)/2 where g has its genuine zero
    for m in np.linspace(0.1, 0.9, 10) * tau.imag:
        r = pairing_density(float(m), None, Tp) / g_closed(float(m), Tp)
        worst = max(worst, abs(r - 1))
    print(f"  tau={tau}, eta={eta}: max |D/g - 1| = {worst:.3e}")

# --- oddness and the m->0 limit ---------------------------------------
Dneg = pairing_density(-m0, None, T)
check("D(-m) + D(m)", abs(Dneg + D0) / abs(D0), 1e-8)
Dtiny = pairing_density(1e-4, None, T)
print(f"  D(1e-4) = {abs(Dtiny):.3e}  (g(1e-4) = {abs(g_closed(1e-4, T)):.3e})")

# --- cyclicity of the trace cocycle on the cycle ----------------------
cyc = chern_cycle(None, "sigma", T)
S = [make_generator(mu, m0, T) for mu in range(4)]
deltas = generator_deltas(m0, T, S)
ctx = eval_grid(256, m0)
P0 = cycle_pairing(cyc, S, deltas, ctx)
rot = ChernCycle(tuple((c, (t[3], t[0], t[1], t[2])) for c, t in cyc.terms),
                 "sigma")
Prot = cycle_pairing(rot, S, deltas, ctx)
print(f"  pairing(cycle) = {P0}")
print(f"  pairing(rotated) = {Prot}  (expect -pairing)")
check("cyclicity |P_rot + P0|/|P0|", abs(Prot + P0) / abs(P0), 1e-9)

# --- s-variant bookkeeping at a phi point -----------------------------
phi = PhiPoint((0.4, 0.8, 1.1))
Tphi = elliptic_triple(phi)
m1 = 0.3 * Tphi.M.tau.imag
Sp = [make_generator(mu, m1, Tphi) for mu in range(4)]
dp = generator_deltas(m1, Tphi, Sp)
ctxp = eval_grid(256, m1)
Ps = cycle_pairing(chern_cycle(phi, "S"), Sp, dp, ctxp)
Psig = cycle_pairing(chern_cycle(phi, "sigma", Tphi), Sp, dp, ctxp)
check("s-variant = sigma-variant / lam",
      abs(Ps - Psig / Tphi.lam) / abs(Psig), 1e-9)
Dphi = pairing_density(m1, phi, Tphi)
gphi = g_closed(m1, Tphi)
print(f"  phi-point D/g = {Dphi / gphi}")

# --- ending1 and transport --------------------------------------------
rng = np.random.default_rng(7)
worst_e = worst_t = 0.0
for _ in range(20):
    p = PhiPoint(tuple(np.sort(rng.uniform(0.05, math.pi / 2 - 0.05, 3))))
    worst_e = max(worst_e, ending1_residual(p))
    worst_t = max(worst_t, transport_residual(p))
check("ending1 identity", worst_e, 1e-12)
check("transport x -> S", worst_t, 1e-10)

# --- omega: scaled vs direct ------------------------------------------
om_s = omega_density(m1, phi, Tphi, route="scaled")
om_d = omega_density(m1, phi, Tphi, route="direct")
print(f"  omega scaled = {om_s}")
print(f"  omega direct = {om_d}")
check("omega scaled vs direct", abs(om_s - om_d) / abs(om_s), 1e-7)
check("omega reality", abs(om_s.imag) / abs(om_s), 1e-9)

# --- dR three ways -----------------------------------------------------
for mm in (0.2 * Tphi.M.tau.imag, 0.6 * Tphi.M.tau.imag):
    d_sym = dR_dm(phi, mm, Tphi, "symbolic")
    d_pb = dR_dm(phi, mm, Tphi, "pullback")
    d_fd = dR_dm(phi, mm, Tphi, "fd")
    print(f"  m={mm:.4f}: dR sym={d_sym:.10g} pb={d_pb:.10g} fd={d_fd:.10g}")
    check("dR sym vs pullback", abs(d_sym - d_pb) / abs(d_sym), 1e-10)
    check("dR sym vs fd", abs(d_sym - d_fd) / abs(d_sym), 1e-6)

# --- vol identity, ascending chamber ----------------------------------
Om = period_Omega(phi)
print(f"  Omega = {Om.Omega}  (closed {omega_closed_form(Tphi, Om.k_index)})")
for frac in (0.18, 0.37, 0.63, 0.82):
    mm = frac * Tphi.M.tau.imag
    om = omega_density(mm, phi, Tphi)
    dr = dR_dm(phi, mm, Tphi, "symbolic")
    rhs = 6 * math.pi * Om.Omega * dr
    print(f"  m={mm:.4f}: omega={om:.8g}  6piOm dR={rhs:.8g}  "
          f"ratio={om / rhs}")

# --- vol identity, descending chamber ---------------------------------
phid = PhiPoint((1.1, 0.8, 0.4))
Td = elliptic_triple(phid)
Omd = period_Omega(phid)
print(f"  descending Omega = {Omd.Omega}")
worst = 0.0
for frac in (0.2, 0.4, 0.7):
    mm = frac * Td.M.tau.imag
    om = omega_density(mm, phid, Td)
    dr = dR_dm(phid, mm, Td, "symbolic")
    rhs = 6 * math.pi * Omd.Omega * dr
    print(f"  m={mm:.4f}: omega={om:.8g}  6piOm dR={rhs:.8g}  "
          f"ratio={om / rhs}")
    worst = max(worst, vol_residual(mm, phid, Td, Omega=Omd.Omega))
check("vol identity (descending)", worst, 1e-6)
check("vol integral (descending)", vol_integral_residual(phid, Td), 1e-6)

# --- derivative lemma --------------------------------------------------
M12 = modular_param(1.2j)
worst = 0.0
for b1, b2, u in ((0.7, 1.3, 0.31 + 0.12j), (2.0, -0.4, 0.52),
                  (1.1 + 0.2j, 0.9, 0.18 - 0.07j)):
    worst = max(worst, derivative_lemma_residual(M12, b1, b2, u))
check("derivative lemma", worst, 1e-10)

# --- ratio identities on the fiber curve ------------------------------
worst = 0.0
for _ in range(20):
    z = complex(rng.uniform(0, 1), rng.uniform(-0.2, 0.2))
    Z = psi(z, Tphi)
    worst = max(worst, ratio_identity_residual(Z, phi))
check("rational ratio identities (asc)", worst, 1e-10)

worst = 0.0
for _ in range(8):
    z = complex(rng.uniform(0, 1), rng.uniform(-0.2, 0.2))
    worst = max(worst, ratio_identity_residual(psi(z, Td), phid))
check("rational ratio identities (desc)", worst, 1e-10)

worst = 0.0
for _ in range(6):
    z = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
    zp = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
    worst = max(worst, ratio_sigma_invariance(phi, Tphi, z, zp))
check("ratio sigma-invariance", worst, 1e-9)
print(f"  central form rank = {central_form_rank(phi)} (expect 2)")

# --- report serialization ----------------------------------------------
rep = pairing_report(phi, Tphi, m_nodes=4)
print(f"  report residuals: {rep.residuals}")
rows = list(rep.csv_rows())
print(f"  csv header: {rows[0]}; first row: {rows[1]}")

print(f"total {time.time() - t0:.1f}s")
