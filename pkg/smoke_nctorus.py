"""Scratch checks for the torus-element module; not part of the package."""

import time

import numpy as np

from ncsphere.elliptic import (
    coupling_J, elliptic_triple, elliptic_triple_from_tau_eta, sklyanin_j,
)
from ncsphere.moduli import phi_point, trig_invariants
from ncsphere.nctorus import (
    casimir_residuals, casimir_values, central_quadratic_residuals, coeff_d,
    coeff_L, coeff_Lbar, conjugate_fn, derivation, element_V, element_Vstar,
    element_W, element_Wprime, element_dm, element_one, element_sup,
    equivalence_residual, eval_grid, generator_dm, make_generator,
    normalized_generators, nu_value, q_bilinear, random_element,
    relation_residuals, simplified_generator, sphere_residual, theta_fn,
    trace_chi,
)
from ncsphere.theta import modular_param, theta

rng = np.random.default_rng(7)
FAIL = []


def check(name, val, tol):
    ok = val < tol
    print(f"{'PASS' if ok else 'FAIL'}  {name}: {val:.3e} (tol {tol:.0e})")
    if not ok:
        FAIL.append(name)


T = elliptic_triple_from_tau_eta(1.2j, 0.3)
M = T.M
u = np.linspace(0.013, 0.987, 41)

# ---- d(u) identities
d_fn = coeff_d(M)
d_neg = coeff_d(M, -1)
du = d_fn(u)
dnu = d_neg(u)
check("d(u)d(-u) = theta4(2u)/ (c^2/c^2 scaling)",
      float(np.max(np.abs(du * dnu - theta(4, 2 * u, M)))), 1e-12)
check("conj d(u) = d(-u) on real u",
      float(np.max(np.abs(np.conj(du) - dnu))), 1e-12)
c2 = theta(3, 0.0, M) ** 2 * theta(4, 0.0, M)
lhs = c2 * theta(4, 2 * u, M)
rhs = (theta(3, u, M) ** 2 * theta(4, u, M) ** 2
       + theta(1, u, M) ** 2 * theta(2, u, M) ** 2)
check("c^2 theta4(2u) = t3^2 t4^2 + t1^2 t2^2",
      float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs))), 1e-13)

# ---- L(u) and the second denominator identity
L = coeff_L(T)
check("theta3(0) d(u) d(-u+eta) = L(u)",
      float(np.max(np.abs(
          theta(3, 0.0, M) * d_fn(u) * coeff_d(M, -1, T.eta)(u) - L(u)))),
      1e-12)
Lbar = coeff_Lbar(T)
check("Lbar = conj L on real u (real eta)",
      float(np.max(np.abs(Lbar(u) - np.conj(L(u))))), 1e-12)
LLbar = L(u) * Lbar(u)
expand = (theta(1, T.eta, M) ** 2 * theta(2, 2 * u - T.eta, M) ** 2
          + theta(3, T.eta, M) ** 2 * theta(4, 2 * u - T.eta, M) ** 2)
check("L Lbar = t1(eta)^2 t2(2u-eta)^2 + t3(eta)^2 t4(2u-eta)^2",
      float(np.max(np.abs(LLbar - expand)) / np.max(np.abs(LLbar))), 1e-13)

# ---- algebra sanity on random elements
m0 = 0.4
a = random_element(rng, T, (-2, 0, 1), m=m0)
b = random_element(rng, T, (-1, 2), m=m0)
c = random_element(rng, T, (0, 1), m=m0)
ctx = eval_grid(160, m0)

V = element_V(T.eta, m0)
Vs = element_Vstar(T.eta, m0)
check("V V* = 1", element_sup(V * Vs - 1.0, ctx), 1e-14)
check("V* V = 1", element_sup(Vs * V - 1.0, ctx), 1e-14)

check("adjoint involution", element_sup(a.adjoint().adjoint() - a, ctx), 1e-13)
check("adjoint anti-hom", element_sup((a * b).adjoint() - b.adjoint() * a.adjoint(), ctx), 1e-11)
check("associativity", element_sup((a * b) * c - a * (b * c), ctx), 1e-11)

tr_ab = trace_chi(a * b, ctx=ctx)
tr_ba = trace_chi(b * a, ctx=ctx)
check("traciality chi(ab) = chi(ba)", abs(tr_ab - tr_ba) / max(1.0, abs(tr_ab)), 1e-11)
check("chi(1) = 1", abs(trace_chi(element_one(T.eta, m0), ctx=ctx) - 1), 1e-15)
check("chi(f V^3) = 0", abs(trace_chi(random_element(rng, T, (3,), m=m0), ctx=ctx)), 1e-15)
pos = trace_chi(a.adjoint() * a, ctx=ctx)
check("positivity chi(a* a) >= 0", max(-pos.real, abs(pos.imag)), 1e-12)

for k in (2, 3):
    lhs_e = derivation(k, a * b)
    rhs_e = derivation(k, a) * b + a * derivation(k, b)
    check(f"Leibniz delta_{k}", element_sup(lhs_e - rhs_e, ctx), 1e-9)

# derivative channels vs finite differences
h = 1e-6
f = a.coeff(0)
fd = (f(u + h) - f(u - h)) / (2 * h)
check("d/du matches FD", float(np.max(np.abs(f.d_du()(u) - fd))), 1e-7)
g_at = theta_fn(2, M, au=2.0, am=1j, c0=0.1)
gm = (g_at(u, m0 + h) - g_at(u, m0 - h)) / (2 * h)
check("d/dm matches FD", float(np.max(np.abs(g_at.d_dm()(u, m0) - gm))), 1e-6)

# ---- generator images at the phi-free acceptance point
t0 = time.perf_counter()
S = [make_generator(mu, m0, T) for mu in range(4)]
J = coupling_J(T)
res = relation_residuals(S, J, ctx)
print(f"  six relations: {['%.2e' % r for r in res]}")
check("six relations max", max(res), 1e-10)

r1, r2 = casimir_residuals(m0, T)
check("casimir 1", r1, 1e-9)
check("casimir 2", r2, 1e-9)
c1v, c2v = casimir_values(m0, T)
print(f"  C1 = {c1v:.6f}, C2 = {c2v:.6f}, elapsed {time.perf_counter() - t0:.2f}s")

# c1 - lam*c2 closed form (lam = 1 for the theta-ratio triple, s1 = abc[0])
s1 = T.abc[0]
lam_l = theta(2, 0.0, M) ** 2 / (s1 * theta(2, T.eta, M) ** 2)
b1 = 4 * theta(1, T.eta, M) ** 2 / (s1 * theta(2, T.eta, M) ** 2)
b2 = 4 * (s1 - 1) / s1
pred = (b1 * theta(1, 1j * m0, M) ** 2 + b2 * theta(2, 1j * m0, M) ** 2)
check("C1 - lam C2 closed form",
      abs(c1v - lam_l * c2v - pred) / abs(pred), 1e-12)
c1z, c2z = casimir_values(0.0, T)
check("m -> 0: C2 -> 4 theta2(eta)^2",
      abs(c2z - 4 * theta(2, T.eta, M) ** 2) / abs(c2z), 1e-14)
check("m -> 0: C1 -> 4 theta2(0)^2",
      abs(c1z - 4 * theta(2, 0.0, M) ** 2) / abs(c1z), 1e-14)

# generator m-derivative vs finite differences
Sm = generator_dm(0, m0, T)
Sp = make_generator(0, m0 + h, T)
Sn = make_generator(0, m0 - h, T)
fd_vals = (Sp.coeff(1)(u, m0 + h) - Sn.coeff(1)(u, m0 - h)) / (2 * h)
check("generator_dm vs FD", float(np.max(np.abs(Sm.coeff(1)(u, m0) - fd_vals))), 1e-6)

# ---- self-adjointness and relations at a phi point (ascending chamber)
phi = phi_point(0.4, 0.8, 1.1)
Tphi = elliptic_triple(phi)
print(f"  phi triple: tau = {Tphi.M.tau:.6f}, eta = {Tphi.eta:.6f}, lam = {Tphi.lam:.6f}")
mphi = 0.3 * Tphi.M.tau.imag
Sphi = [make_generator(mu, mphi, Tphi) for mu in range(4)]
ctxp = eval_grid(160, mphi)
sa = max(element_sup(s - s.adjoint(), ctxp) for s in Sphi)
check("self-adjointness (ascending phi)", sa, 1e-11)

Jphi = coupling_J(Tphi)
Jtrig = trig_invariants(phi).J
print(f"  theta J = {[f'{x:.6f}' for x in Jphi]}")
print(f"  trig  J = {[f'{x:.6f}' for x in Jtrig]}")
check("theta J vs trig J",
      max(abs(a_ - b_) for a_, b_ in zip(Jphi, Jtrig)), 1e-10)
resp = relation_residuals(Sphi, Jphi, ctxp)
check("six relations (phi point)", max(resp), 1e-10)

# ---- normalization, sphere, central forms
t0 = time.perf_counter()
gens = normalized_generators(mphi, phi, Tphi)
check("sphere residual", sphere_residual(gens), 1e-9)
q1r, q2r = central_quadratic_residuals(gens)
check("central form 1 (sphere -> scalar)", q1r, 1e-9)
check("central form 2 (companion -> lam C2)", q2r, 1e-9)
print(f"  sigma(m) = {gens.sigma_m:.6f}, elapsed {time.perf_counter() - t0:.2f}s")

# ---- simplified generators and equivalence
t0 = time.perf_counter()
eq = equivalence_residual(mphi, Tphi)
check("equivalence S vs Y route", eq, 1e-9)
eq2 = equivalence_residual(0.4, T)
check("equivalence (theta-ratio triple)", eq2, 1e-9)
print(f"  elapsed {time.perf_counter() - t0:.2f}s")

# W, W', and the bilinear identity nu(m) L Lbar = Q(Z, Z')
W = element_W(m0, T)
Wp = element_Wprime(m0, T)
check("W' = W*", element_sup(Wp - W.adjoint(), ctx), 1e-12)
WWp = W * Wp
inv_LL = 1.0 / (L(u) * Lbar(u))
check("W W' = 1/(L Lbar)", float(np.max(np.abs(WWp.coeff(0)(u) - inv_LL))), 1e-12)

eps_vec = (1, 1, 1, -1)
uu = 0.2371
zmin = [theta(j + 1, 2 * uu - 1j * m0 - T.eta, M) / theta(j + 1, T.eta, M)
        for j in range(4)]
zplus = [eps_vec[j] * theta(j + 1, 2 * uu + 1j * m0 - T.eta, M)
         / theta(j + 1, T.eta, M) for j in range(4)]
qb = q_bilinear(T, zmin, zplus)
lhs_q = nu_value(m0, T) * complex(L(np.array([uu]))[0] * Lbar(np.array([uu]))[0])
check("nu(m) L Lbar = Q(Z, Z')", abs(lhs_q - qb) / abs(qb), 1e-11)
check("Z' = eps conj(Z) (real u)",
      max(abs(zplus[j] - eps_vec[j] ** 2 * np.conj(zmin[j]) * eps_vec[j])
          for j in range(4)), 1e-12)

# Y support and adjoint structure: Y_mu* = eps_mu Y_mu
Y = [simplified_generator(mu, m0, T) for mu in range(4)]
saY = max(element_sup(Y[mu] - eps_vec[mu] * Y[mu].adjoint(), ctx)
          for mu in range(4))
check("Y adjoint symmetry Y* = eps Y", saY, 1e-11)

print()
print("ALL PASS" if not FAIL else f"FAILURES: {FAIL}")
