"""Elliptic layer: the fiber parametrization, special points, coupling
constants, periods, and the duality action on the modulus and step."""

import math

import numpy as np
import pytest

from ncsphere.errors import ClassificationError, DegenerateError
from ncsphere.moduli import (
    ResolventTriple,
    duality,
    phi_point,
    s_tilde,
    trig_invariants,
)
from ncsphere.elliptic import (
    coupling_J,
    curve_point,
    elliptic_triple,
    elliptic_triple_from_tau_eta,
    fiber_residual,
    omega_closed_form,
    period_Omega,
    psi,
    sklyanin_j,
    special_point,
)
from ncsphere.theta import lambda_of_tau, theta
from ncsphere.variety import is_on_variety, projective_equal


def test_fiber_residuals(desc_phi, desc_triple, rng):
    T = desc_triple
    s = trig_invariants(desc_phi).s
    for _ in range(10):
        z = complex(rng.uniform(0.05, 0.45),
                    rng.uniform(0.02, 0.4) * T.M.tau.imag)
        P = psi(z, T)
        assert fiber_residual(T.abc, P) < 1e-11
        assert is_on_variety(s, P)


def test_scale_identity(desc_phi, desc_triple):
    # lam s_k equals the squared theta-constant ratio at the step
    T = desc_triple
    s = trig_invariants(desc_phi).s
    for k in (1, 2, 3):
        rhs = theta(k + 1, 0.0, T.M) ** 2 / theta(k + 1, T.eta, T.M) ** 2
        assert abs(T.lam * s[k - 1] - rhs) < 1e-10


def test_coupling_pairing_identity(desc_phi, desc_triple):
    # j_k jt_l + jt_k j_l = 2 for k != l, with jt_k = lam s_k
    T = desc_triple
    s = trig_invariants(desc_phi).s
    for k in (1, 2, 3):
        for l in (1, 2, 3):
            if k == l:
                continue
            val = (sklyanin_j(T, k) * T.lam * s[l - 1]
                   + T.lam * s[k - 1] * sklyanin_j(T, l))
            assert abs(val - 2) < 1e-10


def test_lam_j_is_dual_scale(desc_phi, desc_triple):
    T = desc_triple
    st = s_tilde(trig_invariants(desc_phi).s)
    for k in (1, 2, 3):
        assert abs(T.lam * sklyanin_j(T, k) - st[k - 1]) < 1e-10


def test_special_points(desc_triple):
    T = desc_triple
    tau = T.M.tau
    table = {
        "p0": T.eta, "p1": T.eta + 0.5, "p2": T.eta + 0.5 + tau / 2,
        "p3": T.eta + tau / 2, "q0": 0.0, "q1": 0.5,
        "q2": 0.5 + tau / 2, "q3": tau / 2,
    }
    for name, z in table.items():
        assert projective_equal(psi(z, T), special_point(name, T), 1e-9)


def test_curve_point_on_fiber(desc_triple):
    T = desc_triple
    for frac in (0.2, 0.65):
        P = curve_point(T, frac * T.M.tau.imag)
        assert fiber_residual(T.abc, P) < 1e-10


def test_period_matches_closed_form(desc_phi, asc_phi):
    for ph in (desc_phi, asc_phi):
        jd = period_Omega(ph)
        closed = omega_closed_form(elliptic_triple(ph), jd.k_index)
        assert abs(jd.Omega - closed) / abs(closed) < 1e-10


def test_period_node_convergence(desc_phi):
    a = period_Omega(desc_phi, nodes=512).Omega
    b = period_Omega(desc_phi, nodes=1024).Omega
    assert abs(a - b) < 1e-12 * abs(a)


def test_period_k_consistency(desc_phi, desc_triple):
    # all three theta closed forms give the same period after the s_k scale
    inv = trig_invariants(desc_phi)
    vals = [omega_closed_form(desc_triple, k) / inv.s[k - 1]
            for k in (1, 2, 3)]
    spread = max(abs(v - vals[0]) for v in vals)
    assert spread < 1e-10 * abs(vals[0])


def test_coincident_resolvent_rejected():
    with pytest.raises(DegenerateError):
        elliptic_triple(ResolventTriple(2.0, 2.0, 3.0))


def test_non_generic_rejected():
    with pytest.raises(ClassificationError):
        period_Omega(phi_point(0.7, 0.7, 0.3))
    with pytest.raises(ClassificationError):
        elliptic_triple(phi_point(0.5, 0.5, 0.0))


def test_triple_from_tau_eta_roundtrip(desc_triple):
    T = desc_triple
    T2 = elliptic_triple_from_tau_eta(T.M.tau, T.eta)
    assert abs(T2.M.tau - T.M.tau) < 1e-14
    assert abs(T2.eta - T.eta) < 1e-14
    J1, J2 = coupling_J(T), coupling_J(T2)
    assert max(abs(a - b) for a, b in zip(J1, J2)) < 1e-12


def test_duality_half_period_shift(asc_phi, asc_triple):
    # the lattice survives each duality; the modulus returns equal or
    # unit-translated (a branch relabel sending lam to lam/(lam-1)) and
    # the step moves by a half period
    T = asc_triple
    lam0 = lambda_of_tau(T.M)
    for j in (1, 2, 3):
        T2 = elliptic_triple(duality(j, asc_phi))
        dtau = T2.M.tau - T.M.tau
        n = round(dtau.real)
        assert abs(dtau - n) < 1e-10
        target = lam0 if n == 0 else lam0 / (lam0 - 1)
        assert abs(lambda_of_tau(T2.M) - target) < 1e-10
        best = math.inf
        for sgn in (1, -1):
            d = T2.eta - sgn * T.eta
            y = d.imag / T.M.tau.imag
            x = d.real - y * T.M.tau.real
            best = min(best, math.hypot(x - round(2 * x) / 2,
                                        y - round(2 * y) / 2))
        assert best < 1e-10
