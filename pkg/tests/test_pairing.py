"""Pairing layer: the density closed form, cocycle cyclicity, the volume
identity in pointwise and integral form, and the bilinear ratio
identities with their central forms."""

import math

import numpy as np
import pytest

from ncsphere.elliptic import (
    elliptic_triple,
    elliptic_triple_from_tau_eta,
    period_Omega,
    psi,
)
from ncsphere.errors import PreconditionError
from ncsphere.moduli import phi_point, trig_invariants
from ncsphere.nctorus import eval_grid, make_generator
from ncsphere.pairing import (
    ChernCycle,
    central_form_rank,
    chern_cycle,
    curve_R,
    cycle_pairing,
    dR_dm,
    derivative_lemma_residual,
    g_closed,
    generator_deltas,
    pairing_density,
    pairing_report,
    ratio_identity_residual,
    ratio_sigma_invariance,
    vol_integral_residual,
    vol_residual,
)
from ncsphere.theta import modular_param
from ncsphere.variety import proj_point


@pytest.fixture(scope="module")
def T():
    return elliptic_triple_from_tau_eta(1.2j, 0.3)


def test_density_equals_closed_form(T):
    for frac in np.linspace(0.1, 0.9, 10):
        m = float(frac * 1.2)
        assert abs(pairing_density(m, None, T) / g_closed(m, T) - 1) < 1e-7


def test_density_odd(T):
    for m in (0.25, 0.8):
        D = pairing_density(m, None, T)
        assert abs(pairing_density(-m, None, T) + D) / abs(D) < 1e-8


def test_cocycle_cyclicity(T):
    m = 0.5
    cyc = chern_cycle(None, "sigma", T)
    S = [make_generator(mu, m, T) for mu in range(4)]
    deltas = generator_deltas(m, T, S)
    ctx = eval_grid(256, m)
    base = cycle_pairing(cyc, S, deltas, ctx)
    rot = ChernCycle(tuple((c, (t[3], t[0], t[1], t[2]))
                           for c, t in cyc.terms), cyc.tag)
    # a one-step rotation of the four tensor legs flips the sign
    assert abs(cycle_pairing(rot, S, deltas, ctx) + base) / abs(base) < 1e-9


def test_s_variant_scales_by_lambda(asc_phi, asc_triple):
    m = 0.3 * asc_triple.M.tau.imag
    S = [make_generator(mu, m, asc_triple) for mu in range(4)]
    deltas = generator_deltas(m, asc_triple, S)
    ctx = eval_grid(256, m)
    Ps = cycle_pairing(chern_cycle(asc_phi, "S"), S, deltas, ctx)
    Psig = cycle_pairing(chern_cycle(asc_phi, "sigma", asc_triple), S,
                         deltas, ctx)
    assert abs(Ps - Psig / asc_triple.lam) / abs(Psig) < 1e-9


def test_volume_identity_pointwise(desc_phi, desc_triple):
    Om = period_Omega(desc_phi).Omega
    for frac in (0.15, 0.4, 0.75):
        m = float(frac * desc_triple.M.tau.imag)
        assert vol_residual(m, desc_phi, desc_triple, Omega=Om) < 1e-6


def test_volume_identity_integral(desc_phi, desc_triple):
    assert vol_integral_residual(desc_phi, desc_triple) < 1e-6


def test_slope_routes_agree(desc_phi, desc_triple):
    for frac in (0.22, 0.61):
        m = float(frac * desc_triple.M.tau.imag)
        sym = dR_dm(desc_phi, m, desc_triple, "symbolic")
        pb = dR_dm(desc_phi, m, desc_triple, "pullback")
        fd = dR_dm(desc_phi, m, desc_triple, "fd")
        scale = max(abs(sym), 1e-12)
        assert abs(sym - pb) / scale < 1e-8
        assert abs(sym - fd) / scale < 1e-8


def test_derivative_lemma(rng):
    M = modular_param(1.2j)
    for _ in range(5):
        b1 = complex(rng.uniform(0.3, 2.0), rng.uniform(-0.5, 0.5))
        b2 = complex(rng.uniform(0.3, 2.0), rng.uniform(-0.5, 0.5))
        u = complex(rng.uniform(0.05, 0.4), rng.uniform(-0.2, 0.2))
        assert derivative_lemma_residual(M, b1, b2, u) < 1e-10


def test_ratio_identities_on_fiber(rng):
    for raw in ((0.4, 0.8, 1.1), (1.1, 0.8, 0.4)):
        ph = phi_point(*raw)
        T = elliptic_triple(ph)
        for _ in range(8):
            z = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.2, 0.2))
            assert ratio_identity_residual(psi(z, T), ph) < 1e-10


def test_ratio_identity_requires_curve(asc_phi, rng):
    off = proj_point(rng.standard_normal(4) + 1j * rng.standard_normal(4),
                     "Z")
    with pytest.raises(PreconditionError):
        ratio_identity_residual(off, asc_phi)


def test_ratio_sigma_invariance(asc_phi, asc_triple, rng):
    for _ in range(4):
        z = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
        zp = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
        assert ratio_sigma_invariance(asc_phi, asc_triple, z, zp) < 1e-9


def test_central_form_rank(asc_phi):
    assert central_form_rank(asc_phi) == 2


def test_curve_R_step_relation(desc_phi, desc_triple):
    # R is built from the curve parametrization, so moving m by Im(eta)
    # steps the argument; just pin continuity and finiteness on the window
    vals = [curve_R(desc_phi, f * desc_triple.M.tau.imag, desc_triple)
            for f in np.linspace(0.1, 0.9, 9)]
    assert all(np.isfinite([v.real, v.imag]).all() for v in vals)


def test_pairing_report_shape(desc_phi):
    rep = pairing_report(desc_phi, m_nodes=4)
    rows = list(rep.csv_rows())
    assert rows[0] == ("m", "D", "g", "ratio", "R", "dR")
    assert len(rows) == 5
    import json
    payload = json.loads(rep.to_json())
    assert len(payload["m_grid"]) == 4
    assert {"D", "g", "ratio", "R", "dR", "Omega"} <= set(payload)
