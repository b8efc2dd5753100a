"""Torus-side representation: element algebra, trace, derivations,
generator relations, Casimirs, and the sphere normalization."""

import numpy as np
import pytest

from ncsphere.elliptic import coupling_J, elliptic_triple, elliptic_triple_from_tau_eta
from ncsphere.moduli import phi_point, trig_invariants
from ncsphere.nctorus import (
    casimir_residuals,
    central_quadratic_residuals,
    derivation,
    element_V,
    element_Vstar,
    element_one,
    element_sup,
    equivalence_residual,
    eval_grid,
    make_generator,
    normalized_generators,
    random_element,
    relation_residuals,
    sphere_residual,
    trace_chi,
)

M0 = 0.4


@pytest.fixture(scope="module")
def T():
    return elliptic_triple_from_tau_eta(1.2j, 0.3)


@pytest.fixture(scope="module")
def ctx():
    return eval_grid(160, M0)


def _elems(T):
    rng = np.random.default_rng(17)
    a = random_element(rng, T, (-2, 0, 1), m=M0)
    b = random_element(rng, T, (-1, 2), m=M0)
    return a, b


def test_shift_unitary(T, ctx):
    V = element_V(T.eta, M0)
    Vs = element_Vstar(T.eta, M0)
    assert element_sup(V * Vs - 1.0, ctx) < 1e-13
    assert element_sup(Vs * V - 1.0, ctx) < 1e-13


def test_adjoint_is_involutive_antihomomorphism(T, ctx):
    a, b = _elems(T)
    assert element_sup(a.adjoint().adjoint() - a, ctx) < 1e-12
    assert element_sup((a * b).adjoint() - b.adjoint() * a.adjoint(),
                       ctx) < 1e-10


def test_product_associative(T, ctx):
    a, b = _elems(T)
    c = element_V(T.eta, M0)
    assert element_sup((a * b) * c - a * (b * c), ctx) < 1e-10


def test_trace_functional(T, ctx):
    a, b = _elems(T)
    assert abs(trace_chi(element_one(T.eta, M0), ctx=ctx) - 1) < 1e-14
    # only the degree-zero channel survives
    rng = np.random.default_rng(5)
    assert abs(trace_chi(random_element(rng, T, (3,), m=M0), ctx=ctx)) < 1e-14
    tr_ab = trace_chi(a * b, ctx=ctx)
    tr_ba = trace_chi(b * a, ctx=ctx)
    assert abs(tr_ab - tr_ba) / max(1.0, abs(tr_ab)) < 1e-10
    pos = trace_chi(a.adjoint() * a, ctx=ctx)
    assert pos.real > 0 and abs(pos.imag) < 1e-11


def test_derivations_leibniz(T, ctx):
    a, b = _elems(T)
    for k in (2, 3):
        lhs = derivation(k, a * b)
        rhs = derivation(k, a) * b + a * derivation(k, b)
        assert element_sup(lhs - rhs, ctx) < 1e-9


def test_six_relations(T, ctx):
    S = [make_generator(mu, M0, T) for mu in range(4)]
    assert max(relation_residuals(S, coupling_J(T), ctx)) < 1e-10


def test_casimirs(T):
    r1, r2 = casimir_residuals(M0, T)
    assert r1 < 1e-9 and r2 < 1e-9


def test_selfadjoint_at_phi(asc_phi, asc_triple):
    m = 0.3 * asc_triple.M.tau.imag
    ctxp = eval_grid(160, m)
    for mu in range(4):
        s = make_generator(mu, m, asc_triple)
        assert element_sup(s - s.adjoint(), ctxp) < 1e-11


def test_theta_coupling_matches_trig(asc_phi, asc_triple):
    Jt = coupling_J(asc_triple)
    Jg = trig_invariants(asc_phi).J
    assert max(abs(a - b) for a, b in zip(Jt, Jg)) < 1e-10


def test_sphere_and_central_forms(asc_phi, asc_triple):
    m = 0.3 * asc_triple.M.tau.imag
    gens = normalized_generators(m, asc_phi, asc_triple)
    assert sphere_residual(gens) < 1e-9
    q1r, q2r = central_quadratic_residuals(gens)
    assert q1r < 1e-9 and q2r < 1e-9


def test_equivalence_routes(asc_phi, asc_triple, T):
    m = 0.3 * asc_triple.M.tau.imag
    assert equivalence_residual(m, asc_triple) < 1e-9
    assert equivalence_residual(M0, T) < 1e-9
