"""Moduli layer: case classification, symmetry action, dualities, and the
scaling flow."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncsphere.moduli import (
    CASE_NUMBER,
    Case,
    apply_weyl,
    classify,
    duality,
    flow_field,
    flow_integrate,
    phi_point,
    trig_invariants,
    weyl_elements,
)

CASES = {
    "Generic": (0.31, 0.73, 1.12),
    "EvenFace": (0.6, 0.6, 1.1),
    "OddFace": (math.pi / 2, 0.7, 0.4),
    "LineL": (math.pi / 2, 0.8, 0.8),
    "LineLprime": (math.pi / 2, math.pi / 2, 0.9),
    "LineLsecond": (0.8, 0.8, 0.8),
    "Cplus": (0.7, 0.7, 0.0),
    "Cminus": (math.pi / 2 + 0.5, math.pi / 2, 0.5),
    "VertexP": (math.pi / 2, math.pi / 2, math.pi / 2),
    "VertexPprime": (math.pi / 2, math.pi / 2, 0.0),
    "VertexO": (0.0, 0.0, 0.0),
}


@pytest.mark.parametrize("name,raw", CASES.items(), ids=CASES.keys())
def test_case_classification(name, raw):
    label = classify(phi_point(*raw))
    assert label.case_id is Case[name]
    assert label.case_number == CASE_NUMBER[Case[name]]


def test_case_numbers_cover_1_to_11():
    assert sorted(CASE_NUMBER.values()) == list(range(1, 12))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.05, 3.0),
       st.integers(-2, 2))
def test_mod_pi_ingestion(a, b, c, k):
    # angles are identified mod pi on ingestion
    p = phi_point(a, b, c)
    q = phi_point(a + k * math.pi, b, c)
    assert max(abs(x - y) for x, y in zip(p.phi, q.phi)) < 1e-9


def test_classification_weyl_invariant(rng):
    # the symmetry group permutes and shifts angles without moving strata
    for _ in range(5):
        raw = rng.uniform(0.1, 1.4, 3)
        ph = phi_point(*raw)
        base = classify(ph).case_id
        for w in weyl_elements()[:8]:
            assert classify(apply_weyl(w, ph)).case_id is base


def test_duality_involutions(rng):
    for _ in range(5):
        ph = phi_point(*rng.uniform(0.1, 1.4, 3))
        for j in (1, 2, 3):
            back = duality(j, duality(j, ph))
            assert max(abs(math.sin(a - b))
                       for a, b in zip(back.phi, ph.phi)) < 1e-12


def test_duality_conjugation(rng):
    # f2 = f1 o f3 o f1
    for _ in range(5):
        ph = phi_point(*rng.uniform(0.1, 1.4, 3))
        lhs = duality(2, ph)
        rhs = duality(1, duality(3, duality(1, ph)))
        assert max(abs(math.sin(a - b))
                   for a, b in zip(lhs.phi, rhs.phi)) < 1e-12


def test_flow_conserves_invariants(asc_phi):
    J0 = np.array(trig_invariants(asc_phi).J)
    for t in (0.025, 0.1):
        moved = flow_integrate(asc_phi, t)
        assert classify(moved).case_id is Case.Generic
        Jt = np.array(trig_invariants(moved).J)
        assert np.max(np.abs(Jt - J0)) / np.max(np.abs(J0)) < 1e-8


def test_flow_moves_the_point(asc_phi):
    moved = flow_integrate(asc_phi, 0.1)
    assert max(abs(a - b) for a, b in zip(moved.phi, asc_phi.phi)) > 1e-4


def test_flow_field_scaling_law(rng):
    # the log-derivative of each s_k along the flow is 4 sin(phi1) sin(phi2) sin(phi3)
    for _ in range(8):
        ph = phi_point(*np.sort(rng.uniform(0.15, 1.4, 3)))
        F = flow_field(ph)
        inv = trig_invariants(ph)
        t = inv.t
        target = 4 * math.prod(math.sin(p) for p in ph.phi)
        for k, l, m in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            ds = (F[l - 1] * t[m - 1] * (1 + t[l - 1] ** 2)
                  + F[m - 1] * t[l - 1] * (1 + t[m - 1] ** 2))
            assert abs(ds / inv.s[k - 1] - target) < 1e-10


def test_trig_invariants_consistency(asc_phi):
    inv = trig_invariants(asc_phi)
    t = [math.tan(p) for p in asc_phi.phi]
    assert max(abs(a - b) for a, b in zip(inv.t, t)) < 1e-14
    s = [1 + t[1] * t[2], 1 + t[0] * t[2], 1 + t[0] * t[1]]
    assert max(abs(a - b) for a, b in zip(inv.s, s)) < 1e-12
