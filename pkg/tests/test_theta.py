"""Theta building blocks: the sixteen quartic relations, parity, the
derivative, and the modular lambda inversion."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ncsphere.errors import ConfigurationError
from ncsphere.theta import (
    THETA_RELATIONS,
    half_periods,
    lambda_of_tau,
    modular_param,
    tau_of_lambda,
    theta,
    theta_dz,
    theta_relation_residual,
)

# draws sized so the four-theta products stay O(1); the residual is absolute
taus = st.builds(
    complex,
    st.floats(-0.4, 0.4),
    st.floats(0.9, 1.6),
)
points = st.builds(
    complex,
    st.floats(-0.6, 0.6),
    st.floats(-0.3, 0.3),
)


@settings(max_examples=25, deadline=None)
@given(rel_id=st.integers(1, 16), tau=taus, a=points, b=points, c=points,
       d=points)
def test_quartic_relations_hold(rel_id, tau, a, b, c, d):
    M = modular_param(tau)
    assert theta_relation_residual(rel_id, a, b, c, d, M) < 1e-11


def test_relation_id_validated():
    M = modular_param(1.2j)
    with pytest.raises(ConfigurationError):
        theta_relation_residual(0, 0j, 0j, 0j, 0j, M)
    with pytest.raises(ConfigurationError):
        theta_relation_residual(17, 0j, 0j, 0j, 0j, M)


def test_relation_table_complete():
    assert sorted(THETA_RELATIONS) == list(range(1, 17))


@pytest.mark.parametrize("j,parity", [(1, -1), (2, 1), (3, 1), (4, 1)])
def test_parity(j, parity):
    M = modular_param(1.1j)
    for z in (0.3 + 0.1j, 0.7 - 0.2j):
        assert abs(theta(j, -z, M) - parity * theta(j, z, M)) < 1e-13


def test_theta1_vanishes_at_origin():
    M = modular_param(1.3j)
    assert abs(theta(1, 0.0, M)) < 1e-14


def test_derivative_matches_finite_difference():
    M = modular_param(1.2j)
    h = 1e-6
    for j in (1, 2, 3, 4):
        for z in (0.2 + 0.1j, -0.4 + 0.05j):
            fd = (theta(j, z + h, M) - theta(j, z - h, M)) / (2 * h)
            assert abs(theta_dz(j, z, M) - fd) < 1e-8


def test_half_periods_shape():
    M = modular_param(1.4j)
    hp = half_periods(M)
    assert len(hp) == 3
    assert any(abs(w - 0.5) < 1e-15 for w in hp)
    assert any(abs(w - M.tau / 2) < 1e-15 for w in hp)


@settings(max_examples=20, deadline=None)
@given(lam=st.builds(complex, st.floats(0.08, 0.92), st.floats(-0.4, 0.4)))
def test_lambda_roundtrip(lam):
    if min(abs(lam), abs(lam - 1)) < 0.05:
        return
    M = tau_of_lambda(lam)
    assert abs(lambda_of_tau(M) - lam) < 1e-10
    assert M.tau.imag > 0


def test_lambda_known_value():
    # the square lattice sits at the fixed point lambda = 1/2
    M = modular_param(1j)
    assert abs(lambda_of_tau(M) - 0.5) < 1e-12
