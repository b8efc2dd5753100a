"""Characteristic varieties: relation matrices, minors, case membership,
the cubic correspondence, and central quadratic forms."""

import cmath
import math

import numpy as np
import pytest

from ncsphere.errors import DegenerateError, UsageError
from ncsphere.moduli import phi_point, trig_invariants
from ncsphere.variety import (
    MINOR_PAIRS,
    SklyaninParams,
    centrality_residual,
    change_basis,
    form_vanishes_at,
    involution,
    is_on_variety,
    loci_samples,
    minors15,
    minors15_closed,
    proj_point,
    projective_equal,
    q_m,
    q_sphere,
    q_two,
    q_x,
    quadratic_form_eval,
    relation_matrix,
    sigma_cubic,
    sklyanin_minors_closed,
)

from test_moduli import CASES


def _fiber_sample(rng, s):
    # one branch of the intersection of the two quadrics cutting the curve
    w = complex(rng.standard_normal(), rng.standard_normal())
    return proj_point(
        [1.0, cmath.sqrt(1 - s[0] * w), cmath.sqrt(1 - s[1] * w),
         cmath.sqrt(1 - s[2] * w)], "Z")


def test_minors_match_closed_form(rng):
    for _ in range(10):
        ph = phi_point(*np.sort(rng.uniform(0.15, 1.4, 3)))
        x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        direct = minors15(relation_matrix(ph, proj_point(x, "x")))
        closed = minors15_closed(ph, x)
        scale = float(np.max(np.abs(direct)))
        assert np.max(np.abs(direct - closed)) / scale < 1e-9
    assert len(MINOR_PAIRS) == 15


def test_sklyanin_minors_match(rng):
    for _ in range(5):
        sp = SklyaninParams.from_phi(
            phi_point(*np.sort(rng.uniform(0.15, 1.4, 3))))
        z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        direct = minors15(relation_matrix(sp, proj_point(z, "z")))
        closed = sklyanin_minors_closed(sp, z)
        assert (np.max(np.abs(direct - closed))
                / np.max(np.abs(direct))) < 1e-9


@pytest.mark.parametrize("name,raw", CASES.items(), ids=CASES.keys())
def test_listed_loci_lie_on_variety(name, raw, rng):
    ph = phi_point(*raw)
    src_z = (SklyaninParams.from_phi(ph)
             if name in ("Generic", "EvenFace", "OddFace") else None)
    samples = loci_samples(ph, name, rng, n=5)
    assert samples
    for pts in samples.values():
        for p in pts:
            src = src_z if p.role == "z" else ph
            assert is_on_variety(src, p)


def test_off_variety_rejected(rng):
    ph = phi_point(0.31, 0.73, 1.12)
    x = proj_point(rng.standard_normal(4) + 1j * rng.standard_normal(4), "x")
    assert not is_on_variety(ph, x)


def test_zero_point_rejected():
    with pytest.raises(UsageError):
        proj_point([0, 0, 0, 0], "z")


def test_sigma_translates_by_step(asc_phi, asc_triple, rng):
    from ncsphere.elliptic import psi
    T = asc_triple
    for _ in range(6):
        z = complex(rng.uniform(0.05, 0.45),
                    rng.uniform(0.02, 0.4) * T.M.tau.imag)
        assert projective_equal(sigma_cubic(psi(z, T)), psi(z - T.eta, T),
                                1e-9)


def test_sigma_factors_through_involutions(asc_phi, asc_triple, rng):
    # the coordinate inversion lives in the half-sum frame
    from ncsphere.elliptic import psi
    T = asc_triple
    for _ in range(6):
        z = complex(rng.uniform(0.05, 0.45),
                    rng.uniform(0.05, 0.45) * T.M.tau.imag)
        Z = psi(z, T)
        u = involution("Mhalf", involution("I0", Z))
        img = involution("Mhalf", involution("I", u))
        assert projective_equal(sigma_cubic(Z), img, 1e-9)


def test_involutions_square_to_identity(rng):
    p = proj_point(rng.standard_normal(4) + 1j * rng.standard_normal(4), "u")
    assert projective_equal(involution("I", involution("I", p)), p, 1e-9)
    for kind in ("I0", "I1", "I2", "I3"):
        assert projective_equal(involution(kind, involution(kind, p)), p,
                                1e-12)
    pm = involution("Mhalf", p)
    assert projective_equal(involution("Mhalf", pm), p, 1e-12)


def test_singular_inversion_raises():
    with pytest.raises(DegenerateError):
        involution("I", proj_point([1, 1, 0, 0], "u"))


def test_unknown_involution_kind():
    with pytest.raises(UsageError):
        involution("J", proj_point([1, 0, 0, 0], "u"))


def test_sphere_form_normalized(rng):
    x = rng.standard_normal(4)
    x /= np.linalg.norm(x)
    px = proj_point(x, "x")
    assert abs(quadratic_form_eval(q_sphere(), px, px) - 1) < 1e-12


def test_qm_vanishes_on_graph(rng):
    # the three half-step forms vanish at (Z, sigma Z)
    ph = phi_point(0.31, 0.73, 1.12)
    s = trig_invariants(ph).s
    for _ in range(6):
        Z = _fiber_sample(rng, s)
        sZ = sigma_cubic(Z)
        for k in (1, 2, 3):
            assert abs(quadratic_form_eval(q_m(k, ph), Z.normalized(),
                                           sZ.normalized())) < 1e-10


def test_qm_span_rank_two():
    ph = phi_point(0.31, 0.73, 1.12)
    stack = np.stack([np.diag(q_m(k, ph).matrix) for k in (1, 2, 3)]).real
    assert np.linalg.matrix_rank(stack) == 2


def test_qx_is_tangent_combination():
    ph = phi_point(0.31, 0.73, 1.12)
    inv = trig_invariants(ph)
    pc2 = math.prod(math.cos(v) ** 2 for v in ph.phi)
    combo = pc2 * sum(inv.t[k] * inv.s[k] * q_m(k + 1, ph).matrix
                      for k in range(3))
    assert np.max(np.abs(q_x(ph).matrix - combo)) < 1e-12


def test_centrality_on_fiber(rng):
    ph = phi_point(0.31, 0.73, 1.12)
    s = trig_invariants(ph).s
    for _ in range(6):
        Z, Zp = _fiber_sample(rng, s), _fiber_sample(rng, s)
        assert centrality_residual(q_x(ph), s, Z, Zp) < 1e-10


def test_sphere_form_not_central_on_case7(rng):
    ph = phi_point(0.7, 0.7, 0.0)
    s = loci_samples(ph, "Cplus", rng, n=2)
    lines = sorted(s)
    a = s[lines[0]][0]
    b = s[lines[-1]][0]
    assert centrality_residual(q_sphere(), ph, a, b) > 1e-3


def test_qtwo_vanishing_flags(rng):
    ph = phi_point(0.7, 0.7, 0.0)
    s = loci_samples(ph, "Cplus", rng, n=2)
    assert form_vanishes_at(q_two(ph), s["l2"][0])
    assert not form_vanishes_at(q_two(ph), s["l1"][0])


def test_sphere_form_transport(rng):
    # pushing x through the basis change turns sum x^2 into the q_x form
    ph = phi_point(0.31, 0.73, 1.12)
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    Y = change_basis("x_to_Y", proj_point(x, "x"), ph)
    lhs = complex(x @ x)
    rhs = complex(Y.array() @ q_x(ph).matrix @ Y.array())
    assert abs(lhs - rhs) < 1e-12
