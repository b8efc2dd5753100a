"""Elliptic parametrization of the generic fiber and its period data.

The resolvent triple (a, b, c) fixes a modular parameter through
lambda_modular = (a/b)(c-b)/(c-a) and a translation step eta through
p = a/(a-c) = p_ratio(eta).  The fiber is then the image of
psi(z)_j = theta_{j+1}(2z - eta)/theta_{j+1}(eta) and the correspondence
acts by z -> z - eta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ClassificationError,
    DegenerateError,
    NumericError,
    PoleError,
    UsageError,
)
from .moduli import Case, PhiPoint, ResolventTriple, classify, trig_invariants
from .theta import ModularParam, modular_param, p_ratio, tau_of_lambda, theta
from .variety import HALF_MATRIX, ProjPoint, proj_point, projective_equal, sigma_cubic

__all__ = [
    "EllipticTriple",
    "JacobianData",
    "elliptic_triple",
    "elliptic_triple_from_tau_eta",
    "coupling_J",
    "psi",
    "psi_centered",
    "special_point",
    "fiber_residual",
    "sklyanin_j",
    "period_Omega",
    "omega_closed_form",
    "jacobian_R",
    "jacobian_J",
    "curve_point",
]


@dataclass(frozen=True)
class EllipticTriple:
    """Modular parameter, translation step, scale, and the source triple."""

    M: ModularParam
    eta: complex
    lam: complex
    abc: tuple[complex, complex, complex]

    @property
    def two_torsion(self) -> tuple[complex, complex, complex]:
        tau = self.M.tau
        return (0.5 + 0j, (1 + tau) / 2, tau / 2)


@dataclass(frozen=True)
class JacobianData:
    """Period of the fiber cycle and the constants of the slope function."""

    Omega: complex
    k_index: int
    c_k: float
    t_k: float


def _cell_reduce(eta: complex, tau: complex) -> complex:
    y = eta.imag / tau.imag
    x = eta.real - y * tau.real
    x -= math.floor(x)
    y -= math.floor(y)
    out = x + y * tau
    if abs(y) < 1e-12 or abs(y - 1) < 1e-12:
        out = complex(x, 0.0)
    return out


def _newton_eta(Mp: ModularParam, p: complex, seed: complex):
    tol = 1e-12 * max(1.0, abs(p))
    h = 1e-7
    eta = seed
    try:
        f = p_ratio(eta, Mp) - p
    except PoleError:
        return None
    for _ in range(60):
        if abs(f) < tol:
            return eta
        try:
            df = (p_ratio(eta + h, Mp) - p_ratio(eta - h, Mp)) / (2 * h)
        except PoleError:
            return None
        if df == 0:
            return None
        step = f / df
        improved = False
        for _ in range(30):
            trial = eta - step
            try:
                ft = p_ratio(trial, Mp) - p
            except PoleError:
                step /= 2
                continue
            if abs(ft) < abs(f):
                eta, f = trial, ft
                improved = True
                break
            step /= 2
        if not improved:
            return None
    return eta if abs(f) < tol else None


def _solve_eta(Mp: ModularParam, p: complex) -> complex:
    t = Mp.tau.imag
    cands = []
    for re in np.linspace(0.0, 0.5, 9):
        for im in np.linspace(0.0, t / 2, 9):
            if re < 1e-9 and im < 1e-9:
                continue
            seed = complex(re, im) + Mp.tau.real * (im / t)
            try:
                v = p_ratio(seed, Mp)
            except PoleError:
                continue
            cands.append((abs(v - p), seed))
    cands.sort(key=lambda item: item[0])
    for _, seed in cands[:6]:
        eta = _newton_eta(Mp, p, seed)
        if eta is not None:
            return _cell_reduce(eta, Mp.tau)
    raise NumericError("translation step solve did not converge")


def _sigma_shift_matches(T: EllipticTriple) -> bool:
    for zr, zi in ((0.233, 0.061), (0.147, 0.102), (0.358, 0.043)):
        z = complex(zr, 0.0) + 1j * zi * T.M.tau.imag
        try:
            img = sigma_cubic(psi(z, T))
        except DegenerateError:
            continue
        return projective_equal(img, psi(z - T.eta, T), 1e-8)
    raise NumericError("could not probe the translation direction")


def elliptic_triple(src, eps: float = 1e-14) -> EllipticTriple:
    """Solve lambda_modular and the step eta for a phi point or a triple.

    The step is reduced to the cell Re in [0,1), Im in [0, Im tau), real
    representatives preferred, and oriented so the cubic correspondence is
    the translation z -> z - eta.
    """
    if isinstance(src, PhiPoint):
        if classify(src).case_id is not Case.Generic:
            raise ClassificationError(
                "elliptic data exists only for the generic case"
            )
        a, b, c = (complex(v) for v in trig_invariants(src).s)
    elif isinstance(src, ResolventTriple):
        a, b, c = complex(src.a), complex(src.b), complex(src.c)
    else:
        raise UsageError(f"unsupported source {type(src).__name__}")
    scale = max(abs(a), abs(b), abs(c))
    if min(abs(a - b), abs(b - c), abs(a - c)) < 1e-12 * scale:
        raise DegenerateError("coincident resolvent values")
    lam_mod = (a / b) * (c - b) / (c - a)
    if abs(lam_mod) < eps or abs(lam_mod - 1) < eps:
        raise DegenerateError("modular lambda degenerates to 0 or 1")
    Mp = tau_of_lambda(lam_mod, eps)
    p = a / (a - c)
    eta = _solve_eta(Mp, p)
    den = theta(2, eta, Mp) ** 2
    T = EllipticTriple(Mp, eta, theta(2, 0.0, Mp) ** 2 / (a * den), (a, b, c))
    if not _sigma_shift_matches(T):
        eta2 = _cell_reduce(-eta, Mp.tau)
        den2 = theta(2, eta2, Mp) ** 2
        T = EllipticTriple(Mp, eta2, theta(2, 0.0, Mp) ** 2 / (a * den2), (a, b, c))
        if not _sigma_shift_matches(T):
            raise NumericError("translation direction test failed for both steps")
    return T


def elliptic_triple_from_tau_eta(tau: complex, eta: complex) -> EllipticTriple:
    """Build the triple directly from a modulus and a step, with unit scale.

    The resolvent values are then the squared theta ratios
    theta_{k+1}(0)^2/theta_{k+1}(eta)^2, the unique choice with lam = 1.
    """
    Mp = modular_param(tau)
    abc = tuple(
        (theta(j, 0.0, Mp) / theta(j, eta, Mp)) ** 2 for j in (2, 3, 4)
    )
    return EllipticTriple(Mp, complex(eta), 1.0 + 0j, abc)


def coupling_J(T: EllipticTriple) -> tuple[complex, complex, complex]:
    """The three coupling constants (J_23, J_31, J_12) as theta-square ratios.

    J_23 = t1^2 t2^2/(t3^2 t4^2), J_31 = -t1^2 t3^2/(t2^2 t4^2),
    J_12 = t1^2 t4^2/(t2^2 t3^2), all evaluated at the step eta.
    """
    t1, t2, t3, t4 = (theta(j, T.eta, T.M) ** 2 for j in (1, 2, 3, 4))
    return (t1 * t2 / (t3 * t4), -t1 * t3 / (t2 * t4), t1 * t4 / (t2 * t3))


def psi(z: complex, T: EllipticTriple) -> ProjPoint:
    """psi(z)_j = theta_{j+1}(2z - eta)/theta_{j+1}(eta), a fiber point."""
    w = 2 * z - T.eta
    coords = [theta(j, w, T.M) / theta(j, T.eta, T.M) for j in (1, 2, 3, 4)]
    return proj_point(coords, "Z")


def psi_centered(z: complex, T: EllipticTriple) -> ProjPoint:
    """The translate psi(z + eta/2); its zero sits at the curve's origin."""
    return psi(z + T.eta / 2, T)


_SPECIAL_U = {
    "p0": (1, 0, 0, 0),
    "p1": (0, 1, 0, 0),
    "p2": (0, 0, 1, 0),
    "p3": (0, 0, 0, 1),
    "q0": (-1, 1, 1, 1),
    "q1": (1, -1, 1, 1),
    "q2": (1, 1, -1, 1),
    "q3": (1, 1, 1, -1),
}


def special_point(name: str, T: EllipticTriple) -> ProjPoint:
    """The eight distinguished fiber points, given in theta coordinates.

    In the half-sum coordinates they are the four unit vectors p0..p3 and
    the four odd sign vectors q0..q3; psi maps eta and its two-torsion
    translates to p0..p3 and the two-torsion points themselves to q0..q3.
    """
    if name not in _SPECIAL_U:
        raise UsageError(f"unknown special point {name!r}")
    vec = np.array(_SPECIAL_U[name], dtype=complex)
    return proj_point(HALF_MATRIX @ vec, "Z")


def fiber_residual(abc, Z: ProjPoint) -> float:
    """Residual of the two fiber quadrics (Z0^2-Z1^2)/a = (Z0^2-Z2^2)/b
    = (Z0^2-Z3^2)/c at unit sup-norm."""
    a, b, c = abc
    v = Z.normalized().array()
    r1 = (v[0] ** 2 - v[1] ** 2) / a - (v[0] ** 2 - v[2] ** 2) / b
    r2 = (v[0] ** 2 - v[2] ** 2) / b - (v[0] ** 2 - v[3] ** 2) / c
    return float(max(abs(r1), abs(r2)))


def sklyanin_j(T: EllipticTriple, k: int) -> complex:
    """j_k = theta_{k+1}(0) theta_{k+1}(2 eta) / theta_{k+1}(eta)^2."""
    if k not in (1, 2, 3):
        raise UsageError("k must be 1, 2 or 3")
    j = k + 1
    return (
        theta(j, 0.0, T.M)
        * theta(j, 2 * T.eta, T.M)
        / theta(j, T.eta, T.M) ** 2
    )


def curve_point(T: EllipticTriple, m: float) -> ProjPoint:
    """The real-cycle point Z(m)_j = theta_{j+1}(i m)/theta_{j+1}(eta)."""
    coords = [theta(j, 1j * m, T.M) / theta(j, T.eta, T.M) for j in (1, 2, 3, 4)]
    return proj_point(coords, "Z")


def _jacobian_indices(phi: PhiPoint) -> tuple[int, int, int]:
    k = int(np.argmin(phi.phi)) + 1
    l, m = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[k]
    return k, l, m


def _jacobian_constants(phi: PhiPoint) -> tuple[int, int, int, float, float]:
    k, l, m = _jacobian_indices(phi)
    pk, pl = phi.phi[k - 1], phi.phi[l - 1]
    c_k = math.tan(pl) / math.tan(pk - pl)
    t_k = math.tan(pk)
    return k, l, m, c_k, t_k

# Orientation of the cycle, frozen by one calibration against the closed
# form below; the midpoint rule keeps clear of the points where numerator
# and denominator vanish together.
_OMEGA_ORIENT = 1.0


def omega_closed_form(T: EllipticTriple, k: int) -> complex:
    """2 pi theta_{k+1}(0)^2 theta_{l+1}(eta) theta_{m+1}(eta)
    / (theta_1(eta) theta_{k+1}(eta)), (k,l,m) cyclic."""
    l, m = {1: (2, 3), 2: (3, 1), 3: (1, 2)}[k]
    e = T.eta
    return (
        2
        * math.pi
        * theta(k + 1, 0.0, T.M) ** 2
        * theta(l + 1, e, T.M)
        * theta(m + 1, e, T.M)
        / (theta(1, e, T.M) * theta(k + 1, e, T.M))
    )


def period_Omega(phi: PhiPoint, nodes: int = 512) -> JacobianData:
    """Integrate (Z_k dZ_0 - Z_0 dZ_k)/(Z_l Z_m) over the fiber cycle.

    The cycle is psi(z), z in [0, 1], traversed once; k is the index of the
    smallest angle.  Midpoint rule: the integrand is 1-periodic and smooth,
    so the error decays exponentially in the node count.
    """
    if classify(phi).case_id is not Case.Generic:
        raise ClassificationError("the period needs the generic case")
    T = elliptic_triple(phi)
    k, l, m, c_k, t_k = _jacobian_constants(phi)
    h = 1.0 / nodes
    den_eta = np.array([theta(j, T.eta, T.M) for j in (1, 2, 3, 4)])
    total = 0.0 + 0j
    min_den = math.inf
    max_den = 0.0
    for i in range(nodes):
        w = 2 * ((i + 0.5) * h) - T.eta
        Z = np.array([theta(j, w, T.M) for j in (1, 2, 3, 4)]) / den_eta
        dZ = 2 * np.array(
            [theta(j, w, T.M, order=1) for j in (1, 2, 3, 4)]
        ) / den_eta
        den = Z[l] * Z[m]
        min_den = min(min_den, abs(den))
        max_den = max(max_den, abs(den))
        total += (Z[k] * dZ[0] - Z[0] * dZ[k]) / den
    if min_den < 1e-8 * max_den:
        raise NumericError("fiber cycle passes too close to a coordinate plane")
    return JacobianData(_OMEGA_ORIENT * total * h, k, c_k, t_k)


def jacobian_R(phi: PhiPoint, Z: ProjPoint) -> complex:
    """The slope function R = t_k Z_m^2 / (Z_m^2 + c_k Z_l^2)."""
    k, l, m, c_k, t_k = _jacobian_constants(phi)
    v = Z.normalized().array()
    den = v[m] ** 2 + c_k * v[l] ** 2
    if abs(den) < 1e-12:
        raise PoleError("slope function pole at this point")
    return t_k * v[m] ** 2 / den


def jacobian_J(phi: PhiPoint, Z: ProjPoint) -> complex:
    """The density with dR = J(Z) chi, chi the normalized fiber one-form."""
    k, l, m, c_k, t_k = _jacobian_constants(phi)
    s = trig_invariants(phi).s
    v = Z.normalized().array()
    den = v[m] ** 2 + c_k * v[l] ** 2
    if abs(den) < 1e-12:
        raise PoleError("slope density pole at this point")
    return (
        2 * (s[l - 1] - s[m - 1]) * c_k * t_k * v[0] * v[1] * v[2] * v[3] / den**2
    )
