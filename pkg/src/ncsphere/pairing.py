"""The degree-3 cycle of the sphere's defining unitary, its pairing with
the torus trace-cocycle, and the volume-form identities that express the
pairing through the slope function on the real fiber circle.

The pairing density D(m) is the numerical centerpiece: a 36-term sum of
traces of fourfold products of generator images and their derivative
images, matched against a closed theta-quotient g(m).
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .elliptic import (
    EllipticTriple,
    _jacobian_constants,
    curve_point,
    elliptic_triple,
    jacobian_J,
    jacobian_R,
    period_Omega,
    psi,
)
from .errors import (
    ClassificationError,
    NumericError,
    PreconditionError,
    UsageError,
)
from .moduli import PhiPoint, scale_factors, trig_invariants
from .nctorus import (
    EvalGrid,
    TORUS_NODES,
    casimir_values,
    derivation,
    eval_grid,
    generator_dm,
    make_generator,
    theta_fn,
    trace_chi,
)
from .theta import ModularParam, theta
from .variety import (
    ProjPoint,
    involution,
    q_p,
    q_pprime,
    q_prime,
    q_x,
    quadratic_form_eval,
)

__all__ = [
    "ChernCycle",
    "PairingReport",
    "chern_cycle",
    "ending1_residual",
    "transport_residual",
    "cycle_pairing",
    "generator_deltas",
    "pairing_density",
    "g_closed",
    "sigma_fourth",
    "sigma_scaling",
    "sigma_scaling_dm",
    "omega_density",
    "curve_R",
    "dR_dm",
    "vol_residual",
    "vol_integral_residual",
    "derivative_lemma_residual",
    "ratio_identity_residual",
    "ratio_sigma_invariance",
    "central_form_rank",
    "pairing_report",
]

# The tensor-leg order of the cycle against the (i,j,k) order of the three
# derivations admits one overall sign; calibrated once at
# (tau, eta, m) = (1.2i, 0.3, 0.5) against the closed form and frozen.
_PAIR_ORIENT = 1.0

# Sign matching the m-increasing parametrization of the real fiber circle
# against the slope differential; frozen at the same calibration point.
_VOL_SIGN = 1.0

_N_WEIGHT = (0, 1, 1, 1)


def _perm_sign(p) -> int:
    sign = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


_PERMS4 = tuple((p, _perm_sign(p)) for p in permutations(range(4)))
_PERMS3 = tuple((p, _perm_sign(p)) for p in permutations((1, 2, 3)))


@dataclass(frozen=True)
class ChernCycle:
    """A 4-tensor cycle stored as (coefficient, index 4-tuple) terms."""

    terms: tuple
    tag: str

    def coefficient(self, idx) -> complex:
        for c, t in self.terms:
            if t == tuple(idx):
                return c
        return 0j


def _sigma_weights(T: EllipticTriple) -> tuple[complex, complex, complex, complex]:
    a, b, c = T.abc
    return (0j, T.lam * a, T.lam * b, T.lam * c)


def chern_cycle(phi: PhiPoint | None, variant: str = "S",
                T: EllipticTriple | None = None) -> ChernCycle:
    """The degree-3 cycle of the defining unitary in one of three bases.

    "x": coefficients eps*cos(phi_a - phi_b + phi_c - phi_d) on the 24
    permutations and -i sin 2(phi_mu - phi_nu) on the (mu,nu,mu,nu)
    squares, with phi_0 = 0.  "S": the rescaled form, coefficients
    -eps*(n-difference)(s-difference) and +2i(-1)^(n_mu-n_nu)(s_mu-s_nu).
    "sigma": s replaced by sigma_k = lam*s_k, the theta-square ratios.
    """
    if variant == "x":
        if phi is None:
            raise UsageError("the x-variant needs a phi point")
        ang = (0.0, *phi.phi)
        terms = []
        for p, sgn in _PERMS4:
            a, b, c, d = p
            coeff = sgn * math.cos(ang[a] - ang[b] + ang[c] - ang[d])
            terms.append((complex(coeff), p))
        for mu in range(4):
            for nu in range(4):
                if mu == nu:
                    continue
                coeff = -1j * math.sin(2 * (ang[mu] - ang[nu]))
                terms.append((coeff, (mu, nu, mu, nu)))
        return ChernCycle(tuple(terms), "x")
    if variant == "S":
        if phi is None:
            raise UsageError("the S-variant needs a phi point")
        s = (0.0, *trig_invariants(phi).s)
        if not all(math.isfinite(v) for v in s):
            raise ClassificationError(
                "the rescaled cycle needs finite s-invariants; "
                "a vanishing cos(phi_k) puts phi outside its domain")
        weights = tuple(complex(v) for v in s)
        tag = "S"
    elif variant == "sigma":
        if T is None:
            if phi is None:
                raise UsageError("the sigma-variant needs phi or T")
            T = elliptic_triple(phi)
        weights = _sigma_weights(T)
        tag = "sigma"
    else:
        raise UsageError(f"unknown cycle variant {variant!r}")
    terms = []
    for p, sgn in _PERMS4:
        a, b, c, d = p
        ndiff = _N_WEIGHT[a] - _N_WEIGHT[b] + _N_WEIGHT[c] - _N_WEIGHT[d]
        sdiff = weights[a] - weights[b] + weights[c] - weights[d]
        terms.append((-sgn * ndiff * sdiff, p))
    for mu in range(4):
        for nu in range(4):
            if mu == nu:
                continue
            npow = (-1) ** (_N_WEIGHT[mu] - _N_WEIGHT[nu])
            coeff = 2j * npow * (weights[mu] - weights[nu])
            terms.append((coeff, (mu, nu, mu, nu)))
    return ChernCycle(tuple(terms), tag)


def ending1_residual(phi: PhiPoint) -> float:
    """Largest deviation over the 24 permutations of the identity
    cos(phi_a - phi_b + phi_c - phi_d)/prod cos phi_k =
    (n-difference)(s-difference)."""
    ang = (0.0, *phi.phi)
    s = (0.0, *trig_invariants(phi).s)
    denom = math.prod(math.cos(v) for v in phi.phi)
    worst = 0.0
    for p, _ in _PERMS4:
        a, b, c, d = p
        lhs = math.cos(ang[a] - ang[b] + ang[c] - ang[d]) / denom
        ndiff = _N_WEIGHT[a] - _N_WEIGHT[b] + _N_WEIGHT[c] - _N_WEIGHT[d]
        rhs = ndiff * (s[a] - s[b] + s[c] - s[d])
        worst = max(worst, abs(lhs - rhs))
    return worst


def transport_residual(phi: PhiPoint) -> float:
    """Termwise check that the x-form and the rescaled form are the same
    cycle: Lambda * c_x(legs) / prod(lambda_leg) = c_S(legs) for every term."""
    cx = chern_cycle(phi, "x")
    cs = chern_cycle(phi, "S")
    lam = scale_factors(phi)
    Lam = trig_invariants(phi).Lambda
    worst = 0.0
    for coeff, idx in cx.terms:
        legs = lam[idx[0]] * lam[idx[1]] * lam[idx[2]] * lam[idx[3]]
        worst = max(worst, abs(Lam * coeff / legs - cs.coefficient(idx)))
    return worst


# ---------------------------------------------------------------------------
# the trace cocycle


def generator_deltas(m: float, T: EllipticTriple, S=None) -> dict:
    """The three derivative images of each generator: the m-channel, the
    u-channel, and the degree weight 2 pi i n."""
    if S is None:
        S = [make_generator(mu, m, T) for mu in range(4)]
    return {
        1: [generator_dm(mu, m, T) for mu in range(4)],
        2: [derivation(2, s) for s in S],
        3: [derivation(3, s) for s in S],
    }


def _assert_finite(value: complex, ctx: EvalGrid, legs) -> complex:
    if cmath.isfinite(value):
        return value
    for mu, leg in enumerate(legs):
        for n, f in leg.coeffs.items():
            vals = f.values(ctx)
            if not np.all(np.isfinite(vals)):
                node = int(np.argmax(~np.isfinite(vals)))
                raise NumericError(
                    f"pole in generator {mu} degree {n} at node {node}")
    raise NumericError("non-finite pairing value")


def _tuple_trace(idx, legs, deltas, ctx: EvalGrid) -> complex:
    a, b, c, d = idx
    total = 0j
    for (i, j, k), sgn in _PERMS3:
        prod = legs[a] * deltas[i][b] * deltas[j][c] * deltas[k][d]
        total += sgn * trace_chi(prod, ctx=ctx)
    return _PAIR_ORIENT * total


def cycle_pairing(cycle: ChernCycle, legs, deltas, ctx: EvalGrid) -> complex:
    """Pair a cycle with the trace cocycle: sum of coefficient times the
    antisymmetrized trace of leg * delta_i(leg) * delta_j(leg) * delta_k(leg)."""
    total = 0j
    for coeff, idx in cycle.terms:
        if coeff == 0:
            continue
        total += coeff * _tuple_trace(idx, legs, deltas, ctx)
    return _assert_finite(total, ctx, legs)


def pairing_density(m: float, phi: PhiPoint | None = None,
                    T: EllipticTriple | None = None,
                    nodes: int = TORUS_NODES) -> complex:
    """D(m): the trace cocycle against the sigma-weighted cycle, the
    quantity that the closed form g(m) reproduces."""
    if T is None:
        if phi is None:
            raise UsageError("pairing_density needs phi or T")
        T = elliptic_triple(phi)
    cyc = chern_cycle(phi, "sigma", T)
    S = [make_generator(mu, m, T) for mu in range(4)]
    deltas = generator_deltas(m, T, S)
    ctx = eval_grid(nodes, m)
    # the weighted cycle is -1 times the image of the rescaled cycle, so
    # the density carries the compensating sign
    return -cycle_pairing(cyc, S, deltas, ctx)


def g_closed(m: float, T: EllipticTriple) -> complex:
    """g(m) = 24 (2 pi i)^3 (t1'(0)^3/pi^3) t1(eta) t1(2im)/(t2 t3 t4)(eta)."""
    M, eta = T.M, T.eta
    d1 = theta(1, 0.0, M, order=1)
    return complex(
        24 * (2j * math.pi) ** 3 * d1 ** 3 / math.pi ** 3
        * theta(1, eta, M) * theta(1, 2j * m, M)
        / (theta(2, eta, M) * theta(3, eta, M) * theta(4, eta, M)))


# ---------------------------------------------------------------------------
# normalization scalars


def sigma_fourth(m: float, phi: PhiPoint, T: EllipticTriple | None = None) -> complex:
    """sigma(m)^4 = (prod sin phi_j)^2 (C1 - lam C2)^(-2); no branch choice."""
    if T is None:
        T = elliptic_triple(phi)
    c1, c2 = casimir_values(m, T)
    prod_sin = math.prod(math.sin(p) for p in phi)
    return complex(prod_sin ** 2 / (c1 - T.lam * c2) ** 2)


def sigma_scaling(m: float, phi: PhiPoint,
                  T: EllipticTriple | None = None) -> complex:
    """sigma(m) itself, principal branch; the fourth power is branch-free."""
    if T is None:
        T = elliptic_triple(phi)
    c1, c2 = casimir_values(m, T)
    prod_sin = math.prod(math.sin(p) for p in phi)
    return cmath.sqrt(prod_sin) / cmath.sqrt(c1 - T.lam * c2)


def sigma_scaling_dm(m: float, phi: PhiPoint,
                     T: EllipticTriple | None = None) -> complex:
    """d sigma/dm on the same branch as sigma_scaling."""
    if T is None:
        T = elliptic_triple(phi)
    M, eta = T.M, T.eta
    c1, c2 = casimir_values(m, T)
    d_c1 = 8j * theta(2, 1j * m, M) * theta(2, 1j * m, M, order=1)
    d_c2 = 4j * (theta(2, eta + 1j * m, M, order=1) * theta(2, eta - 1j * m, M)
                 - theta(2, eta + 1j * m, M) * theta(2, eta - 1j * m, M, order=1))
    n = c1 - T.lam * c2
    dn = d_c1 - T.lam * d_c2
    prod_sin = math.prod(math.sin(p) for p in phi)
    return -0.5 * cmath.sqrt(prod_sin) * dn / (n * cmath.sqrt(n))


def omega_density(m: float, phi: PhiPoint, T: EllipticTriple | None = None,
                  route: str = "scaled", nodes: int = TORUS_NODES) -> complex:
    """The pairing density of the x-form cycle under the unit-sphere
    normalization: -sigma(m)^4 D(m)/(lam Lambda).

    The direct route evaluates the same pairing from scratch with the
    normalized generator images, including the dsigma/dm part of the
    m-derivative; its agreement with the scaled route is the numerical
    content of the cancellation lemma for the scaling derivative.
    """
    if T is None:
        T = elliptic_triple(phi)
    Lam = trig_invariants(phi).Lambda
    if route == "scaled":
        D = pairing_density(m, phi, T, nodes)
        return -sigma_fourth(m, phi, T) * D / (T.lam * Lam)
    if route != "direct":
        raise UsageError(f"unknown route {route!r}")
    sig = sigma_scaling(m, phi, T)
    dsig = sigma_scaling_dm(m, phi, T)
    S = [make_generator(mu, m, T) for mu in range(4)]
    S_norm = [sig * s for s in S]
    deltas = generator_deltas(m, T, S)
    deltas_norm = {
        1: [dsig * S[mu] + sig * deltas[1][mu] for mu in range(4)],
        2: [sig * e for e in deltas[2]],
        3: [sig * e for e in deltas[3]],
    }
    lam_mu = scale_factors(phi)
    cyc = chern_cycle(phi, "x")
    scaled_terms = []
    for coeff, idx in cyc.terms:
        legs = lam_mu[idx[0]] * lam_mu[idx[1]] * lam_mu[idx[2]] * lam_mu[idx[3]]
        scaled_terms.append((coeff / legs, idx))
    cyc_hat = ChernCycle(tuple(scaled_terms), "x")
    ctx = eval_grid(nodes, m)
    return cycle_pairing(cyc_hat, S_norm, deltas_norm, ctx)


# ---------------------------------------------------------------------------
# the slope function and the volume identity


def curve_R(phi: PhiPoint, m: float, T: EllipticTriple | None = None) -> complex:
    """The slope function at the real-circle point of parameter m."""
    if T is None:
        T = elliptic_triple(phi)
    return jacobian_R(phi, curve_point(T, m))


def dR_dm(phi: PhiPoint, m: float, T: EllipticTriple | None = None,
          route: str = "symbolic", h: float = 1e-6) -> complex:
    """The m-derivative of the slope along the real circle, three ways:
    exact differentiation of the closed theta expression, the pullback
    J(Z) * chi(dZ/dm), or central finite differences."""
    if T is None:
        T = elliptic_triple(phi)
    M, eta = T.M, T.eta
    k, l, mi, c_k, t_k = _jacobian_constants(phi)
    if route == "symbolic":
        atom_m = theta_fn(mi + 1, M, au=1j)
        atom_l = theta_fn(l + 1, M, au=1j)
        A = (atom_m * atom_m) * (1 / theta(mi + 1, eta, M) ** 2)
        B = (atom_l * atom_l) * (1 / theta(l + 1, eta, M) ** 2)
        R_tree = (t_k * A) / (A + c_k * B)
        val = R_tree.d_du()(np.array([m]))
        return complex(val[0])
    if route == "pullback":
        s = trig_invariants(phi).s
        Z = np.array([theta(j, 1j * m, M) / theta(j, eta, M) for j in (1, 2, 3, 4)])
        dZ = np.array([1j * theta(j, 1j * m, M, order=1) / theta(j, eta, M)
                       for j in (1, 2, 3, 4)])
        chi = (Z[k] * dZ[0] - Z[0] * dZ[k]) / (s[k - 1] * Z[l] * Z[mi])
        return complex(jacobian_J(phi, curve_point(T, m)) * chi)
    if route == "fd":
        return complex(curve_R(phi, m + h, T) - curve_R(phi, m - h, T)) / (2 * h)
    raise UsageError(f"unknown route {route!r}")


def vol_residual(m: float, phi: PhiPoint, T: EllipticTriple | None = None,
                 Omega: complex | None = None, nodes: int = TORUS_NODES,
                 ramification_tol: float = 1e-9) -> float:
    """Relative residual of omega(m) = 6 pi Omega dR/dm at one m.

    At a ramification point both sides vanish together and the ratio is
    indeterminate; such points report 0.0 (an indeterminate pass).
    """
    if T is None:
        T = elliptic_triple(phi)
    if Omega is None:
        Omega = period_Omega(phi).Omega
    om = omega_density(m, phi, T, nodes=nodes)
    dr = dR_dm(phi, m, T, "symbolic")
    rhs = _VOL_SIGN * 6 * math.pi * Omega * dr
    scale = max(abs(om), abs(rhs))
    if scale < ramification_tol:
        return 0.0
    return abs(om - rhs) / scale


def vol_integral_residual(phi: PhiPoint, T: EllipticTriple | None = None,
                          lo: float = 0.1, hi: float = 0.4,
                          m_nodes: int = 24, nodes: int = TORUS_NODES) -> float:
    """Constant-weight integral form of the volume identity on the
    subinterval [lo, hi]*Im tau: Gauss-Legendre integral of omega against
    the exact increment 6 pi Omega (R(hi) - R(lo)).

    The density is antisymmetric about the half period, so a window
    symmetric about it makes both sides vanish and the relative residual
    meaningless; the default window sits on one side.
    """
    if T is None:
        T = elliptic_triple(phi)
    Omega = period_Omega(phi).Omega
    span = T.M.tau.imag
    a, b = lo * span, hi * span
    xg, wg = np.polynomial.legendre.leggauss(m_nodes)
    mids = 0.5 * (b - a) * xg + 0.5 * (b + a)
    vals = np.array([omega_density(float(mm), phi, T, nodes=nodes)
                     for mm in mids])
    lhs = complex(0.5 * (b - a) * np.sum(wg * vals))
    rhs = _VOL_SIGN * 6 * math.pi * Omega * (
        curve_R(phi, b, T) - curve_R(phi, a, T))
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1.0)


def derivative_lemma_residual(M: ModularParam, b1: complex, b2: complex,
                              u: complex) -> float:
    """Residual of the closed derivative identity
    t3(0)^2 t4(0)^2 d/du [t1(u)^2/(b1 t1(u)^2 + b2 t2(u)^2)] =
    b2 (t1'(0)^3/pi^2) t1(2u)/(b1 t1(u)^2 + b2 t2(u)^2)^2."""
    t1 = theta(1, u, M)
    t2 = theta(2, u, M)
    d1 = theta(1, u, M, order=1)
    d2 = theta(2, u, M, order=1)
    den = b1 * t1 ** 2 + b2 * t2 ** 2
    # quotient rule collapses to b2 times the Wronskian of the squares
    lhs = (theta(3, 0.0, M) ** 2 * theta(4, 0.0, M) ** 2
           * b2 * (2 * t1 * d1 * t2 ** 2 - t1 ** 2 * 2 * t2 * d2) / den ** 2)
    rhs = (b2 * theta(1, 0.0, M, order=1) ** 3 / math.pi ** 2
           * theta(1, 2 * u, M) / den ** 2)
    return abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)


# ---------------------------------------------------------------------------
# the rational-ratio identities


def _on_curve_or_raise(Z: ProjPoint, phi: PhiPoint, tol: float = 1e-9):
    s = trig_invariants(phi).s
    v = Z.normalized().array()
    r1 = (v[0] ** 2 - v[1] ** 2) / s[0] - (v[0] ** 2 - v[2] ** 2) / s[1]
    r2 = (v[0] ** 2 - v[2] ** 2) / s[1] - (v[0] ** 2 - v[3] ** 2) / s[2]
    if max(abs(r1), abs(r2)) > tol:
        raise PreconditionError(
            f"point is off the fiber curve: residual {max(abs(r1), abs(r2)):.3e}")
    return v


def ratio_identity_residual(Z: ProjPoint, phi: PhiPoint) -> float:
    """Residuals of the two bilinear-ratio identities on the fiber curve.

    With j = I3 I0 and j2 = I2 I0:
    b P'(Z, jZ)/Q'(Z, jZ)  = Z0^2/(Z0^2 + a Z1^2) - 1/s1,
    b P(Z, j2Z)/Q(Z, j2Z) = tg1 tg2 tg3 (Z3^2/(Z3^2 + c1 Z2^2) - 1/s1),
    b = sin phi2 sin phi3/cos(phi2 - phi3), a = cot(phi1-phi2) cot(phi1-phi3),
    c1 = tan phi2 cot(phi1 - phi2), tg_j = tan phi_j.
    Both hold identically in the curve parameter; the tangent-product
    factor on the second right side is forced by matching poles and
    values of the two Mobius functions.  Returns the larger deviation.
    """
    v = _on_curve_or_raise(Z, phi)
    p1, p2, p3 = phi.phi
    s1 = trig_invariants(phi).s[0]
    b = math.sin(p2) * math.sin(p3) / math.cos(p2 - p3)
    a = (math.cos(p1 - p2) / math.sin(p1 - p2)) * (
        math.cos(p1 - p3) / math.sin(p1 - p3))
    c1 = math.tan(p2) * math.cos(p1 - p2) / math.sin(p1 - p2)
    tg_prod = math.tan(p1) * math.tan(p2) * math.tan(p3)
    Zn = ProjPoint(tuple(v), Z.role)
    jZ = involution("I3", involution("I0", Zn))
    j2Z = involution("I2", involution("I0", Zn))

    num1 = quadratic_form_eval(q_pprime(phi), Zn, jZ)
    den1 = quadratic_form_eval(q_prime(phi), Zn, jZ)
    if abs(den1) < 1e-12:
        raise PreconditionError("primed denominator form vanishes here")
    rhs1 = v[0] ** 2 / (v[0] ** 2 + a * v[1] ** 2) - 1 / s1
    r1 = abs(b * num1 / den1 - rhs1)

    num2 = quadratic_form_eval(q_p(phi), Zn, j2Z)
    den2 = quadratic_form_eval(q_x(phi), Zn, j2Z)
    if abs(den2) < 1e-12:
        raise PreconditionError("denominator form vanishes here")
    rhs2 = tg_prod * (v[3] ** 2 / (v[3] ** 2 + c1 * v[2] ** 2) - 1 / s1)
    r2 = abs(b * num2 / den2 - rhs2)
    return max(r1, r2)


def ratio_sigma_invariance(phi: PhiPoint, T: EllipticTriple,
                           z: complex, zp: complex) -> float:
    """Invariance of the central-form ratio under the paired translation
    (z, z') -> (z - eta, z' + eta) on fiber point pairs."""
    P, Q = q_p(phi), q_x(phi)

    def ratio(za, zb):
        Za, Zb = psi(za, T), psi(zb, T)
        num = quadratic_form_eval(P, Za, Zb)
        den = quadratic_form_eval(Q, Za, Zb)
        if abs(den) < 1e-12:
            raise NumericError("denominator form vanishes on this pair")
        return num / den

    r0 = ratio(z, zp)
    r1 = ratio(z - T.eta, zp + T.eta)
    return abs(r0 - r1) / max(1.0, abs(r0))


def central_form_rank(phi: PhiPoint) -> int:
    """Rank of the stacked numerator and denominator forms; 2 certifies
    that the ratio is not a constant."""
    stack = np.stack([np.diag(q_p(phi).matrix), np.diag(q_x(phi).matrix)])
    return int(np.linalg.matrix_rank(stack))


# ---------------------------------------------------------------------------
# reporting


@dataclass(frozen=True)
class PairingReport:
    """Densities, closed form, and slope data over an m-grid."""

    tau: complex
    eta: complex
    m_grid: tuple
    D: tuple
    g: tuple
    ratio: tuple
    Omega: complex | None
    R: tuple
    dR: tuple
    residuals: dict

    def to_json(self) -> str:
        def enc(v):
            if v is None:
                return None
            if isinstance(v, complex):
                return [v.real, v.imag]
            return v

        payload = {
            "tau": enc(self.tau),
            "eta": enc(self.eta),
            "m_grid": list(self.m_grid),
            "D": [enc(v) for v in self.D],
            "g": [enc(v) for v in self.g],
            "ratio": [enc(v) for v in self.ratio],
            "Omega": enc(self.Omega),
            "R": [enc(v) for v in self.R],
            "dR": [enc(v) for v in self.dR],
            "residuals": {k: enc(v) for k, v in sorted(self.residuals.items())},
        }
        return json.dumps(payload, indent=2, sort_keys=True)

    def csv_rows(self):
        yield ("m", "D", "g", "ratio", "R", "dR")
        for i, m in enumerate(self.m_grid):
            r_val = self.R[i].real if i < len(self.R) else ""
            dr_val = self.dR[i].real if i < len(self.dR) else ""
            yield (f"{m:.12g}", f"{self.D[i].real:.12g}",
                   f"{self.g[i].real:.12g}", f"{self.ratio[i].real:.12g}",
                   f"{r_val:.12g}" if r_val != "" else "",
                   f"{dr_val:.12g}" if dr_val != "" else "")


def pairing_report(phi: PhiPoint | None = None,
                   T: EllipticTriple | None = None,
                   m_nodes: int = 10, nodes: int = TORUS_NODES,
                   lo: float = 0.1, hi: float = 0.9) -> PairingReport:
    """Evaluate D, g, and (with phi) the slope data over an m-grid."""
    if T is None:
        if phi is None:
            raise UsageError("pairing_report needs phi or T")
        T = elliptic_triple(phi)
    span = T.M.tau.imag
    grid = tuple(float(v) for v in np.linspace(lo * span, hi * span, m_nodes))
    D = tuple(pairing_density(m, phi, T, nodes) for m in grid)
    g = tuple(g_closed(m, T) for m in grid)
    ratio = tuple(d / gv for d, gv in zip(D, g))
    Omega = None
    R = ()
    dR = ()
    if phi is not None:
        Omega = period_Omega(phi).Omega
        R = tuple(curve_R(phi, m, T) for m in grid)
        dR = tuple(dR_dm(phi, m, T, "symbolic") for m in grid)
    residuals = {
        "max_ratio_error": max(abs(r - 1) for r in ratio),
        "max_imag_over_real": max(
            abs(d.imag) / max(abs(d.real), 1e-300) for d in D),
    }
    return PairingReport(T.M.tau, T.eta, grid, D, g, ratio, Omega, R, dR,
                         residuals)
