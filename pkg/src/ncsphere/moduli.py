"""Moduli points, trigonometric invariants, classification, flow, dualities.

A moduli point is phi = (phi_1, phi_2, phi_3) on the torus (R/piZ)^3 with
phi_0 = 0 implicit.  The twelve roots {+-phi_j, +-(phi_k - phi_l)} cut the
torus into eleven strata (one open, ten singular); classification matches a
point against the normal forms of the strata by enumerating the order-24
symmetry group generated by coordinate permutations and the map
(phi_1, phi_2, phi_3) -> (-phi_1, phi_3 - phi_1, phi_2 - phi_1).

Infinite invariant entries (J, alpha, s at odd strata) are tagged with
math.inf, indeterminate 0/0 entries with math.nan; neither is ever the
result of float overflow.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateError, NumericError

__all__ = [
    "PhiPoint",
    "TrigInvariants",
    "ScaleFactors",
    "Case",
    "CaseLabel",
    "ResolventTriple",
    "phi_point",
    "trig_invariants",
    "scale_factors",
    "classify",
    "weyl_elements",
    "apply_weyl",
    "flow_field",
    "flow_integrate",
    "duality",
    "u_of_phi",
    "resolvent",
    "rho_map",
    "s_tilde",
    "STRATUM_TOL",
]

STRATUM_TOL = 1e-10
HALF_PI = math.pi / 2


def _reduce_mod_pi(x: float) -> float:
    r = math.fmod(x, math.pi)
    if r < 0:
        r += math.pi
    if r >= math.pi:
        r -= math.pi
    return r


@dataclass(frozen=True)
class PhiPoint:
    """Moduli parameter with components reduced to [0, pi)."""

    phi: tuple[float, float, float]

    def __iter__(self):
        return iter(self.phi)

    def __getitem__(self, k: int) -> float:
        return self.phi[k]


def phi_point(p1: float, p2: float, p3: float) -> PhiPoint:
    return PhiPoint((_reduce_mod_pi(p1), _reduce_mod_pi(p2), _reduce_mod_pi(p3)))


def _near_half_pi_multiple(x: float, tol: float = STRATUM_TOL) -> bool:
    """True iff x is within tol of a multiple of pi/2."""
    r = math.fmod(x, HALF_PI)
    return min(abs(r), HALF_PI - abs(r)) < tol


def _near(x: float, y: float, tol: float = STRATUM_TOL) -> bool:
    """Equality of angles mod pi."""
    d = math.fmod(x - y, math.pi)
    if d < 0:
        d += math.pi
    return min(d, math.pi - d) < tol


_CYCLIC = ((0, 1, 2), (1, 2, 0), (2, 0, 1))


def _tag_ratio(num: float, den: float, tol: float = STRATUM_TOL) -> float:
    if abs(den) < tol:
        return math.nan if abs(num) < tol else math.inf
    return num / den


@dataclass(frozen=True)
class TrigInvariants:
    """Derived scalars of a moduli point.

    J is ordered (J_23, J_31, J_12), alpha as (alpha_1, alpha_2, alpha_3)
    = (-J_23, -J_31, -J_12); k-th entries of s and J both correspond to the
    cyclic triple (k, l, m).
    """

    t: tuple[float, float, float]
    s: tuple[float, float, float]
    delta: float
    Lambda: float
    J: tuple[float, float, float]
    alpha: tuple[float, float, float]


def trig_invariants(phi: PhiPoint) -> TrigInvariants:
    p = phi.phi
    sin = [math.sin(x) for x in p]
    cos = [math.cos(x) for x in p]
    d_cos = {}
    d_sin = {}
    for k, l in ((0, 1), (0, 2), (1, 2)):
        d_cos[(k, l)] = math.cos(p[k] - p[l])
        d_sin[(k, l)] = math.sin(p[k] - p[l])

    t = tuple(_tag_ratio(sin[j], cos[j]) for j in range(3))
    # s_k = 1 + t_l t_m, computed as cos(phi_l - phi_m)/(cos phi_l cos phi_m)
    # to keep the infinite tagging exact.
    s = []
    for k, l, m in _CYCLIC:
        key = (l, m) if l < m else (m, l)
        s.append(_tag_ratio(d_cos[key], cos[l] * cos[m]))
    pair_cos = d_cos[(0, 1)] * d_cos[(0, 2)] * d_cos[(1, 2)]
    delta = sin[0] * sin[1] * sin[2] * pair_cos
    Lambda = _tag_ratio(delta, cos[0] * cos[1] * cos[2])
    # J_lm = -tan(phi_k) tan(phi_l - phi_m), as a sin/cos ratio.
    J = []
    for k, l, m in _CYCLIC:
        sgn = 1.0 if l < m else -1.0
        key = (l, m) if l < m else (m, l)
        J.append(_tag_ratio(-sin[k] * sgn * d_sin[key], cos[k] * d_cos[key]))
    alpha = tuple(-x for x in J)
    return TrigInvariants(t=t, s=tuple(s), delta=delta, Lambda=Lambda, J=tuple(J), alpha=alpha)


def rho_map(s) -> tuple[float, float, float]:
    """rho(s)_k = (s_l - s_m)/s_k; equals (J_23, J_31, J_12) on s(phi)."""
    return tuple((s[l] - s[m]) / s[k] for k, l, m in _CYCLIC)


def s_tilde(s) -> tuple[float, float, float]:
    """The involution s~_k = (-s_k + s_l + s_m)/(s_l s_m); rho(s~) = -rho(s)."""
    return tuple((-s[k] + s[l] + s[m]) / (s[l] * s[m]) for k, l, m in _CYCLIC)


@dataclass(frozen=True)
class ScaleFactors:
    """The four rescaling scalars lambda_mu, each real or purely imaginary."""

    lambda_mu: tuple[complex, complex, complex, complex]

    def __iter__(self):
        return iter(self.lambda_mu)

    def __getitem__(self, k: int) -> complex:
        return self.lambda_mu[k]


def scale_factors(phi: PhiPoint) -> ScaleFactors:
    """Solve the rescaling relations (sin phi_k) l_l l_m + cos(phi_l - phi_m) l_0 l_k = 0.

    lambda_k (k=1..3) are principal square roots of
    sin(phi_k) cos(phi_k - phi_l) cos(phi_k - phi_m); lambda_0 is then forced
    by the k=1 relation, which makes the other two relations and
    prod lambda_mu = -delta(phi) hold identically.
    """
    p = phi.phi
    inv = trig_invariants(phi)
    if not math.isfinite(inv.delta) or abs(inv.delta) < 1e-12:
        raise DegenerateError(f"scale factors need delta(phi) != 0, got {inv.delta:.3e}")
    lam = [0j] * 4
    for k, l, m in _CYCLIC:
        val = math.sin(p[k]) * math.cos(p[k] - p[l]) * math.cos(p[k] - p[m])
        lam[k + 1] = cmath.sqrt(val)
    lam[0] = -math.sin(p[0]) * lam[2] * lam[3] / (math.cos(p[1] - p[2]) * lam[1])
    sf = ScaleFactors(tuple(lam))
    prod = lam[0] * lam[1] * lam[2] * lam[3]
    if abs(prod + inv.delta) > 1e-10 * max(1.0, abs(inv.delta)):
        raise NumericError(f"scale factor product check failed: {prod} vs {-inv.delta}")
    return sf


class Case(Enum):
    Generic = "Generic"
    EvenFace = "EvenFace"
    OddFace = "OddFace"
    LineL = "LineL"
    LineLprime = "LineLprime"
    LineLsecond = "LineLsecond"
    Cplus = "Cplus"
    Cminus = "Cminus"
    VertexP = "VertexP"
    VertexPprime = "VertexPprime"
    VertexO = "VertexO"


# Table row numbers of the geometric-data table, for reporting.
CASE_NUMBER = {
    Case.Generic: 1,
    Case.EvenFace: 2,
    Case.OddFace: 3,
    Case.LineL: 4,
    Case.LineLprime: 5,
    Case.LineLsecond: 6,
    Case.Cplus: 7,
    Case.Cminus: 8,
    Case.VertexP: 9,
    Case.VertexPprime: 10,
    Case.VertexO: 11,
}


@dataclass(frozen=True)
class CaseLabel:
    case_id: Case
    witness: tuple  # 3x3 integer matrix rows, phi -> witness.phi lands in the normal form
    normal_form: tuple[float, float, float]

    @property
    def case_number(self) -> int:
        return CASE_NUMBER[self.case_id]


def _weyl_generators():
    perms = []
    for order in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        A = [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        for i, j in enumerate(order):
            A[i][j] = 1
        perms.append(tuple(tuple(r) for r in A))
    T = ((-1, 0, 0), (-1, 0, 1), (-1, 1, 0))
    return perms + [T]


def _matmul(A, B):
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3)) for i in range(3)
    )


_WEYL_CACHE: list | None = None


def weyl_elements() -> list[tuple]:
    """The 24 integer matrices of the symmetry group, in lexicographic order."""
    global _WEYL_CACHE
    if _WEYL_CACHE is None:
        gens = _weyl_generators()
        group = set(gens)
        frontier = list(gens)
        while frontier:
            new_frontier = []
            for g in frontier:
                for h in gens:
                    gh = _matmul(g, h)
                    if gh not in group:
                        group.add(gh)
                        new_frontier.append(gh)
            frontier = new_frontier
        if len(group) != 24:
            raise NumericError(f"symmetry group closure has {len(group)} elements, expected 24")
        _WEYL_CACHE = sorted(group)
    return _WEYL_CACHE


def apply_weyl(A: tuple, phi: PhiPoint) -> PhiPoint:
    p = phi.phi
    return phi_point(*(sum(A[i][j] * p[j] for j in range(3)) for i in range(3)))


def _match_normal_form(case: Case, p: tuple[float, float, float]) -> bool:
    p1, p2, p3 = p
    free = lambda x: not _near_half_pi_multiple(x)
    if case is Case.VertexO:
        return _near(p1, 0) and _near(p2, 0) and _near(p3, 0)
    if case is Case.VertexP:
        return _near(p1, HALF_PI) and _near(p2, HALF_PI) and _near(p3, HALF_PI)
    if case is Case.VertexPprime:
        return _near(p1, HALF_PI) and _near(p2, HALF_PI) and _near(p3, 0)
    if case is Case.Cplus:
        return _near(p1, p2) and _near(p3, 0) and free(p1)
    if case is Case.Cminus:
        return _near(p2, HALF_PI) and _near(p1, p3 + HALF_PI) and free(p3)
    if case is Case.LineL:
        return _near(p1, HALF_PI) and _near(p2, p3) and free(p2)
    if case is Case.LineLprime:
        return _near(p1, HALF_PI) and _near(p2, HALF_PI) and free(p3)
    if case is Case.LineLsecond:
        return _near(p1, p2) and _near(p2, p3) and free(p1)
    if case is Case.EvenFace:
        return (
            _near(p1, p2)
            and free(p1)
            and free(p3)
            and not _near_half_pi_multiple(p2 - p3)
        )
    if case is Case.OddFace:
        return (
            _near(p1, HALF_PI)
            and free(p2)
            and free(p3)
            and not _near_half_pi_multiple(p2 - p3)
        )
    raise ValueError(case)


_CASE_ORDER = [
    Case.VertexO,
    Case.VertexP,
    Case.VertexPprime,
    Case.Cplus,
    Case.Cminus,
    Case.LineL,
    Case.LineLprime,
    Case.LineLsecond,
    Case.EvenFace,
    Case.OddFace,
]

_IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def classify(phi: PhiPoint) -> CaseLabel:
    """Match phi against the eleven strata.

    Cases are tested from the deepest stratum outward; within a case the
    symmetry elements are tried in lexicographic matrix order and the first
    match wins.  Returns Generic (identity witness) iff no singular normal
    form is reached.
    """
    for case in _CASE_ORDER:
        for A in weyl_elements():
            image = apply_weyl(A, phi)
            if _match_normal_form(case, image.phi):
                return CaseLabel(case_id=case, witness=A, normal_form=image.phi)
    return CaseLabel(case_id=Case.Generic, witness=_IDENTITY, normal_form=phi.phi)


def flow_field(phi: PhiPoint) -> tuple[float, float, float]:
    """The scaling flow F_j = sin(2 phi_j) sin(phi_k + phi_l - phi_j)."""
    p = phi.phi
    out = []
    for j, k, l in _CYCLIC:
        out.append(math.sin(2 * p[j]) * math.sin(p[k] + p[l] - p[j]))
    return tuple(out)


def flow_integrate(phi: PhiPoint, t: float, steps: int | None = None) -> PhiPoint:
    """Fixed-step RK4 integration of the scaling flow for time t."""
    if steps is None:
        steps = max(1, math.ceil(abs(t) * 200))
    h = t / steps
    y = np.array(phi.phi, dtype=float)

    def f(v):
        return np.array(flow_field(PhiPoint(tuple(v))), dtype=float)

    for _ in range(steps):
        k1 = f(y)
        k2 = f(y + h / 2 * k1)
        k3 = f(y + h / 2 * k2)
        k4 = f(y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return phi_point(*y)


_DUALITIES = {
    1: lambda p: (math.pi - p[0], HALF_PI - p[0] + p[1], HALF_PI - p[0] + p[2]),
    2: lambda p: (HALF_PI + p[1] - p[2], p[1], HALF_PI - p[0] + p[1]),
    3: lambda p: (HALF_PI - p[1] + p[2], HALF_PI - p[0] + p[2], p[2]),
}


def duality(j: int, phi: PhiPoint) -> PhiPoint:
    """The involutive duality maps f_1, f_2, f_3 on moduli points."""
    if j not in _DUALITIES:
        raise ValueError(f"duality index must be 1..3, got {j}")
    return phi_point(*_DUALITIES[j](phi.phi))


def u_of_phi(phi: PhiPoint) -> np.ndarray:
    """Complexified moduli coordinates u_mu = e^(2 i phi_mu), phi_0 = 0."""
    return np.array([1.0, *(cmath.exp(2j * x) for x in phi.phi)], dtype=complex)


@dataclass(frozen=True)
class ResolventTriple:
    a: complex
    b: complex
    c: complex

    def __iter__(self):
        return iter((self.a, self.b, self.c))


def resolvent(u) -> tuple[ResolventTriple, tuple[complex, complex, complex]]:
    """Resolvent triple (a, b, c) of u and the J values (J_23, J_31, J_12).

    a = (u0+u1)(u2+u3), b = (u0+u2)(u3+u1), c = (u0+u3)(u1+u2);
    J_23 = (b-c)/a, J_31 = (c-a)/b, J_12 = (a-b)/c.  At the eight special
    points all three of a, b, c vanish and the point is rejected.
    """
    u = np.asarray(u, dtype=complex).reshape(4)
    a = (u[0] + u[1]) * (u[2] + u[3])
    b = (u[0] + u[2]) * (u[3] + u[1])
    c = (u[0] + u[3]) * (u[1] + u[2])
    scale = float(np.max(np.abs(u))) ** 2
    if max(abs(a), abs(b), abs(c)) < 1e-10 * max(scale, 1e-300):
        raise DegenerateError(f"special point: resolvent (a,b,c) all vanish at u={u}")

    def ratio(num, den):
        if abs(den) < 1e-14 * max(abs(num), 1.0):
            return math.inf
        return num / den

    J = (ratio(b - c, a), ratio(c - a, b), ratio(a - b, c))
    return ResolventTriple(a, b, c), J
