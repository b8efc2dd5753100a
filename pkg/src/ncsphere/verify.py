"""Named verification suites over the package's identity inventory.

Each check evaluates one numerical identity or membership property and
reports a residual against a fixed tolerance.  Suites run their checks
concurrently (report assembly is the only synchronization point) and are
deterministic for a fixed seed: every check draws from its own
seed-derived generator, so the assembled JSON payload is byte-identical
across runs.

Check records carry an opaque reference slug (`paper_ref`) naming the
identity family they exercise; the slugs are stable identifiers, not
prose.
"""

from __future__ import annotations

import cmath
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .config import RunConfig
from .elliptic import (
    coupling_J,
    curve_point,
    elliptic_triple,
    elliptic_triple_from_tau_eta,
    fiber_residual,
    omega_closed_form,
    period_Omega,
    psi,
    special_point,
)
from .errors import UsageError
from .moduli import (
    PhiPoint,
    duality,
    flow_field,
    flow_integrate,
    phi_point,
    trig_invariants,
)
from .nctorus import (
    element_V,
    element_one,
    eval_grid,
    normalized_generators,
    relation_residuals,
    sphere_residual,
    trace_chi,
)
from .pairing import (
    ChernCycle,
    central_form_rank,
    chern_cycle,
    cycle_pairing,
    dR_dm,
    derivative_lemma_residual,
    g_closed,
    generator_deltas,
    pairing_density,
    ratio_identity_residual,
    ratio_sigma_invariance,
    vol_integral_residual,
    vol_residual,
)
from .theta import (
    THETA_RELATIONS,
    lambda_of_tau,
    modular_param,
    tau_of_lambda,
    theta_relation_residual,
)
from .variety import (
    SklyaninParams,
    centrality_residual,
    involution,
    loci_samples,
    minors15,
    minors15_closed,
    projective_equal,
    proj_point,
    q_m,
    q_p,
    q_x,
    relation_matrix,
    sigma_cubic,
    sklyanin_minors_closed,
)

SUITES = ("theta", "minors", "variety", "elliptic", "torus", "pairing")

# representative moduli points, one per table case
CASE_POINTS = {
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

_ASC = (0.4, 0.8, 1.1)
_DESC = (1.1, 0.8, 0.4)


@dataclass(frozen=True)
class CheckResult:
    """One verified identity: residual against its tolerance."""

    id: str
    paper_ref: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual < self.tolerance


@dataclass(frozen=True)
class VerificationReport:
    """A suite's assembled check results plus the wall time of the run.

    The JSON payload excludes the wall time so that a fixed seed yields
    byte-identical output; the timing is reported on stderr by the CLI.
    """

    suite: str
    checks: tuple[CheckResult, ...]
    wall_time: float

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_payload(self) -> dict:
        def num(x: float) -> float:
            # keep the payload strict JSON: clamp non-finite residuals
            return x if math.isfinite(x) else sys.float_info.max

        return {
            "suite": self.suite,
            "checks": [
                {
                    "id": c.id,
                    "paper_ref": c.paper_ref,
                    "residual": num(c.residual),
                    "tolerance": c.tolerance,
                    "pass": c.passed,
                }
                for c in self.checks
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_payload(), indent=2, sort_keys=True)

    def csv_rows(self):
        yield ("id", "paper_ref", "residual", "tolerance", "pass")
        for c in self.checks:
            res = c.residual if math.isfinite(c.residual) else sys.float_info.max
            yield (c.id, c.paper_ref, repr(res), repr(c.tolerance),
                   "true" if c.passed else "false")


class _Check:
    __slots__ = ("id", "ref", "tol", "fn")

    def __init__(self, id_, ref, tol, fn):
        self.id, self.ref, self.tol, self.fn = id_, ref, tol, fn


def _rng(cfg: RunConfig, idx: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, idx])


def _svd_ratio(mat: np.ndarray) -> float:
    sv = np.linalg.svd(mat, compute_uv=False)
    return float(sv[3] / sv[0]) if sv[0] > 0 else 0.0


def _proj_dev(a, b) -> float:
    va, vb = a.normalized().array(), b.normalized().array()
    idx = int(np.argmax(np.abs(va)))
    return float(np.max(np.abs(va / va[idx] - vb / vb[idx])))


def _random_generic_phi(rng) -> PhiPoint:
    while True:
        vals = np.sort(rng.uniform(0.12, math.pi / 2 - 0.12, 3))
        if np.min(np.diff(vals)) > 0.08:
            return phi_point(*vals)


# ---------------------------------------------------------------------------
# suite builders


def _theta_checks(cfg: RunConfig) -> list[_Check]:
    def relation(rel_id, rng):
        # moderate |Im z| and Im tau >= 0.9 keep the four-theta products
        # of order one, so the absolute residual stays near round-off
        worst = 0.0
        for _ in range(100):
            tau = complex(rng.uniform(-0.4, 0.4), rng.uniform(0.9, 1.6))
            M = modular_param(tau, cfg.eps)
            pts = rng.standard_normal(8) * 0.3
            a, b, c, d = (complex(pts[i], pts[i + 4]) for i in range(4))
            worst = max(worst, theta_relation_residual(rel_id, a, b, c, d, M))
        return worst

    checks = [
        _Check(f"theta-relation-{rel_id:02d}", f"relt{rel_id}", 1e-11,
               lambda rng, rel_id=rel_id: relation(rel_id, rng))
        for rel_id in sorted(THETA_RELATIONS)
    ]

    def roundtrip(rng):
        worst = 0.0
        for _ in range(10):
            lam = complex(rng.uniform(0.05, 0.95), rng.uniform(-0.5, 0.5))
            if min(abs(lam), abs(lam - 1)) < 0.05:
                continue
            M = tau_of_lambda(lam, cfg.eps)
            worst = max(worst, abs(lambda_of_tau(M) - lam))
        return worst

    checks.append(_Check("modular-lambda-roundtrip", "ellparam1", 1e-10,
                         roundtrip))
    return checks


def _minors_checks(cfg: RunConfig) -> list[_Check]:
    def minor(slot, rng):
        worst = 0.0
        for _ in range(50):
            ph = _random_generic_phi(rng)
            x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            direct = minors15(relation_matrix(ph, proj_point(x, "x")))
            closed = minors15_closed(ph, x)
            scale = float(np.max(np.abs(direct)))
            worst = max(worst, abs(direct[slot] - closed[slot]) / scale)
        return worst

    from .variety import MINOR_PAIRS
    checks = [
        _Check(f"minor-{i}{j}", "matrixphi", 1e-9,
               lambda rng, slot=slot: minor(slot, rng))
        for slot, (i, j) in enumerate(MINOR_PAIRS)
    ]

    def sklyanin(rng):
        worst = 0.0
        for _ in range(20):
            sp = SklyaninParams.from_phi(_random_generic_phi(rng))
            z = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            direct = minors15(relation_matrix(sp, proj_point(z, "z")))
            closed = sklyanin_minors_closed(sp, z)
            scale = float(np.max(np.abs(direct)))
            worst = max(worst, float(np.max(np.abs(direct - closed))) / scale)
        return worst

    checks.append(_Check("minors-sklyanin-form", "matrixsklya", 1e-9,
                         sklyanin))
    return checks


def _variety_checks(cfg: RunConfig) -> list[_Check]:
    def table_case(name, rng):
        ph = phi_point(*CASE_POINTS[name])
        src_z = (SklyaninParams.from_phi(ph)
                 if name in ("Generic", "EvenFace", "OddFace") else None)
        worst = 0.0
        for pts in loci_samples(ph, name, rng, n=20).values():
            for p in pts:
                src = src_z if p.role == "z" else ph
                worst = max(worst, _svd_ratio(relation_matrix(src, p)))
        return worst

    checks = [
        _Check(f"table-case-{i + 1:02d}-{name.lower()}", "tablebig", 1e-9,
               lambda rng, name=name: table_case(name, rng))
        for i, name in enumerate(CASE_POINTS)
    ]

    def containment(rng):
        ph = phi_point(*_ASC)
        T = elliptic_triple(ph)
        s = trig_invariants(ph).s
        worst = 0.0
        for _ in range(20):
            z = complex(rng.uniform(0.05, 0.45),
                        rng.uniform(0.02, 0.4) * T.M.tau.imag)
            worst = max(worst,
                        _svd_ratio(relation_matrix(s, psi(z, T))))
        return worst

    checks.append(_Check("curve-containment", "curve", 1e-9, containment))

    def translation(rng):
        ph = phi_point(*_ASC)
        T = elliptic_triple(ph)
        worst = 0.0
        for _ in range(10):
            z = complex(rng.uniform(0.05, 0.45),
                        rng.uniform(0.02, 0.4) * T.M.tau.imag)
            worst = max(worst, _proj_dev(sigma_cubic(psi(z, T)),
                                         psi(z - T.eta, T)))
        return worst

    checks.append(_Check("cubic-translation", "algebraicsigma", 1e-9,
                         translation))

    def factorization(rng):
        # the coordinate inversion acts in the half-sum frame, so the
        # factored map is Mhalf o I o Mhalf o I0 on fiber points
        ph = phi_point(*_ASC)
        T = elliptic_triple(ph)
        worst = 0.0
        for _ in range(10):
            z = complex(rng.uniform(0.05, 0.45),
                        rng.uniform(0.05, 0.45) * T.M.tau.imag)
            Z = psi(z, T)
            u = involution("Mhalf", involution("I0", Z))
            img = involution("Mhalf", involution("I", u))
            worst = max(worst, _proj_dev(sigma_cubic(Z), img))
        return worst

    checks.append(_Check("cubic-inversion-factorization", "firstinvolution",
                         1e-9, factorization))
    return checks


def _elliptic_checks(cfg: RunConfig) -> list[_Check]:
    def fiber(rng):
        worst = 0.0
        for raw in (_DESC, _ASC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            for _ in range(25):
                z = complex(rng.uniform(0.0, 1.0),
                            rng.uniform(-0.45, 0.45) * T.M.tau.imag)
                worst = max(worst, fiber_residual(T.abc, psi(z, T)))
        return worst

    def specials(rng):
        ph = phi_point(*_DESC)
        T = elliptic_triple(ph)
        tau = T.M.tau
        table = {
            "p0": T.eta, "p1": T.eta + 0.5, "p2": T.eta + 0.5 + tau / 2,
            "p3": T.eta + tau / 2, "q0": 0.0, "q1": 0.5,
            "q2": 0.5 + tau / 2, "q3": tau / 2,
        }
        return max(_proj_dev(psi(z, T), special_point(name, T))
                   for name, z in table.items())

    def scale_identity(rng):
        from .theta import theta
        worst = 0.0
        for raw in (_DESC, _ASC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            s = trig_invariants(ph).s
            for k in (1, 2, 3):
                lhs = T.lam * s[k - 1]
                rhs = (theta(k + 1, 0.0, T.M) ** 2
                       / theta(k + 1, T.eta, T.M) ** 2)
                worst = max(worst, abs(lhs - rhs))
        return worst

    def period(rng):
        worst = 0.0
        for raw in (_DESC, _ASC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            jd = period_Omega(ph, nodes=cfg.quadrature_nodes)
            closed = omega_closed_form(T, jd.k_index)
            worst = max(worst, abs(jd.Omega - closed) / abs(closed))
        return worst

    def flow_conservation(rng):
        ph = phi_point(*_ASC)
        J0 = np.array(trig_invariants(ph).J, dtype=complex)
        worst = 0.0
        for t in (0.025, 0.05, 0.1):
            Jt = np.array(trig_invariants(flow_integrate(ph, t)).J,
                          dtype=complex)
            worst = max(worst,
                        float(np.max(np.abs(Jt - J0)) / np.max(np.abs(J0))))
        return worst

    def scaling_law(rng):
        worst = 0.0
        for _ in range(10):
            ph = _random_generic_phi(rng)
            F = flow_field(ph)
            inv = trig_invariants(ph)
            t = inv.t
            prod_sin = math.prod(math.sin(p) for p in ph.phi)
            for k, l, m in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
                ds = (F[l - 1] * t[m - 1] * (1 + t[l - 1] ** 2)
                      + F[m - 1] * t[l - 1] * (1 + t[m - 1] ** 2))
                target = 4 * prod_sin * inv.s[k - 1]
                worst = max(worst, abs(ds - target) / max(1.0, abs(target)))
        return worst

    def duality_involutive(rng):
        worst = 0.0
        for _ in range(5):
            ph = _random_generic_phi(rng)
            for j in (1, 2, 3):
                back = duality(j, duality(j, ph))
                worst = max(worst, max(
                    abs(math.sin(a - b))
                    for a, b in zip(back.phi, ph.phi)))
        return worst

    def duality_half_step(rng):
        # each duality keeps the lattice Z + tau Z and shifts the step by
        # a half period; the modulus comes back either equal (same marked
        # class, lambda matches) or unit-translated, which transposes two
        # branch labels and maps lambda to lambda/(lambda - 1)
        worst = 0.0
        for raw in (_ASC, _DESC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            lam0 = lambda_of_tau(T.M)
            for j in (1, 2, 3):
                T2 = elliptic_triple(duality(j, ph))
                lam2 = lambda_of_tau(T2.M)
                dtau = T2.M.tau - T.M.tau
                n = round(dtau.real)
                worst = max(worst, abs(dtau - n))
                target = lam0 if n == 0 else lam0 / (lam0 - 1)
                worst = max(worst, abs(lam2 - target))
                best = math.inf
                for sgn in (1, -1):
                    d = T2.eta - sgn * T.eta
                    y = d.imag / T.M.tau.imag
                    x = d.real - y * T.M.tau.real
                    dev = math.hypot(x - round(2 * x) / 2,
                                     y - round(2 * y) / 2)
                    best = min(best, dev)
                worst = max(worst, best)
        return worst

    return [
        _Check("fiber-parametrization", "theta", 1e-11, fiber),
        _Check("special-points", "theta", 1e-9, specials),
        _Check("scale-identity", "ellparam2", 1e-10, scale_identity),
        _Check("period-closed-form", "period", 1e-10, period),
        _Check("flow-coupling-conservation", "flowphi", 1e-8,
               flow_conservation),
        _Check("flow-scaling-law", "convex", 1e-10, scaling_law),
        _Check("duality-involutive", "dual5", 1e-10, duality_involutive),
        _Check("duality-half-step", "ellreal", 1e-10, duality_half_step),
    ]


def _torus_draws(cfg: RunConfig, rng, count: int):
    for _ in range(count):
        ph = _random_generic_phi(rng)
        T = elliptic_triple(ph)
        m = rng.uniform(0.1, 0.9) * T.M.tau.imag
        yield ph, T, float(m)


def _torus_checks(cfg: RunConfig, draws: int = 10) -> list[_Check]:
    nodes = cfg.u_nodes

    def relations(rng):
        worst = 0.0
        for ph, T, m in _torus_draws(cfg, rng, draws):
            gens = normalized_generators(m, ph, T)
            ctx = eval_grid(nodes, m)
            worst = max(worst, *relation_residuals(gens.S, coupling_J(T), ctx))
        return worst

    def selfadjoint(rng):
        worst = 0.0
        for ph, T, m in _torus_draws(cfg, rng, draws):
            gens = normalized_generators(m, ph, T)
            ctx = eval_grid(nodes, m)
            from .nctorus import element_sup
            for S in gens.S:
                worst = max(worst, element_sup(S.adjoint() - S, ctx))
        return worst

    def casimir(rng):
        from .nctorus import casimir_residuals
        worst = 0.0
        for ph, T, m in _torus_draws(cfg, rng, draws):
            worst = max(worst, *casimir_residuals(m, T, nodes=nodes))
        return worst

    def sphere(rng):
        worst = 0.0
        for ph, T, m in _torus_draws(cfg, rng, draws):
            gens = normalized_generators(m, ph, T)
            worst = max(worst, sphere_residual(gens, nodes=nodes))
        return worst

    def trace(rng):
        T = elliptic_triple_from_tau_eta(1.2j, 0.3)
        one = element_one(T.eta, 0.5)
        V3 = element_V(T.eta, 0.5)
        V3 = V3 * V3 * V3
        return max(abs(trace_chi(one, nodes) - 1), abs(trace_chi(V3, nodes)))

    def equivalence(rng):
        from .nctorus import equivalence_residual
        worst = 0.0
        for _, T, m in _torus_draws(cfg, rng, 3):
            worst = max(worst, equivalence_residual(m, T, nodes=nodes))
        return worst

    return [
        _Check("generator-relations", "sklyaprep", 1e-9, relations),
        _Check("generator-selfadjointness", "sktonct0", 1e-9, selfadjoint),
        _Check("casimir-values", "casimir", 1e-9, casimir),
        _Check("sphere-normalization", "rhotilde", 1e-9, sphere),
        _Check("trace-functional", "crossrule", 1e-12, trace),
        _Check("generator-equivalence", "simplerhofinal", 1e-9, equivalence),
    ]


def _pairing_checks(cfg: RunConfig) -> list[_Check]:
    nodes = cfg.u_nodes
    pairs = ((1.2j, 0.3), (1.0j, 0.22), (1.5j, 0.41))

    def density(rng):
        worst = 0.0
        for tau, eta in pairs:
            T = elliptic_triple_from_tau_eta(tau, eta)
            for frac in np.linspace(0.1, 0.9, 10):
                m = float(frac * tau.imag)
                ratio = pairing_density(m, None, T, nodes) / g_closed(m, T)
                worst = max(worst, abs(ratio - 1))
        return worst

    def oddness(rng):
        T = elliptic_triple_from_tau_eta(1.2j, 0.3)
        worst = 0.0
        for m in (0.25, 0.5, 0.8):
            D = pairing_density(m, None, T, nodes)
            worst = max(worst,
                        abs(pairing_density(-m, None, T, nodes) + D) / abs(D))
        return worst

    def cyclicity(rng):
        T = elliptic_triple_from_tau_eta(1.2j, 0.3)
        m = 0.5
        from .nctorus import make_generator
        cyc = chern_cycle(None, "sigma", T)
        legs = [make_generator(mu, m, T) for mu in range(4)]
        deltas = generator_deltas(m, T, legs)
        ctx = eval_grid(nodes, m)
        base = cycle_pairing(cyc, legs, deltas, ctx)
        rot = ChernCycle(tuple((c, (t[3], t[0], t[1], t[2]))
                               for c, t in cyc.terms), cyc.tag)
        rotated = cycle_pairing(rot, legs, deltas, ctx)
        return abs(rotated + base) / abs(base)

    def volume(rng):
        ph = phi_point(*_DESC)
        T = elliptic_triple(ph)
        Om = period_Omega(ph, nodes=cfg.quadrature_nodes).Omega
        return max(vol_residual(float(f * T.M.tau.imag), ph, T, Omega=Om,
                                nodes=nodes)
                   for f in np.linspace(0.1, 0.9, 10))

    def volume_integral(rng):
        ph = phi_point(*_DESC)
        return vol_integral_residual(ph, elliptic_triple(ph), nodes=nodes)

    def volume_period(rng):
        worst = 0.0
        for raw in (_DESC, _ASC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            jd = period_Omega(ph, nodes=cfg.quadrature_nodes)
            closed = omega_closed_form(T, jd.k_index)
            worst = max(worst, abs(jd.Omega - closed) / abs(closed))
        return worst

    def slope_derivative(rng):
        M = modular_param(1.2j, cfg.eps)
        worst = 0.0
        for _ in range(5):
            b1 = complex(rng.uniform(0.3, 2.0), rng.uniform(-0.5, 0.5))
            b2 = complex(rng.uniform(0.3, 2.0), rng.uniform(-0.5, 0.5))
            u = complex(rng.uniform(0.05, 0.4), rng.uniform(-0.2, 0.2))
            worst = max(worst, derivative_lemma_residual(M, b1, b2, u))
        return worst

    def slope_routes(rng):
        worst = 0.0
        for raw in (_DESC, _ASC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            for frac in (0.22, 0.61):
                m = float(frac * T.M.tau.imag)
                sym = dR_dm(ph, m, T, "symbolic")
                pb = dR_dm(ph, m, T, "pullback")
                fd = dR_dm(ph, m, T, "fd")
                scale = max(abs(sym), 1e-12)
                worst = max(worst, abs(sym - pb) / scale,
                            abs(sym - fd) / scale)
        return worst

    def ratios(rng):
        worst = 0.0
        for raw in (_ASC, _DESC):
            ph = phi_point(*raw)
            T = elliptic_triple(ph)
            for _ in range(10):
                z = complex(rng.uniform(0.05, 0.95),
                            rng.uniform(-0.2, 0.2))
                worst = max(worst, ratio_identity_residual(psi(z, T), ph))
        return worst

    def centrality(rng):
        ph = phi_point(*_ASC)
        T = elliptic_triple(ph)
        s = trig_invariants(ph).s
        forms = [q_x(ph), q_p(ph)] + [q_m(k, ph) for k in (1, 2, 3)]
        worst = 0.0
        for _ in range(10):
            z1 = complex(rng.uniform(0.0, 1.0), rng.uniform(-0.2, 0.2))
            z2 = complex(rng.uniform(0.0, 1.0), rng.uniform(-0.2, 0.2))
            Z, Zp = psi(z1, T), psi(z2, T)
            for f in forms:
                worst = max(worst, centrality_residual(f, s, Z, Zp))
        return worst

    def invariance(rng):
        ph = phi_point(*_ASC)
        T = elliptic_triple(ph)
        worst = 0.0
        for _ in range(6):
            z = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
            zp = complex(rng.uniform(0, 1), rng.uniform(-0.1, 0.1))
            worst = max(worst, ratio_sigma_invariance(ph, T, z, zp))
        return worst

    def rank(rng):
        return float(abs(central_form_rank(phi_point(*_ASC)) - 2))

    return [
        _Check("density-closed-form", "maincomp", 1e-7, density),
        _Check("density-oddness", "maincomp", 1e-8, oddness),
        _Check("cocycle-cyclicity", "rhoch", 1e-9, cyclicity),
        _Check("volume-pointwise", "vol", 1e-6, volume),
        _Check("volume-integral", "vol", 1e-6, volume_integral),
        _Check("volume-period", "period", 1e-10, volume_period),
        _Check("slope-derivative", "derivative", 1e-10, slope_derivative),
        _Check("slope-routes", "dR", 1e-8, slope_routes),
        _Check("ratio-identities", "rat1", 1e-10, ratios),
        _Check("central-forms", "defcentral", 1e-10, centrality),
        _Check("ratio-step-invariance", "vol1", 1e-9, invariance),
        _Check("central-form-rank", "vol1", 0.5, rank),
    ]


_BUILDERS = {
    "theta": _theta_checks,
    "minors": _minors_checks,
    "variety": _variety_checks,
    "elliptic": _elliptic_checks,
    "torus": _torus_checks,
    "pairing": _pairing_checks,
}


def suite_names() -> tuple[str, ...]:
    return SUITES + ("all",)


def run_suite(name: str, cfg: RunConfig | None = None,
              max_workers: int | None = None) -> VerificationReport:
    """Run one named suite (or 'all') and assemble its report.

    Checks execute on a thread pool; results are assembled in the fixed
    build order, so output is independent of scheduling.
    """
    cfg = cfg or RunConfig()
    if name == "all":
        checks = [c for s in SUITES for c in _BUILDERS[s](cfg)]
    elif name in _BUILDERS:
        checks = _BUILDERS[name](cfg)
    else:
        raise UsageError(
            f"unknown suite {name!r}; expected one of {', '.join(suite_names())}")
    if max_workers is None:
        max_workers = min(8, os.cpu_count() or 1)
    start = time.monotonic()

    def run_one(args):
        idx, check = args
        try:
            return float(check.fn(_rng(cfg, idx)))
        except Exception:
            return math.inf

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        residuals = list(pool.map(run_one, enumerate(checks)))
    wall = time.monotonic() - start
    results = tuple(
        CheckResult(c.id, c.ref, r, c.tol)
        for c, r in zip(checks, residuals)
    )
    return VerificationReport(suite=name, checks=results, wall_time=wall)


__all__ = [
    "CheckResult",
    "VerificationReport",
    "SUITES",
    "CASE_POINTS",
    "suite_names",
    "run_suite",
]
