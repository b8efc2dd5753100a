"""Finite V-Laurent elements over the smooth rotation torus and the
spherical generator images built from theta coefficients.

An element is a finite sum f_n V^n whose coefficients are closed-form
expressions in theta values; conjugating by V translates the argument by
the step eta, so products need coefficients at arbitrary shifted points.
Expressions are kept symbolic (sums, products, quotients, shifts of theta
atoms) so that the u- and m-derivative channels are exact, not numerical.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, RegimeError, UsageError
from .moduli import PhiPoint, scale_factors, trig_invariants
from .theta import ModularParam, theta
from .elliptic import EllipticTriple, coupling_J, elliptic_triple, sklyanin_j

__all__ = [
    "CoeffFn",
    "NCTElement",
    "GeneratorSet",
    "EvalGrid",
    "eval_grid",
    "const_fn",
    "theta_fn",
    "conjugate_fn",
    "coeff_d",
    "coeff_L",
    "coeff_Lbar",
    "element_const",
    "element_one",
    "element_V",
    "element_Vstar",
    "element_W",
    "element_Wprime",
    "element_sup",
    "trace_chi",
    "derivation",
    "element_dm",
    "make_generator",
    "generator_dm",
    "simplified_generator",
    "equivalence_residual",
    "casimir_values",
    "casimir_residuals",
    "relation_residuals",
    "normalized_generators",
    "sphere_residual",
    "central_quadratic_residuals",
    "nu_value",
    "q_bilinear",
    "random_element",
    "DEGREE_CAP",
    "TORUS_NODES",
]

DEGREE_CAP = 16
TORUS_NODES = 256

EPSILON = (1, 1, 1, -1)


# ---------------------------------------------------------------------------
# coefficient expressions


class EvalGrid:
    """Evaluation context: sample points, the m value, and a value cache.

    Coefficient trees are immutable, so values are memoized per (node,
    accumulated shift); products of elements re-visit the same shifted
    subtrees many times and the cache collapses that cost.
    """

    def __init__(self, u, m: float = 0.0):
        self.u = np.asarray(u, dtype=complex)
        self.m = m
        self.cache: dict = {}


def eval_grid(nodes: int = TORUS_NODES, m: float = 0.0) -> EvalGrid:
    """Uniform periodic grid on [0, 1); the mean is the trapezoid rule."""
    if nodes < 16:
        raise ConfigurationError("need at least 16 sample nodes")
    return EvalGrid(np.arange(nodes) / nodes, m)


class CoeffFn:
    """A coefficient function with exact u- and m-derivative channels."""

    def values(self, ctx: EvalGrid, shift: complex = 0j):
        # the node itself keys the cache; identity hashing plus the strong
        # reference it creates keeps freed-and-reused ids from aliasing
        key = (self, complex(shift))
        out = ctx.cache.get(key)
        if out is None:
            out = self._values(ctx, shift)
            ctx.cache[key] = out
        return out

    def __call__(self, u, m: float = 0.0):
        return self.values(EvalGrid(u, m))

    def _values(self, ctx, shift):
        raise NotImplementedError

    def d_du(self) -> "CoeffFn":
        raise NotImplementedError

    def d_dm(self) -> "CoeffFn":
        raise NotImplementedError

    def conj_fn(self) -> "CoeffFn":
        raise NotImplementedError

    def shifted(self, delta: complex) -> "CoeffFn":
        if delta == 0:
            return self
        return _Shift(self, delta)

    def __add__(self, other):
        return _Sum((self, _as_fn(other)))

    def __radd__(self, other):
        return _Sum((_as_fn(other), self))

    def __mul__(self, other):
        return _Prod((self, _as_fn(other)))

    def __rmul__(self, other):
        return _Prod((_as_fn(other), self))

    def __sub__(self, other):
        return _Sum((self, _Scale(-1, _as_fn(other))))

    def __neg__(self):
        return _Scale(-1, self)

    def __truediv__(self, other):
        return _Quot(self, _as_fn(other))

    def __rtruediv__(self, other):
        return _Quot(_as_fn(other), self)


def _as_fn(v) -> CoeffFn:
    if isinstance(v, CoeffFn):
        return v
    return _Const(complex(v))


class _Const(CoeffFn):
    def __init__(self, c: complex):
        self.c = complex(c)

    def _values(self, ctx, shift):
        return np.full(ctx.u.shape, self.c)

    def d_du(self):
        return _Const(0)

    def d_dm(self):
        return _Const(0)

    def conj_fn(self):
        return _Const(self.c.conjugate())


class _ThetaAtom(CoeffFn):
    """theta_j^(order)(au*u + am*m + c0) for a fixed modular parameter."""

    def __init__(self, j: int, M: ModularParam, au: complex, am: complex,
                 c0: complex, order: int = 0):
        self.j = j
        self.M = M
        self.au = complex(au)
        self.am = complex(am)
        self.c0 = complex(c0)
        self.order = order

    def _values(self, ctx, shift):
        arg = self.au * (ctx.u + shift) + self.am * ctx.m + self.c0
        return theta(self.j, arg, self.M, order=self.order)

    def d_du(self):
        return _Scale(self.au, _ThetaAtom(
            self.j, self.M, self.au, self.am, self.c0, self.order + 1))

    def d_dm(self):
        return _Scale(self.am, _ThetaAtom(
            self.j, self.M, self.au, self.am, self.c0, self.order + 1))

    def conj_fn(self):
        # theta_j has a real q-series only for purely imaginary modulus
        if abs(self.M.tau.real) > 1e-12:
            raise RegimeError("conjugation needs a purely imaginary modulus")
        return _ThetaAtom(self.j, self.M, self.au.conjugate(),
                          self.am.conjugate(), self.c0.conjugate(), self.order)


class _Sum(CoeffFn):
    def __init__(self, parts):
        self.parts = tuple(parts)

    def _values(self, ctx, shift):
        out = self.parts[0].values(ctx, shift).copy()
        for p in self.parts[1:]:
            out = out + p.values(ctx, shift)
        return out

    def d_du(self):
        return _Sum(tuple(p.d_du() for p in self.parts))

    def d_dm(self):
        return _Sum(tuple(p.d_dm() for p in self.parts))

    def conj_fn(self):
        return _Sum(tuple(p.conj_fn() for p in self.parts))


class _Prod(CoeffFn):
    def __init__(self, parts):
        self.parts = tuple(parts)

    def _values(self, ctx, shift):
        out = self.parts[0].values(ctx, shift).copy()
        for p in self.parts[1:]:
            out = out * p.values(ctx, shift)
        return out

    def d_du(self):
        return self._leibniz("d_du")

    def d_dm(self):
        return self._leibniz("d_dm")

    def _leibniz(self, channel):
        terms = []
        for i in range(len(self.parts)):
            factors = list(self.parts)
            factors[i] = getattr(factors[i], channel)()
            terms.append(_Prod(tuple(factors)))
        return _Sum(tuple(terms))

    def conj_fn(self):
        return _Prod(tuple(p.conj_fn() for p in self.parts))


class _Quot(CoeffFn):
    def __init__(self, num, den):
        self.num = num
        self.den = den

    def _values(self, ctx, shift):
        return self.num.values(ctx, shift) / self.den.values(ctx, shift)

    def d_du(self):
        return self._rule("d_du")

    def d_dm(self):
        return self._rule("d_dm")

    def _rule(self, channel):
        dn = getattr(self.num, channel)()
        dd = getattr(self.den, channel)()
        top = _Sum((_Prod((dn, self.den)), _Scale(-1, _Prod((self.num, dd)))))
        return _Quot(top, _Prod((self.den, self.den)))

    def conj_fn(self):
        return _Quot(self.num.conj_fn(), self.den.conj_fn())


class _Scale(CoeffFn):
    def __init__(self, c: complex, f: CoeffFn):
        self.c = complex(c)
        self.f = f

    def _values(self, ctx, shift):
        return self.c * self.f.values(ctx, shift)

    def d_du(self):
        return _Scale(self.c, self.f.d_du())

    def d_dm(self):
        return _Scale(self.c, self.f.d_dm())

    def conj_fn(self):
        return _Scale(self.c.conjugate(), self.f.conj_fn())


class _Shift(CoeffFn):
    def __init__(self, f: CoeffFn, delta: complex):
        self.f = f
        self.delta = complex(delta)

    def _values(self, ctx, shift):
        return self.f.values(ctx, shift + self.delta)

    def d_du(self):
        return _Shift(self.f.d_du(), self.delta)

    def d_dm(self):
        return _Shift(self.f.d_dm(), self.delta)

    def conj_fn(self):
        return _Shift(self.f.conj_fn(), self.delta.conjugate())

    def shifted(self, delta):
        if delta + self.delta == 0:
            return self.f
        return _Shift(self.f, self.delta + delta)


def const_fn(c: complex) -> CoeffFn:
    return _Const(c)


def theta_fn(j: int, M: ModularParam, au: complex = 1.0, am: complex = 0.0,
             c0: complex = 0.0, order: int = 0) -> CoeffFn:
    """The atom theta_j^(order)(au*u + am*m + c0)."""
    if j not in (1, 2, 3, 4):
        raise UsageError("theta index must be 1..4")
    return _ThetaAtom(j, M, au, am, c0, order)


def conjugate_fn(f: CoeffFn) -> CoeffFn:
    """The function u -> conj(f(conj(u))); pointwise conjugate on real u."""
    return f.conj_fn()


# ---------------------------------------------------------------------------
# Laurent elements


@dataclass(frozen=True)
class NCTElement:
    """A finite sum f_n V^n; V conjugation translates arguments by step."""

    coeffs: dict
    step: complex
    m: float = 0.0
    cap: int = DEGREE_CAP

    def degrees(self) -> list[int]:
        return sorted(self.coeffs)

    def coeff(self, n: int) -> CoeffFn:
        return self.coeffs.get(n, _Const(0))

    def _check_mate(self, other: "NCTElement"):
        if other.step != self.step:
            raise UsageError("elements live over different translation steps")
        if other.m != self.m:
            raise UsageError("elements carry different values of m")

    def __add__(self, other):
        if not isinstance(other, NCTElement):
            other = element_const(complex(other), self.step, self.m, self.cap)
        self._check_mate(other)
        out = dict(self.coeffs)
        for n, f in other.coeffs.items():
            out[n] = _Sum((out[n], f)) if n in out else f
        return NCTElement(out, self.step, self.m, max(self.cap, other.cap))

    def __radd__(self, other):
        return self.__add__(other)

    def __sub__(self, other):
        if not isinstance(other, NCTElement):
            other = element_const(complex(other), self.step, self.m, self.cap)
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if not isinstance(other, NCTElement):
            c = complex(other)
            return NCTElement(
                {n: _Scale(c, f) for n, f in self.coeffs.items()},
                self.step, self.m, self.cap)
        self._check_mate(other)
        cap = max(self.cap, other.cap)
        out: dict = {}
        for na, fa in self.coeffs.items():
            for nb, fb in other.coeffs.items():
                n = na + nb
                if abs(n) > cap:
                    raise ConfigurationError(
                        f"degree {n} exceeds the capacity bound {cap}")
                term = _Prod((fa, fb.shifted(na * self.step)))
                out[n] = _Sum((out[n], term)) if n in out else term
        return NCTElement(out, self.step, self.m, cap)

    def __rmul__(self, other):
        # scalars commute; elements never reach here
        return self.__mul__(other)

    def adjoint(self) -> "NCTElement":
        """(f V^n)* = conj(f)(u - n step) V^-n."""
        out = {}
        for n, f in self.coeffs.items():
            out[-n] = f.conj_fn().shifted(-n * self.step)
        return NCTElement(out, self.step, self.m, self.cap)


def element_const(c: complex, step: complex, m: float = 0.0,
                  cap: int = DEGREE_CAP) -> NCTElement:
    return NCTElement({0: _Const(c)}, step, m, cap)


def element_one(step: complex, m: float = 0.0, cap: int = DEGREE_CAP) -> NCTElement:
    return element_const(1.0, step, m, cap)


def element_V(step: complex, m: float = 0.0, cap: int = DEGREE_CAP) -> NCTElement:
    return NCTElement({1: _Const(1)}, step, m, cap)


def element_Vstar(step: complex, m: float = 0.0, cap: int = DEGREE_CAP) -> NCTElement:
    return NCTElement({-1: _Const(1)}, step, m, cap)


def element_sup(a: NCTElement, ctx: EvalGrid | None = None,
                nodes: int = TORUS_NODES) -> float:
    """Largest coefficient magnitude over the sample grid and all degrees."""
    if ctx is None:
        ctx = eval_grid(nodes, a.m)
    best = 0.0
    for f in a.coeffs.values():
        best = max(best, float(np.max(np.abs(f.values(ctx)))))
    return best


def trace_chi(a: NCTElement, nodes: int = TORUS_NODES,
              ctx: EvalGrid | None = None) -> complex:
    """The canonical trace: the mean of the degree-0 coefficient over u."""
    if 0 not in a.coeffs:
        return 0j
    if ctx is None:
        ctx = eval_grid(nodes, a.m)
    return complex(np.mean(a.coeffs[0].values(ctx)))


def derivation(k: int, a: NCTElement) -> NCTElement:
    """The basic derivations: k=2 is d/du, k=3 multiplies f_n by 2 pi i n."""
    if k == 2:
        return NCTElement({n: f.d_du() for n, f in a.coeffs.items()},
                          a.step, a.m, a.cap)
    if k == 3:
        return NCTElement(
            {n: _Scale(2j * math.pi * n, f) for n, f in a.coeffs.items()},
            a.step, a.m, a.cap)
    raise UsageError(
        "derivation index must be 2 or 3; the m-derivative of a generator "
        "is provided by generator_dm")


def element_dm(a: NCTElement) -> NCTElement:
    """The m-derivative channel, exact on every theta expression."""
    return NCTElement({n: f.d_dm() for n, f in a.coeffs.items()},
                      a.step, a.m, a.cap)


# ---------------------------------------------------------------------------
# the generator images


def coeff_d(M: ModularParam, sign: int = 1, offset: complex = 0.0) -> CoeffFn:
    """c*d(sign*u + offset) = (t3 t4 + i t1 t2)(sign*u + offset), divided by
    the principal root c of theta_3(0)^2 theta_4(0); the branch cancels in
    the products d(u) d(-u +- eta) that the generators use."""
    c2 = theta(3, 0.0, M) ** 2 * theta(4, 0.0, M)
    c = cmath.sqrt(c2)
    prod34 = _Prod((_ThetaAtom(3, M, sign, 0, offset),
                    _ThetaAtom(4, M, sign, 0, offset)))
    prod12 = _Prod((_ThetaAtom(1, M, sign, 0, offset),
                    _ThetaAtom(2, M, sign, 0, offset)))
    return _Scale(1 / c, _Sum((prod34, _Scale(1j, prod12))))


def coeff_L(T: EllipticTriple) -> CoeffFn:
    """L(u) = i t1(eta) t2(2u - eta) + t3(eta) t4(2u - eta)."""
    M, eta = T.M, T.eta
    return _Sum((
        _Scale(1j * theta(1, eta, M), _ThetaAtom(2, M, 2, 0, -eta)),
        _Scale(theta(3, eta, M), _ThetaAtom(4, M, 2, 0, -eta)),
    ))


def coeff_Lbar(T: EllipticTriple) -> CoeffFn:
    """The conjugate function of L; on real u and real eta it is conj(L(u))."""
    return conjugate_fn(coeff_L(T))


def _psi_fn(mu: int, T: EllipticTriple, am: complex) -> CoeffFn:
    """psi_mu(u + am*m/(2i) ...): theta_{mu+1}(2u + am*m - eta) normalized."""
    M, eta = T.M, T.eta
    return _Scale(1 / theta(mu + 1, eta, M),
                  _ThetaAtom(mu + 1, M, 2, am, -eta))


_NUMERATOR_INDEX = (3, 4, 1, 2)


def make_generator(mu: int, m: float, T: EllipticTriple,
                   cap: int = DEGREE_CAP) -> NCTElement:
    """The image of the mu-th quadratic-algebra generator, supported on V
    and V*; coefficients are theta(2u +- (eta + im)) over d(u) d(-u -+ eta).
    """
    if mu not in (0, 1, 2, 3):
        raise UsageError("generator index must be 0..3")
    M, eta = T.M, T.eta
    j = _NUMERATOR_INDEX[mu]
    pref = (theta(1, eta, M), theta(2, eta, M),
            theta(3, eta, M), theta(4, eta, M))[mu]
    sign_plus = (1, -1j, 1, -1)[mu]
    sign_minus = (1, 1j, 1, -1)[mu]
    den_plus = _Prod((coeff_d(M), coeff_d(M, -1, -eta)))
    den_minus = _Prod((coeff_d(M), coeff_d(M, -1, eta)))
    num_plus = _ThetaAtom(j, M, 2, 1j, eta)
    num_minus = _ThetaAtom(j, M, 2, -1j, -eta)
    fplus = _Scale(sign_plus * pref, _Quot(num_plus, den_plus))
    fminus = _Scale(sign_minus * pref, _Quot(num_minus, den_minus))
    return NCTElement({1: fplus, -1: fminus}, eta, m, cap)


def generator_dm(mu: int, m: float, T: EllipticTriple,
                 cap: int = DEGREE_CAP) -> NCTElement:
    """Exact m-derivative of a generator; only the numerators carry m."""
    return element_dm(make_generator(mu, m, T, cap))


def element_W(m: float, T: EllipticTriple, cap: int = DEGREE_CAP) -> NCTElement:
    """W = L(u)^{-1} V*."""
    return NCTElement({-1: _Quot(_Const(1), coeff_L(T))}, T.eta, m, cap)


def element_Wprime(m: float, T: EllipticTriple, cap: int = DEGREE_CAP) -> NCTElement:
    """W' = V Lbar(u)^{-1}; the coefficient sits at degree +1, shifted."""
    inv = _Quot(_Const(1), coeff_Lbar(T))
    return NCTElement({1: inv.shifted(T.eta)}, T.eta, m, cap)


def simplified_generator(mu: int, m: float, T: EllipticTriple,
                         cap: int = DEGREE_CAP) -> NCTElement:
    """The Y-form generator psi_mu(u - im/2)/L(u) V* + e_mu V psi_mu(u + im/2)/Lbar(u)."""
    if mu not in (0, 1, 2, 3):
        raise UsageError("generator index must be 0..3")
    f_minus = _Quot(_psi_fn(mu, T, -1j), coeff_L(T))
    f_plus = _Quot(_psi_fn(mu, T, 1j), coeff_Lbar(T))
    return NCTElement(
        {-1: f_minus, 1: _Scale(EPSILON[mu], f_plus.shifted(T.eta))},
        T.eta, m, cap)


_GAMMA_DICT = ((0, 2), (1, 3), (2, 0), (3, 1))


def equivalence_residual(m: float, T: EllipticTriple,
                         nodes: int = TORUS_NODES) -> float:
    """Sup distance between the theta-built generators and the Y-route
    composite S0 = d Y2, S1 = i Y3, S2 = d Y0, S3 = -Y1, scaled by gamma."""
    M, eta = T.M, T.eta
    gamma = theta(2, eta, M) * theta(4, eta, M) * theta(3, 0.0, M)
    d_const = (theta(1, eta, M) * theta(3, eta, M)
               / (theta(2, eta, M) * theta(4, eta, M)))
    factors = (gamma * d_const, 1j * gamma, gamma * d_const, -gamma)
    ctx = eval_grid(nodes, m)
    worst = 0.0
    scale = 0.0
    for mu in range(4):
        s_elem = make_generator(mu, m, T)
        y_elem = simplified_generator(_GAMMA_DICT[mu][1], m, T)
        cand = factors[mu] * y_elem
        scale = max(scale, element_sup(s_elem, ctx))
        diff = s_elem - cand
        worst = max(worst, element_sup(diff, ctx))
    return worst / max(scale, 1e-300)


# ---------------------------------------------------------------------------
# Casimirs, relations, normalization


def casimir_values(m: float, T: EllipticTriple) -> tuple[complex, complex]:
    """C1 = 4 theta_2(im)^2 and C2 = 4 theta_2(eta+im) theta_2(eta-im)."""
    M, eta = T.M, T.eta
    c1 = 4 * theta(2, 1j * m, M) ** 2
    c2 = 4 * theta(2, eta + 1j * m, M) * theta(2, eta - 1j * m, M)
    return complex(c1), complex(c2)


def casimir_residuals(m: float, T: EllipticTriple,
                      phi: PhiPoint | None = None,
                      nodes: int = TORUS_NODES) -> tuple[float, float]:
    """Residuals of sum S_mu^2 = C1 and sum j_k S_k^2 = C2 over the grid."""
    S = [make_generator(mu, m, T) for mu in range(4)]
    c1, c2 = casimir_values(m, T)
    k1 = S[0] * S[0] + S[1] * S[1] + S[2] * S[2] + S[3] * S[3]
    k2 = sum((sklyanin_j(T, k) * (S[k] * S[k]) for k in (1, 2, 3)),
             start=element_const(0, T.eta, m))
    ctx = eval_grid(nodes, m)
    r1 = element_sup(k1 - c1, ctx)
    r2 = element_sup(k2 - c2, ctx)
    return r1, r2


def relation_residuals(S, J, ctx: EvalGrid) -> list[float]:
    """The six quadratic-relation residuals for generator images S with
    couplings J = (J_23, J_31, J_12): for each cyclic (k, l, m),
    [S_l, S_m] - i [S_0, S_k]_+ and [S_0, S_k] - i J_lm [S_l, S_m]_+."""
    out = []
    for k, l, mm in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        comm = S[l] * S[mm] - S[mm] * S[l]
        anti = S[0] * S[k] + S[k] * S[0]
        out.append(element_sup(comm - 1j * anti, ctx))
    for idx, (k, l, mm) in enumerate(((1, 2, 3), (2, 3, 1), (3, 1, 2))):
        comm = S[0] * S[k] - S[k] * S[0]
        anti = S[l] * S[mm] + S[mm] * S[l]
        out.append(element_sup(comm - 1j * J[idx] * anti, ctx))
    return out


@dataclass(frozen=True)
class GeneratorSet:
    """The four generator images with their scalars at a fixed m."""

    m: float
    T: EllipticTriple
    phi: PhiPoint | None
    S: tuple
    S_norm: tuple
    Y: tuple
    gamma: complex
    nu_m: complex
    sigma_m: complex
    C1: complex
    C2: complex
    epsilon: tuple = EPSILON


def nu_value(m: float, T: EllipticTriple) -> complex:
    """nu(m) = 2 theta_3(im)^2 / (theta_3(0)^2 theta_3(eta)^2 theta_4(eta)^2)."""
    M, eta = T.M, T.eta
    return complex(2 * theta(3, 1j * m, M) ** 2
                   / (theta(3, 0.0, M) ** 2 * theta(3, eta, M) ** 2
                      * theta(4, eta, M) ** 2))


def q_bilinear(T: EllipticTriple, Z, Zp) -> complex:
    """Q(Z, Z') = J_23 (Z0 Z0' + Z1 Z1') + Z2 Z2' - Z3 Z3'."""
    j23 = coupling_J(T)[0]
    Z = np.asarray(Z, dtype=complex)
    Zp = np.asarray(Zp, dtype=complex)
    return complex(j23 * (Z[0] * Zp[0] + Z[1] * Zp[1])
                   + Z[2] * Zp[2] - Z[3] * Zp[3])


def normalized_generators(m: float, phi: PhiPoint,
                          T: EllipticTriple | None = None,
                          cap: int = DEGREE_CAP) -> GeneratorSet:
    """Build the generator images at (phi, m) and the unit-sphere scaling
    sigma(m) = (prod sin phi_j)^{1/2} (C1 - lam C2)^{-1/2}."""
    if T is None:
        T = elliptic_triple(phi)
    c1, c2 = casimir_values(m, T)
    normalizer = c1 - T.lam * c2
    if abs(normalizer.imag) > 1e-8 * abs(normalizer) or normalizer.real <= 0:
        raise RegimeError(
            "C1 - lam C2 must be a positive real to normalize the sphere")
    prod_sin = math.prod(math.sin(p) for p in phi)
    if prod_sin <= 0:
        raise RegimeError("the scaling needs all sin(phi_j) positive")
    sigma_m = math.sqrt(prod_sin) / cmath.sqrt(normalizer)
    S = tuple(make_generator(mu, m, T, cap) for mu in range(4))
    Y = tuple(simplified_generator(mu, m, T, cap) for mu in range(4))
    M, eta = T.M, T.eta
    gamma = theta(2, eta, M) * theta(4, eta, M) * theta(3, 0.0, M)
    return GeneratorSet(
        m=m, T=T, phi=phi, S=S,
        S_norm=tuple(sigma_m * s for s in S),
        Y=Y, gamma=complex(gamma), nu_m=nu_value(m, T),
        sigma_m=complex(sigma_m), C1=c1, C2=c2)


def sphere_residual(gens: GeneratorSet, nodes: int = TORUS_NODES) -> float:
    """Residual of sum (S~_mu / lambda_mu)^2 = 1 for the normalized images."""
    if gens.phi is None:
        raise UsageError("the sphere residual needs the phi scaling factors")
    lam = scale_factors(gens.phi)
    acc = None
    for mu in range(4):
        x = (1 / lam[mu]) * gens.S_norm[mu]
        sq = x * x
        acc = sq if acc is None else acc + sq
    ctx = eval_grid(nodes, gens.m)
    return element_sup(acc - 1.0, ctx)


def central_quadratic_residuals(gens: GeneratorSet,
                                nodes: int = TORUS_NODES) -> tuple[float, float]:
    """Residuals of the images of the two central forms in x_mu = S_mu/lam_mu:
    the sphere form lands on (C1 - lam C2)/prod sin phi_j, the companion
    diagonal form on lam C2; both are scalar multiples of the identity."""
    from .variety import q_sphere, q_two

    if gens.phi is None:
        raise UsageError("the central form check needs the phi data")
    lam_mu = scale_factors(gens.phi)
    prod_sin = math.prod(math.sin(p) for p in gens.phi)
    targets = ((q_sphere(), (gens.C1 - gens.T.lam * gens.C2) / prod_sin),
               (q_two(gens.phi), gens.T.lam * gens.C2))
    ctx = eval_grid(nodes, gens.m)
    out = []
    for form, value in targets:
        diag = np.diag(form.matrix)
        acc = element_const(0, gens.T.eta, gens.m)
        for mu in range(4):
            if diag[mu] == 0:
                continue
            x = (1 / lam_mu[mu]) * gens.S[mu]
            acc = acc + complex(diag[mu]) * (x * x)
        out.append(element_sup(acc - value, ctx))
    return tuple(out)


# ---------------------------------------------------------------------------
# random elements for property tests


def random_element(rng, T: EllipticTriple, degrees, m: float = 0.0,
                   cap: int = DEGREE_CAP) -> NCTElement:
    """A small element with smooth nonvanishing coefficients, for property
    tests; numerators combine theta_3/theta_4 atoms, the denominator is a
    real-axis-zero-free theta_3 translate."""
    M = T.M
    coeffs = {}
    for n in degrees:
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2)
        r1, r2, r3 = rng.uniform(0, 1, size=3)
        num = _Sum((
            _Scale(a, _ThetaAtom(3, M, 1, 0, r1)),
            _Scale(b, _ThetaAtom(4, M, 2, 0, r2)),
        ))
        den = _ThetaAtom(3, M, 1, 0, r3)
        coeffs[int(n)] = _Quot(num, den)
    return NCTElement(coeffs, T.eta, m, cap)
