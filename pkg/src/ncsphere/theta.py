"""Jacobi theta functions, the modular lambda function and its inverse.

Conventions.  The nome is q = exp(i*pi*tau) with Im(tau) > 0, so |q| < 1.
The four functions are

    theta1(z) = -i * sum_n (-1)^n q^((n+1/2)^2) e^((2n+1)*pi*i*z)
    theta2(z) =      sum_n        q^((n+1/2)^2) e^((2n+1)*pi*i*z)
    theta3(z) =      sum_n        q^(n^2)       e^(2*pi*i*n*z)
    theta4(z) =      sum_n (-1)^n q^(n^2)       e^(2*pi*i*n*z)

equivalently theta2(z) = theta1(z + 1/2) and theta4(z) = theta3(z + 1/2),
with theta1 fixed by i*theta1(z) = q^(1/4) e^(pi*i*z) theta3(z + (1+tau)/2).
All four are entire; theta1 is odd, the others even; theta3 and theta4 have
period 1, theta1 and theta2 antiperiod 1.

Evaluation truncates the series at a cutoff chosen so the dropped tail is
below the configured accuracy even for complex z (the e^(2*pi*n*|Im z|)
growth is folded into the cutoff).  z may be a scalar or an ndarray.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DegenerateModulusError, NumericError, PoleError

__all__ = [
    "ModularParam",
    "modular_param",
    "theta",
    "theta_dz",
    "theta_ratio_k",
    "lambda_of_tau",
    "tau_of_lambda",
    "p_ratio",
    "theta_relation_residual",
    "half_periods",
    "THETA_RELATIONS",
]

DEFAULT_EPS = 1e-14


@dataclass(frozen=True)
class ModularParam:
    """Modulus tau, nome q = e^(i*pi*tau), series cutoff and target accuracy."""

    tau: complex
    q: complex
    n_trunc: int
    eps: float

    def validate(self) -> None:
        if self.tau.imag <= 0:
            raise ConfigurationError(f"Im(tau) must be positive, got {self.tau}")
        if not (0 < self.eps <= 1e-6):
            raise ConfigurationError(f"eps out of range: {self.eps}")
        if abs(self.q) ** (self.n_trunc**2) >= self.eps:
            raise ConfigurationError(
                f"cutoff inadequate: |q|^(n_trunc^2) = "
                f"{abs(self.q) ** (self.n_trunc ** 2):.3e} >= eps = {self.eps}"
            )


def modular_param(tau: complex, eps: float = DEFAULT_EPS) -> ModularParam:
    """Build a ModularParam with the cutoff n_trunc = ceil(sqrt(ln eps / ln|q|)) + 2."""
    tau = complex(tau)
    if tau.imag <= 0:
        raise ConfigurationError(f"Im(tau) must be positive, got {tau}")
    q = cmath.exp(1j * cmath.pi * tau)
    n_trunc = math.ceil(math.sqrt(math.log(eps) / math.log(abs(q)))) + 2
    M = ModularParam(tau=tau, q=q, n_trunc=n_trunc, eps=eps)
    M.validate()
    return M


def _cutoff(M: ModularParam, im_z_max: float) -> int:
    # Tail bound: |q|^(n^2) e^(2*pi*n*b) < eps once a*n^2 - 2*pi*b*n > ln(1/eps),
    # a = -ln|q|.  Solve the quadratic for n and pad by 2.
    a = -math.log(abs(M.q))
    b = abs(im_z_max)
    ln_inv_eps = -math.log(M.eps)
    n_eff = math.ceil((math.pi * b + math.sqrt((math.pi * b) ** 2 + a * ln_inv_eps)) / a) + 2
    return max(M.n_trunc, n_eff)


def theta(j: int, z, M: ModularParam, order: int = 0):
    """theta_j(z) or its order-th z-derivative (termwise), vectorized over z.

    Returns a scalar for scalar z, an ndarray for array z.
    """
    if j not in (1, 2, 3, 4):
        raise ConfigurationError(f"theta index must be 1..4, got {j}")
    if order < 0:
        raise ConfigurationError(f"derivative order must be >= 0, got {order}")
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    zf = z_arr.reshape(-1)
    b = float(np.max(np.abs(zf.imag))) if zf.size else 0.0
    N = _cutoff(M, b)

    if j in (3, 4):
        n = np.arange(-N, N + 1)
        freq = 2j * np.pi * n
        coef = np.exp(1j * np.pi * M.tau * n**2)
        if j == 4:
            coef = coef * np.where(n % 2 == 0, 1.0, -1.0)
    else:
        n = np.arange(-N, N)
        half = n + 0.5
        freq = 2j * np.pi * half
        coef = np.exp(1j * np.pi * M.tau * half**2)
        if j == 1:
            coef = -1j * coef * np.where(n % 2 == 0, 1.0, -1.0)
    if order:
        coef = coef * freq**order
    vals = np.exp(np.outer(zf, freq)) @ coef
    if scalar:
        return complex(vals[0])
    return vals.reshape(z_arr.shape)


def theta_dz(j: int, z, M: ModularParam):
    """First z-derivative of theta_j."""
    return theta(j, z, M, order=1)


def theta_ratio_k(M: ModularParam) -> complex:
    """k = theta2(0)^2 / theta3(0)^2, so that lambda(tau) = k^2."""
    return theta(2, 0.0, M) ** 2 / theta(3, 0.0, M) ** 2


def lambda_of_tau(M: ModularParam) -> complex:
    """The modular lambda function, lambda(tau) = (theta2(0)/theta3(0))^4."""
    return theta_ratio_k(M) ** 2


def half_periods(M: ModularParam) -> tuple[complex, complex, complex]:
    """The three half-periods (1/2, (1+tau)/2, tau/2) of the lattice Z + tau*Z."""
    return (0.5, (1 + M.tau) / 2, M.tau / 2)


def _agm(a: complex, b: complex, max_iter: int = 64) -> complex:
    # Optimal-branch complex AGM: pick the sign of the geometric mean closest
    # to the arithmetic mean, which keeps the iteration on the principal chain.
    for _ in range(max_iter):
        am = (a + b) / 2
        gm = cmath.sqrt(a * b)
        if abs(am - gm) > abs(am + gm):
            gm = -gm
        a, b = am, gm
        if abs(a - b) < 1e-17 * (abs(a) + 1):
            break
    return (a + b) / 2


def _gamma2_reduce(tau: complex) -> complex:
    # Reduce into the standard level-2 fundamental domain
    # {|Re tau| <= 1, |tau +- 1/2| >= 1/2}; lambda is invariant throughout.
    for _ in range(64):
        re = tau.real
        shift = -2 * round(re / 2)
        if shift:
            tau = tau + shift
        if abs(tau - 0.5) < 0.5 - 1e-15:
            tau = tau / (-2 * tau + 1)
            continue
        if abs(tau + 0.5) < 0.5 - 1e-15:
            tau = tau / (2 * tau + 1)
            continue
        break
    return tau


def tau_of_lambda(lam: complex, eps: float = DEFAULT_EPS) -> ModularParam:
    """Invert the modular lambda function.

    Returns a ModularParam whose tau lies in the level-2 fundamental domain,
    with lambda_of_tau(result) = lam to 1e-12.  Seeded by the AGM relation
    tau = i * AGM(1, sqrt(1-lam)) / AGM(1, sqrt(lam)), polished by damped
    Newton iteration.
    """
    lam = complex(lam)
    if lam == 0 or lam == 1:
        raise DegenerateModulusError(f"lambda at branch point: {lam}")
    tau0 = 1j * _agm(1.0, cmath.sqrt(1 - lam)) / _agm(1.0, cmath.sqrt(lam))
    tau0 = _gamma2_reduce(tau0)

    def f(tau: complex) -> complex:
        return lambda_of_tau(modular_param(tau, eps)) - lam

    tau = tau0
    fval = f(tau)
    for _ in range(50):
        if abs(fval) < 1e-13 * max(1.0, abs(lam)):
            break
        h = 1e-7 * (1 + abs(tau))
        dfdtau = (f(tau + h) - f(tau - h)) / (2 * h)
        if dfdtau == 0:
            raise NumericError(f"lambda inversion: zero derivative at tau={tau}")
        step = -fval / dfdtau
        # Damping: halve until the residual actually decreases.
        for _ in range(30):
            cand = tau + step
            if cand.imag > 0:
                fcand = f(cand)
                if abs(fcand) < abs(fval):
                    tau, fval = cand, fcand
                    break
            step /= 2
        else:
            raise NumericError(
                f"lambda inversion stalled: lam={lam}, tau={tau}, |f|={abs(fval):.3e}"
            )
    else:
        raise NumericError(f"lambda inversion: no convergence for lam={lam}")
    tau = _gamma2_reduce(tau)
    return modular_param(tau, eps)


def p_ratio(z: complex, M: ModularParam) -> complex:
    """k * theta4(z)^2 / theta1(z)^2.

    Normalization-free stand-in for the Weierstrass ratio; equals 1 at z=1/2
    and lambda(tau) at z=(1+tau)/2.
    """
    th1 = theta(1, z, M)
    th4 = theta(4, z, M)
    if abs(th1) < math.sqrt(M.eps) * max(1.0, abs(th4)):
        raise PoleError(f"p_ratio pole: theta1({z}) ~ 0")
    return theta_ratio_k(M) * th4**2 / th1**2


# The sixteen four-point relations.  Each side is a list of signed products;
# a product is four (index, argument-slot) pairs, slots 0..3 meaning
# (a, b, c, d) and slots 4..7 meaning (w, x, y, z) with
# (w, x, y, z) = M.(a, b, c, d), M the half-sum involution below.
_A, _B, _C, _D, _W, _X, _Y, _Z = range(8)

THETA_RELATIONS: dict[int, tuple[list, list]] = {
    1: (
        [(+1, [(2, _A), (2, _B), (2, _C), (2, _D)]), (+1, [(3, _A), (3, _B), (3, _C), (3, _D)])],
        [(+1, [(2, _X), (2, _Y), (2, _Z), (2, _W)]), (+1, [(3, _X), (3, _Y), (3, _Z), (3, _W)])],
    ),
    2: (
        [(+1, [(3, _A), (3, _B), (3, _C), (3, _D)]), (-1, [(2, _A), (2, _B), (2, _C), (2, _D)])],
        [(+1, [(1, _X), (1, _Y), (1, _Z), (1, _W)]), (+1, [(4, _X), (4, _Y), (4, _Z), (4, _W)])],
    ),
    3: (
        [(+1, [(1, _A), (1, _B), (1, _C), (1, _D)]), (+1, [(4, _A), (4, _B), (4, _C), (4, _D)])],
        [(+1, [(3, _W), (3, _X), (3, _Y), (3, _Z)]), (-1, [(2, _W), (2, _X), (2, _Y), (2, _Z)])],
    ),
    4: (
        [(+1, [(4, _A), (4, _B), (4, _C), (4, _D)]), (-1, [(1, _A), (1, _B), (1, _C), (1, _D)])],
        [(+1, [(4, _W), (4, _X), (4, _Y), (4, _Z)]), (-1, [(1, _W), (1, _X), (1, _Y), (1, _Z)])],
    ),
    5: (
        [(+1, [(1, _A), (1, _B), (2, _C), (2, _D)]), (+1, [(3, _C), (3, _D), (4, _A), (4, _B)])],
        [(+1, [(1, _X), (1, _W), (2, _Y), (2, _Z)]), (+1, [(3, _Y), (3, _Z), (4, _X), (4, _W)])],
    ),
    6: (
        [(+1, [(4, _A), (4, _B), (3, _C), (3, _D)]), (-1, [(1, _A), (1, _B), (2, _C), (2, _D)])],
        [(+1, [(1, _Y), (1, _Z), (2, _X), (2, _W)]), (+1, [(3, _X), (3, _W), (4, _Y), (4, _Z)])],
    ),
    7: (
        [(+1, [(1, _A), (1, _B), (3, _C), (3, _D)]), (+1, [(2, _C), (2, _D), (4, _A), (4, _B)])],
        [(+1, [(1, _X), (1, _W), (3, _Y), (3, _Z)]), (+1, [(2, _Y), (2, _Z), (4, _X), (4, _W)])],
    ),
    8: (
        [(+1, [(4, _A), (4, _B), (2, _C), (2, _D)]), (-1, [(1, _A), (1, _B), (3, _C), (3, _D)])],
        [(+1, [(1, _Y), (1, _Z), (3, _X), (3, _W)]), (+1, [(2, _X), (2, _W), (4, _Y), (4, _Z)])],
    ),
    9: (
        [(+1, [(2, _C), (2, _D), (3, _A), (3, _B)]), (+1, [(2, _A), (2, _B), (3, _C), (3, _D)])],
        [(+1, [(2, _X), (2, _W), (3, _Y), (3, _Z)]), (+1, [(2, _Y), (2, _Z), (3, _X), (3, _W)])],
    ),
    10: (
        [(+1, [(3, _A), (3, _B), (2, _C), (2, _D)]), (-1, [(2, _A), (2, _B), (3, _C), (3, _D)])],
        [(+1, [(1, _X), (1, _W), (4, _Y), (4, _Z)]), (+1, [(1, _Y), (1, _Z), (4, _X), (4, _W)])],
    ),
    11: (
        [(+1, [(1, _C), (1, _D), (4, _A), (4, _B)]), (+1, [(1, _A), (1, _B), (4, _C), (4, _D)])],
        [(+1, [(3, _W), (3, _X), (2, _Y), (2, _Z)]), (-1, [(2, _W), (2, _X), (3, _Y), (3, _Z)])],
    ),
    12: (
        [(+1, [(4, _A), (4, _B), (1, _C), (1, _D)]), (-1, [(1, _A), (1, _B), (4, _C), (4, _D)])],
        [(+1, [(4, _W), (4, _X), (1, _Y), (1, _Z)]), (-1, [(1, _W), (1, _X), (4, _Y), (4, _Z)])],
    ),
    13: (
        [(+1, [(2, _C), (2, _D), (3, _A), (3, _B)]), (+1, [(1, _C), (1, _D), (4, _A), (4, _B)])],
        [(+1, [(2, _Y), (2, _Z), (3, _X), (3, _W)]), (+1, [(1, _Y), (1, _Z), (4, _X), (4, _W)])],
    ),
    14: (
        [(+1, [(3, _A), (3, _B), (2, _C), (2, _D)]), (-1, [(4, _A), (4, _B), (1, _C), (1, _D)])],
        [(+1, [(2, _X), (2, _W), (3, _Y), (3, _Z)]), (+1, [(1, _X), (1, _W), (4, _Y), (4, _Z)])],
    ),
    15: (
        [(+1, [(1, _D), (2, _B), (3, _A), (4, _C)]), (+1, [(1, _C), (2, _A), (3, _B), (4, _D)])],
        [(+1, [(1, _W), (4, _X), (2, _Y), (3, _Z)]), (-1, [(4, _W), (1, _X), (3, _Y), (2, _Z)])],
    ),
    16: (
        [(+1, [(3, _A), (2, _B), (4, _C), (1, _D)]), (-1, [(2, _A), (3, _B), (1, _C), (4, _D)])],
        [(+1, [(3, _W), (2, _X), (4, _Y), (1, _Z)]), (-1, [(2, _W), (3, _X), (1, _Y), (4, _Z)])],
    ),
}


def half_sum_transform(a: complex, b: complex, c: complex, d: complex):
    """(w, x, y, z) = M.(a, b, c, d) with the involutive half-sum matrix M."""
    w = (a + b + c + d) / 2
    x = (a + b - c - d) / 2
    y = (a - b + c - d) / 2
    z = (a - b - c + d) / 2
    return w, x, y, z


def theta_relation_residual(
    rel_id: int, a: complex, b: complex, c: complex, d: complex, M: ModularParam
) -> float:
    """|LHS - RHS| of relation rel_id (1..16) at the four arguments."""
    if rel_id not in THETA_RELATIONS:
        raise ConfigurationError(f"relation id must be 1..16, got {rel_id}")
    w, x, y, z = half_sum_transform(a, b, c, d)
    slots = (a, b, c, d, w, x, y, z)
    lhs_terms, rhs_terms = THETA_RELATIONS[rel_id]

    def side(terms) -> complex:
        total = 0j
        for sign, factors in terms:
            prod = complex(sign)
            for j, slot in factors:
                prod *= theta(j, slots[slot], M)
            total += prod
        return total

    return abs(side(lhs_terms) - side(rhs_terms))
