"""Closed-form connection maps between the data at x = 0, the monodromy
data, and the oscillation parameters at x = infinity.

The map (gamma, rho) -> (sigma, psi) is implemented along two independent
routes: directly from (gamma, q), and through (A, B) via the Stokes
multiplier ``s1 = w^2 B / A``.  Their agreement is a standing check.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .algebra import omega_pow
from .errors import DegenerateError, DomainError
from .monodromy import ConnectionParams, MonodromyData, params_from_sy
from .specfun import arg_gamma_imag, log_gamma, q_gamma_factor

W1 = omega_pow(1)
W2 = omega_pow(2)
SQRT3 = math.sqrt(3.0)
LN_24_SQRT3 = math.log(24.0 * SQRT3)
OMEGA_FREQ = 2.0 * SQRT3

# X below this is the trivial orbit up to rounding (sigma ~ 1e-10)
X_TRIVIAL = 1e-20
# gamma range accepted by ODE-facing code
GAMMA_SAFE = (-0.4, 0.8)


def wrap_angle(a: float) -> float:
    """Reduce an angle to (-pi, pi]."""
    r = math.remainder(a, 2.0 * math.pi)
    return math.pi if r == -math.pi else r


def angular_distance(a: float, b: float) -> float:
    return abs(math.remainder(a - b, 2.0 * math.pi))


@dataclass(frozen=True)
class AsymptoticZero:
    """w0(x) = gamma ln x + rho + o(1) as x -> 0."""

    gamma: float
    rho: float

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and -0.5 < self.gamma < 1.0):
            raise DomainError(f"gamma={self.gamma!r} outside (-1/2, 1)")
        if not math.isfinite(self.rho):
            raise DomainError(f"rho={self.rho!r} is not finite")


@dataclass(frozen=True)
class AsymptoticInfinity:
    """w0(x) ~ sigma x^{-1/2} cos(2 sqrt3 x + X ln x + psi) as x -> infinity.

    ``psi`` and ``alpha`` are NaN when ``phase_defined`` is false.
    """

    sigma: float
    psi: float
    x_exponent: float
    alpha: float
    phase_defined: bool


class KitaevVariant(enum.Enum):
    DIRECT_SIGN = "DirectSign"
    ALTERNATE_SIGN = "AlternateSign"


@dataclass(frozen=True)
class KitaevG:
    g1: complex
    g2: complex
    g3: complex
    s: float
    variant: KitaevVariant

    def residuals(self) -> tuple[float, float]:
        g1, g2, g3, s = self.g1, self.g2, self.g3, self.s
        return abs(g1 + g2 + g3 - 1.0), abs(g1 * g2 + g2 * g3 + g1 * g3 * (1.0 + s))


def _angles(gamma: float) -> tuple[float, float]:
    t = math.pi * (1.0 - gamma) / 3.0
    return t, 2.0 * t


def _lambdas(gamma: float) -> tuple[float, float]:
    t, _ = _angles(gamma)
    return 4.0 / 3.0 * math.sin(t) ** 2, 2.0 * math.cos(t)


def q_from_zero(z: AsymptoticZero) -> float:
    return math.exp(2.0 * z.rho) * q_gamma_factor(z.gamma)


def sy_from_zero(z: AsymptoticZero) -> MonodromyData:
    q = q_from_zero(z)
    _, t2 = _angles(z.gamma)
    lam0, lam1 = _lambdas(z.gamma)
    s = -2.0 * math.cos(t2) - 1.0
    y = (q - 1.0 / q) * math.sin(t2) / (9.0 * lam0 * lam1)
    return MonodromyData(s, y)


def zero_from_sy(m: MonodromyData) -> AsymptoticZero:
    if not (-3.0 < m.s < 1.0):
        raise DomainError(f"s={m.s!r} outside (-3, 1)")
    t2 = math.acos(-(1.0 + m.s) / 2.0)
    gamma = 1.0 - 3.0 * t2 / (2.0 * math.pi)
    lam0, lam1 = _lambdas(gamma)
    b = 9.0 * lam0 * lam1 * m.y / math.sin(t2)
    # positive root of q^2 - b q - 1 = 0, written without cancellation
    root = math.hypot(b, 2.0)
    q = (b + root) / 2.0 if b >= 0.0 else 2.0 / (root - b)
    rho = 0.5 * (math.log(q) - math.log(q_gamma_factor(gamma)))
    return AsymptoticZero(gamma, rho)


def params_from_zero(z: AsymptoticZero) -> ConnectionParams:
    return params_from_sy(sy_from_zero(z))


def _infinity(x_exp: float, phase_fn) -> AsymptoticInfinity:
    if x_exp <= X_TRIVIAL:
        return AsymptoticInfinity(0.0, math.nan, 0.0, math.nan, False)
    sigma = math.sqrt(SQRT3 * x_exp / 2.0)
    alpha, psi = phase_fn(x_exp)
    return AsymptoticInfinity(sigma, wrap_angle(psi), x_exp, alpha, True)


def infinity_from_zero(z: AsymptoticZero) -> AsymptoticInfinity:
    """(sigma, psi) directly from (gamma, q).

    The bracket inside the logarithm for X is rewritten as
    ``1 + (q-1)^2 / (8 q c s^2) + (2c-1)^2 / (4c(1-c))`` so that X >= 0
    holds manifestly and the trivial orbit gives X = 0 without cancellation.
    """
    q = q_from_zero(z)
    t, t2 = _angles(z.gamma)
    c, sn = math.cos(t), math.sin(t)
    excess = (q - 1.0) ** 2 / (8.0 * q * c * sn * sn) + (2.0 * c - 1.0) ** 2 / (4.0 * c * (1.0 - c))
    x_exp = math.log1p(excess) / (2.0 * math.pi)

    def phase(x):
        alpha = math.atan2((q - 1.0 / q) * math.sin(t2), (q + 1.0 / q) * math.cos(t2) + 2.0 * c)
        return alpha, x * LN_24_SQRT3 + 0.75 * math.pi + alpha - arg_gamma_imag(x)

    return _infinity(x_exp, phase)


def stokes_multiplier(p: ConnectionParams) -> complex:
    return W2 * p.b / p.a_r


def infinity_from_params(p: ConnectionParams) -> AsymptoticInfinity:
    """(sigma, psi) from the Stokes multiplier s1 = w^2 B / A.

    ``alpha`` is reported as ``arg(w B) = arg s1 - 2 pi / 3``, the quantity
    playing the same role in the direct route.
    """
    p.validate()
    s1 = stokes_multiplier(p)
    x_exp = -math.log1p(-abs(s1) ** 2) / (2.0 * math.pi)

    def phase(x):
        arg_s1 = cmath.phase(s1)
        psi = x * LN_24_SQRT3 + math.pi / 12.0 + arg_s1 - arg_gamma_imag(x)
        return wrap_angle(arg_s1 - 2.0 * math.pi / 3.0), psi

    return _infinity(x_exp, phase)


def residue_r0(p: ConnectionParams, x: float):
    """Residue coefficients (alpha_hat, beta_hat) and the limit R(0).

    Returns
    -------
    alpha_hat, beta_hat : complex
    r0 : Mat3
        Circulant with unit diagonal and off-diagonal entries
        ``alpha_hat - w beta_hat`` and ``beta_hat - w^2 alpha_hat``.
    """
    p.validate()
    if not x > 0.0:
        raise DomainError(f"x={x!r} must be positive")
    s1 = stokes_multiplier(p)
    if abs(s1) == 0.0:
        raise DegenerateError("s1 = 0 on the trivial orbit")
    x_exp = -math.log1p(-abs(s1) ** 2) / (2.0 * math.pi)
    nu = 1j * x_exp
    alpha = (
        -1j
        / (s1 * cmath.exp(1j * OMEGA_FREQ * x))
        * math.sqrt(2.0 * math.pi)
        * cmath.exp(2j * math.pi * nu)
        / cmath.exp(log_gamma(-nu))
    )
    ln_big = math.log(24.0 * SQRT3 * x)
    pref = 3.0**-0.25 / math.sqrt(2.0 * x)
    alpha_hat = alpha * pref * cmath.exp(-nu * ln_big - 0.75j * math.pi - 1.5j * math.pi * nu)
    beta_hat = -(nu / alpha) * pref * cmath.exp(nu * ln_big - 0.75j * math.pi + 1.5j * math.pi * nu)
    u = alpha_hat - W1 * beta_hat
    v = beta_hat - W2 * alpha_hat
    r0 = np.array([[1, u, v], [v, 1, u], [u, v, 1]], dtype=complex)
    return alpha_hat, beta_hat, r0


def w0_from_residue(p: ConnectionParams, x: float) -> complex:
    """Leading term ``(sqrt3/2) e^{-5 pi i/6} (alpha_hat - w beta_hat)``."""
    a_hat, b_hat, _ = residue_r0(p, x)
    return SQRT3 / 2.0 * cmath.exp(-5j * math.pi / 6.0) * (a_hat - W1 * b_hat)


def w0_model(inf: AsymptoticInfinity, x):
    """Leading oscillatory term of w0 at large x (accepts arrays)."""
    x = np.asarray(x, dtype=float)
    if inf.sigma == 0.0:
        out = np.zeros_like(x)
    else:
        out = inf.sigma / np.sqrt(x) * np.cos(OMEGA_FREQ * x + inf.x_exponent * np.log(x) + inf.psi)
    return out if out.ndim else float(out)


def kitaev_g(p: ConnectionParams, variant: KitaevVariant = KitaevVariant.DIRECT_SIGN) -> KitaevG:
    """Two candidate correspondences with Kitaev's (g1, g2, g3, s).

    For the alternate variant the middle parameter is taken as
    ``1 + 3 w^2 conj(B) - 3A`` so that g1 + g2 + g3 = 1 holds.
    """
    p.validate()
    a, b, s = p.a_r, p.b, p.s
    bc = b.conjugate()
    variant = KitaevVariant(variant)
    if variant is KitaevVariant.DIRECT_SIGN:
        return KitaevG(3 * W2 * bc, 3 * W1 * b + 3 * a * s, complex(3 * a), -s, variant)
    return KitaevG(-3 * W2 * bc, 1 + 3 * W2 * bc - 3 * a, complex(3 * a), 2 + s - 2 / (3 * a), variant)


def toda_to_painleve(x, w0):
    """Map (x, w0) to the Painleve III (D7) variables (s, w_tilde)."""
    x = np.asarray(x, dtype=float)
    s = (4.0 * x / 3.0) ** 1.5
    w_tilde = np.cbrt(s) * np.exp(-2.0 * np.asarray(w0, dtype=float))
    if s.ndim == 0:
        return float(s), float(w_tilde)
    return s, w_tilde


def corollary_asymptote(inf: AsymptoticInfinity, s):
    """Large-s asymptote of the Painleve III (D7) solution."""
    s = np.asarray(s, dtype=float)
    root = np.cbrt(s)
    if inf.sigma == 0.0:
        out = root
    else:
        s23 = root * root
        arg = 1.5 * SQRT3 * s23 + inf.x_exponent * np.log(0.75 * s23) + inf.psi
        out = root - 4.0 / SQRT3 * inf.sigma * np.cos(arg)
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class ForwardResult:
    zero: AsymptoticZero
    q: float
    mono: MonodromyData
    params: ConnectionParams
    infinity: AsymptoticInfinity
    kitaev: tuple


def forward(gamma: float, rho: float) -> ForwardResult:
    """Run the whole chain (gamma, rho) -> q -> (s, y) -> (A, B) -> (sigma, psi)."""
    z = AsymptoticZero(gamma, rho)
    mono = sy_from_zero(z)
    p = params_from_sy(mono)
    return ForwardResult(
        zero=z,
        q=q_from_zero(z),
        mono=mono,
        params=p,
        infinity=infinity_from_zero(z),
        kitaev=tuple(kitaev_g(p, v) for v in KitaevVariant),
    )
