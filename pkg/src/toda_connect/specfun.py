"""Complex log-gamma and the gamma ratio entering the connection formulae."""
from __future__ import annotations

import cmath
import math

from .errors import DomainError, PoleError

_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)

# Stirling coefficients B_{2k} / (2k (2k - 1)), k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_SHIFT_TO = 12.0


def log_gamma(z: complex) -> complex:
    """Principal branch of ln Gamma(z), cut along (-inf, 0].

    Stirling series after shifting ``Re z`` above 12 with the recurrence
    ``ln G(z) = ln G(z + n) - sum ln(z + k)``.  Each principal logarithm in
    the sum is analytic off ``(-inf, 0]``, so the result is the analytic
    continuation of the real ``lgamma`` and not merely correct mod 2 pi i.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    if z.imag == 0.0 and z.real <= 0.0:
        raise PoleError(f"log_gamma evaluated on the cut at {z.real!r}")
    if abs(z.imag) <= 1e-12 and z.real <= 0.0 and abs(z.real - round(z.real)) <= 1e-12:
        raise PoleError(f"log_gamma evaluated at a pole near {z!r}")

    shift = 0.0j
    while z.real < _SHIFT_TO:
        shift += cmath.log(z)
        z += 1.0

    inv = 1.0 / z
    inv2 = inv * inv
    series = 0.0j
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    series *= inv
    return (z - 0.5) * cmath.log(z) - z + _HALF_LN_2PI + series - shift


def arg_gamma_imag(y: float) -> float:
    """Return arg Gamma(iy) = Im ln Gamma(iy), continuous on each half-line."""
    if y == 0.0:
        raise PoleError("Gamma has a pole at 0")
    # ln G(iy) = ln G(1 + iy) - ln(iy); stays accurate for tiny |y|
    return log_gamma(complex(1.0, y)).imag - math.copysign(0.5 * math.pi, y)


def q_gamma_factor(gamma: float) -> float:
    """Return the rho-independent factor G(gamma) of q = exp(2 rho) G(gamma).

    ``G = 2 (gamma-1)^2 3^{2(gamma-1)} Gamma(u) Gamma(v) / (Gamma(-v) Gamma(-u))``
    with ``u = (gamma-1)/3`` and ``v = 2u``.  Both ``u`` and ``v`` are
    negative on the domain, so they are moved to positive arguments with
    ``Gamma(t) = Gamma(1 + t) / t``; the prefactor cancels against ``u v``.
    """
    if not (-0.5 < gamma < 1.0):
        raise DomainError(f"gamma={gamma!r} outside (-1/2, 1)")
    u = (gamma - 1.0) / 3.0
    v = 2.0 * u
    log_g = (
        math.log(9.0)
        + 2.0 * (gamma - 1.0) * math.log(3.0)
        + math.lgamma(1.0 + u)
        + math.lgamma(1.0 + v)
        - math.lgamma(-u)
        - math.lgamma(-v)
    )
    return math.exp(log_g)
