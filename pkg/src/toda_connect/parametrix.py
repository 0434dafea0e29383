"""Phase functions, stationary points and the global parametrix on the
unit circle.

The global parametrix is diagonal, so it is evaluated through the sum of
logarithms of its six power-function factors.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import Mat3, constants, diag
from .errors import DomainError, InvalidParams, OnContour
from .monodromy import ConnectionParams, d_diagonals

SQRT3 = math.sqrt(3.0)
_E_PI6 = complex(SQRT3 / 2.0, 0.5)  # e^{i pi/6}
_E_PI3 = complex(0.5, SQRT3 / 2.0)  # e^{i pi/3}

# p1..p6 = 1, -conj(w), w, -1, conj(w), -w ; p7 = p1
ARC_POINTS = (
    1.0 + 0.0j,
    _E_PI3,
    complex(-0.5, SQRT3 / 2.0),
    -1.0 + 0.0j,
    complex(-0.5, -SQRT3 / 2.0),
    complex(0.5, -SQRT3 / 2.0),
)
_CUT = 5.0 * math.pi / 6.0
CONTOUR_TOL = 1e-10


@dataclass(frozen=True)
class ArcPoint:
    """A point strictly inside arc C_k, k = 1..6, given by its angle."""

    k: int
    angle: float

    def __post_init__(self):
        if self.k not in range(1, 7):
            raise DomainError(f"arc index {self.k!r} not in 1..6")
        lo, hi = (self.k - 1) * math.pi / 3.0, self.k * math.pi / 3.0
        if not lo < self.angle < hi:
            raise DomainError(f"angle {self.angle!r} not inside arc C_{self.k}")

    @property
    def zeta(self) -> complex:
        return cmath.exp(1j * self.angle)


def _nonzero(zeta: complex) -> complex:
    zeta = complex(zeta)
    if zeta == 0:
        raise DomainError("zeta = 0 is a singular point")
    return zeta


def phase(k: int, zeta: complex) -> complex:
    """Phase function phi_k(zeta), k = 1, 2, 3."""
    zeta = _nonzero(zeta)
    inv = 1.0 / zeta
    if k == 1:
        return SQRT3 * (zeta * _E_PI6.conjugate() - inv * _E_PI6)
    if k == 2:
        return SQRT3 * (zeta * _E_PI6 - inv * _E_PI6.conjugate())
    if k == 3:
        return 1j * SQRT3 * (zeta + inv)
    raise DomainError(f"phase id {k!r} not in 1..3")


def phase_derivative(k: int, zeta: complex, order: int = 1) -> complex:
    """First or second derivative of phi_k."""
    zeta = _nonzero(zeta)
    if k == 1:
        c_pos, c_neg = SQRT3 * _E_PI6.conjugate(), -SQRT3 * _E_PI6
    elif k == 2:
        c_pos, c_neg = SQRT3 * _E_PI6, -SQRT3 * _E_PI6.conjugate()
    elif k == 3:
        c_pos, c_neg = 1j * SQRT3, 1j * SQRT3
    else:
        raise DomainError(f"phase id {k!r} not in 1..3")
    # phi = c_pos zeta + c_neg / zeta
    if order == 1:
        return c_pos - c_neg / zeta**2
    if order == 2:
        return 2.0 * c_neg / zeta**3
    raise DomainError("only first and second derivatives are available")


def stationary_points(k: int) -> tuple[complex, complex]:
    if k == 1:
        p = _E_PI3.conjugate()
    elif k == 2:
        p = _E_PI3
    elif k == 3:
        p = 1.0 + 0.0j
    else:
        raise DomainError(f"phase id {k!r} not in 1..3")
    return p, -p


def theta(zeta: complex) -> Mat3:
    """theta(zeta) = -zeta d3 + d3^{-1} / zeta."""
    zeta = _nonzero(zeta)
    d3 = constants().d3
    return -zeta * d3 + d3.conj() / zeta


def log_branch(z: complex) -> complex:
    """Logarithm with arg in (-7 pi/6, 5 pi/6]."""
    a = cmath.phase(z)
    if a > _CUT:
        a -= 2.0 * math.pi
    return complex(math.log(abs(z)), a)


def _log_parametrix(zeta: complex, log_d: list[np.ndarray]) -> np.ndarray:
    total = np.zeros(3, dtype=complex)
    for k in range(6):
        g = (zeta - ARC_POINTS[k]) / (zeta - ARC_POINTS[(k + 1) % 6])
        total += -log_d[k] / (2j * math.pi) * log_branch(g)
    return total


def _log_d(p: ConnectionParams) -> list[np.ndarray]:
    p.validate()
    if not p.a_r > 0.0:
        raise InvalidParams("A must be positive")
    return [np.log(d) for d in d_diagonals(p.a_r)]


def global_parametrix(zeta: complex, p: ConnectionParams) -> Mat3:
    """Diagonal solution of the model problem with jumps D_k on the arcs C_k.

    ``Y(0) = I`` and ``Y(zeta) -> I`` as ``zeta -> infinity``.
    """
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) < CONTOUR_TOL:
        raise OnContour(f"|zeta| = {abs(zeta)!r} lies on the unit circle")
    return diag(np.exp(_log_parametrix(zeta, _log_d(p))))


def _jump(zeta: complex, h: float, log_d) -> np.ndarray:
    # Y_+ is the boundary value from the interior (left of the ccw circle)
    y_plus = np.exp(_log_parametrix((1.0 - h) * zeta, log_d))
    y_minus = np.exp(_log_parametrix((1.0 + h) * zeta, log_d))
    return y_plus / y_minus


def jump_residual(p: ConnectionParams, samples_per_arc: int = 16, h: float = 1e-6) -> float:
    """Largest deviation of Y_-^{-1} Y_+ from D_k over interior arc points.

    Boundary values are approached radially from both sides; one Richardson
    step in h removes the first-order error.
    """
    if samples_per_arc < 3:
        raise InvalidParams("need at least 3 samples per arc")
    log_d = _log_d(p)
    d_list = d_diagonals(p.a_r)
    worst = 0.0
    for k in range(6):
        for j in range(samples_per_arc):
            pt = ArcPoint(k + 1, (k + (j + 0.5) / samples_per_arc) * math.pi / 3.0)
            j1 = _jump(pt.zeta, h, log_d)
            j2 = _jump(pt.zeta, h / 2.0, log_d)
            est = 2.0 * j2 - j1
            worst = max(worst, float(np.abs(est - d_list[k]).max()))
    return worst


def local_scaling(zeta: complex, x: float) -> complex:
    """Local coordinate z(zeta) = sqrt(2x) e^{i pi/2} sqrt(phi_3 - 2 sqrt3 i)
    near the stationary point 1.

    Since ``phi_3 - 2 sqrt3 i = i sqrt3 (zeta - 1)^2 / zeta``, the branch with
    ``z ~ sqrt(2x) e^{3 pi i/4} 3^{1/4} (zeta - 1)`` is the analytic one
    ``sqrt(2x) e^{3 pi i/4} 3^{1/4} (zeta - 1) / sqrt(zeta)``.
    """
    zeta = complex(zeta)
    if not abs(zeta - 1.0) < 0.5:
        raise DomainError("local scaling is defined for |zeta - 1| < 0.5")
    if not x > 0.0:
        raise DomainError(f"x={x!r} must be positive")
    return math.sqrt(2.0 * x) * cmath.exp(0.75j * math.pi) * 3.0**0.25 * (zeta - 1.0) / cmath.sqrt(zeta)
