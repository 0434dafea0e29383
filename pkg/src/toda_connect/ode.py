"""Integration of the radial Toda equation

    w0'' + w0'/x = 2 exp(-2 w0) - 2 exp(4 w0)

from its small-x asymptotics, and the Painleve III (D7) cross-check.

The stepping loop lives in a compiled extension (``_core``) when it is
available and in ``_core_py`` otherwise; ``BACKEND`` names the one in use.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _core_py
from .connection import GAMMA_SAFE, AsymptoticZero, toda_to_painleve
from .errors import DomainError, NonFinite, StepUnderflow, WindowTooShort

try:
    from . import _core as _compiled
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKENDS = {"python": _core_py}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled
BACKEND = "compiled" if _compiled is not None else "python"

PERIOD = math.pi / math.sqrt(3.0)

# Series initialization: shrink x0 until the leading corrections are this small
SERIES_SMALL = 0.02
SERIES_ORDER = 14


@dataclass(frozen=True)
class IntegratorConfig:
    x0: float = 1e-4
    x_max: float = 200.0
    rtol: float = 1e-10
    atol: float = 1e-12
    dense_from: Optional[float] = None
    dense_step: float = 0.04

    def __post_init__(self):
        if self.dense_from is None:
            object.__setattr__(self, "dense_from", self.x_max / 2.0)
        if not (0.0 < self.x0 < self.dense_from < self.x_max):
            raise DomainError("need 0 < x0 < dense_from < x_max")
        if not (self.rtol > 0.0 and self.atol > 0.0):
            raise DomainError("tolerances must be positive")
        if not (0.0 < self.dense_step <= 0.05):
            raise DomainError("dense_step must lie in (0, 0.05]")


@dataclass
class Trajectory:
    """Dense samples of (x, w0, w0') plus integrator metadata."""

    x: np.ndarray
    w0: np.ndarray
    w0_prime: np.ndarray
    gamma: float
    rho: float
    steps_taken: int
    rejections: int
    x_start: float = 0.0
    backend: str = ""
    config: IntegratorConfig = field(default_factory=IntegratorConfig)

    @property
    def samples(self) -> np.ndarray:
        return np.column_stack([self.x, self.w0, self.w0_prime])

    def window(self, lo: float, hi: float) -> "Trajectory":
        keep = (self.x >= lo - 1e-9) & (self.x <= hi + 1e-9)
        return Trajectory(
            self.x[keep], self.w0[keep], self.w0_prime[keep], self.gamma, self.rho,
            self.steps_taken, self.rejections, self.x_start, self.backend, self.config,
        )


def _check_gamma(z: AsymptoticZero) -> None:
    lo, hi = GAMMA_SAFE
    if not lo <= z.gamma <= hi:
        raise DomainError(f"gamma={z.gamma!r} outside [{lo}, {hi}] for ODE initialization")


def series_coefficients(gamma: float, rho: float, order: int = SERIES_ORDER) -> dict:
    """Coefficients c[m, n] of w0 - gamma ln x - rho = sum c[m, n] x^{m p + n q}.

    ``p = 2 - 2 gamma`` and ``q = 2 + 4 gamma``.  In ``t = ln x`` the
    remainder u solves ``u_tt = A a e^{-2u} - B b e^{4u}`` with
    ``a = x^p``, ``b = x^q``, ``A = 2 e^{-2 rho}``, ``B = 2 e^{4 rho}``.
    The exponentials are expanded with the Euler-operator recurrence
    ``m E[m, n] = k sum i c[i, j] E[m - i, n - j]``.
    """
    p, q = 2.0 - 2.0 * gamma, 2.0 + 4.0 * gamma
    big_a, big_b = 2.0 * math.exp(-2.0 * rho), 2.0 * math.exp(4.0 * rho)
    c = {}
    em = {(0, 0): 1.0}  # exp(-2u)
    ep = {(0, 0): 1.0}  # exp(4u)
    for d in range(1, order + 1):
        for m in range(d + 1):
            n = d - m
            val = big_a * em.get((m - 1, n), 0.0) - big_b * ep.get((m, n - 1), 0.0)
            c[m, n] = val / (m * p + n * q) ** 2
        for m in range(d + 1):
            n = d - m
            for table, k in ((em, -2.0), (ep, 4.0)):
                acc = 0.0
                if m > 0:
                    for i in range(1, m + 1):
                        for j in range(n + 1):
                            acc += i * c[i, j] * table[m - i, n - j]
                    table[m, n] = k * acc / m
                else:
                    for j in range(1, n + 1):
                        acc += j * c[0, j] * table[0, n - j]
                    table[m, n] = k * acc / n
    return c


def init_at_zero(z: AsymptoticZero, x0: float, order: int = 1) -> tuple[float, float]:
    """Initial data (w0, w0') at small x0.

    ``order=1`` keeps the first correction of each kind,
    ``c- x0^{2-2g} + c+ x0^{2+4g}`` with ``c- = 2 e^{-2 rho}/(2-2g)^2`` and
    ``c+ = -2 e^{4 rho}/(2+4g)^2``.  Higher orders sum the full double
    power series up to that total degree.
    """
    _check_gamma(z)
    if not (0.0 < x0 <= 1e-2):
        raise DomainError(f"x0={x0!r} outside (0, 1e-2]")
    g, rho = z.gamma, z.rho
    p, q = 2.0 - 2.0 * g, 2.0 + 4.0 * g
    lx = math.log(x0)
    w = g * lx + rho
    dw = g / x0
    for (m, n), cmn in series_coefficients(g, rho, order).items():
        e = m * p + n * q
        term = cmn * math.exp(e * lx)
        w += term
        dw += e * term / x0
    return w, dw


def series_start(z: AsymptoticZero, x0: float) -> float:
    """Largest x <= x0 at which the leading corrections are below SERIES_SMALL."""
    g, rho = z.gamma, z.rho
    p, q = 2.0 - 2.0 * g, 2.0 + 4.0 * g
    c_minus = 2.0 * math.exp(-2.0 * rho) / p**2
    c_plus = 2.0 * math.exp(4.0 * rho) / q**2
    x_a = (SERIES_SMALL / c_minus) ** (1.0 / p)
    x_b = (SERIES_SMALL / c_plus) ** (1.0 / q)
    return min(x0, x_a, x_b)


def integrate_radial_toda(
    z: AsymptoticZero, cfg: IntegratorConfig = IntegratorConfig(), backend: Optional[str] = None
) -> Trajectory:
    """Dormand-Prince 5(4) with PI step control from the x -> 0 asymptotics.

    The start point is ``cfg.x0`` or smaller when the asymptotic series
    would converge slowly there; the initial data come from the series
    summed to ``SERIES_ORDER``.  Dense output is sampled at ``dense_step``
    on ``[dense_from, x_max]`` by quintic Hermite interpolation.
    """
    _check_gamma(z)
    name = backend or BACKEND
    core = BACKENDS[name]
    x0 = series_start(z, cfg.x0)
    w0, v0 = init_at_zero(z, x0, order=SERIES_ORDER)
    n_dense = int(math.floor((cfg.x_max - cfg.dense_from) / cfg.dense_step * (1.0 + 1e-12))) + 1
    x_end = max(cfg.x_max, cfg.dense_from + (n_dense - 1) * cfg.dense_step)
    xs, ws, vs, steps, rej, status = core.integrate(
        x0, w0, v0, x_end, cfg.rtol, cfg.atol, cfg.dense_from, cfg.dense_step, n_dense, 1e-3 * x0
    )
    if status == _core_py.UNDERFLOW:
        raise StepUnderflow(f"step size underflow after {steps} steps")
    if status == _core_py.NONFINITE:
        raise NonFinite("integrator state became non-finite")
    if status == _core_py.TOO_MANY:
        raise StepUnderflow(f"step budget of {_core_py.MAX_STEPS} exhausted")
    return Trajectory(
        np.asarray(xs), np.asarray(ws), np.asarray(vs), z.gamma, z.rho, steps, rej, x0, name, cfg
    )


def _fd_derivatives(y: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """Fourth-order central first and second differences at interior points."""
    d1 = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    d2 = (-y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]) / (12.0 * h * h)
    return d1, d2


def painleve_residual(traj: Trajectory) -> np.ndarray:
    """Pointwise residual of the Painleve III (D7) equation
    ``w_ss - w_s^2/w + w_s/s + w^2/s - 1/w`` along the dense window.

    Differences are taken on the uniform x grid and converted with
    ``ds/dx = 2 sqrt(4x/3)``.
    """
    x = traj.x
    if x.size < 9:
        raise WindowTooShort(f"{x.size} dense samples, need at least 9")
    h = float(np.mean(np.diff(x)))
    s, wt = toda_to_painleve(x, traj.w0)
    d1, d2 = _fd_derivatives(wt, h)
    xi, si, wi = x[2:-2], s[2:-2], wt[2:-2]
    sx = 2.0 * np.sqrt(4.0 * xi / 3.0)
    sxx = np.sqrt(4.0 / 3.0) / np.sqrt(xi)
    ws = d1 / sx
    wss = (d2 - ws * sxx) / sx**2
    return wss - ws**2 / wi + ws / si + wi**2 / si - 1.0 / wi


def painleve_crosscheck(traj: Trajectory) -> float:
    return float(np.abs(painleve_residual(traj)).max())


def write_trajectory_csv(traj: Trajectory, path) -> None:
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["x", "w0", "w0_prime"])
        for row in traj.samples:
            out.writerow([f"{v:.17g}" for v in row])
