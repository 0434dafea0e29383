"""Amplitude and phase extraction from the oscillatory tail of a trajectory.

Model: ``w0(x) = sigma x^{-1/2} cos(2 sqrt3 x + (2/sqrt3) sigma^2 ln x + psi)``.
The log-phase coefficient is tied to sigma, so each iteration is a linear
least-squares problem in (sigma cos psi, -sigma sin psi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .connection import OMEGA_FREQ, AsymptoticInfinity, angular_distance, wrap_angle
from .errors import AmplitudeTooSmall, NoConvergence, PhaseUndefined, WindowTooShort
from .ode import PERIOD, Trajectory

MIN_PERIODS = 10
PHASE_THRESHOLD = 1e-4
SIGMA_TOL = 0.02
PSI_TOL = 0.05
SIGMA_FLOOR = 0.05


@dataclass(frozen=True)
class FitResult:
    sigma: float
    psi: float
    x_exp: float
    rms_residual: float
    window: tuple
    iterations: int = 0
    phase_defined: bool = True


@dataclass(frozen=True)
class FitReport:
    sigma_fit: float
    psi_fit: Optional[float]
    sigma_pred: float
    psi_pred: Optional[float]
    delta_sigma: float
    delta_sigma_rel: float
    delta_psi: Optional[float]
    window: tuple
    rms_residual: float
    passed: bool

    def as_dict(self) -> dict:
        return {
            "sigma_fit": self.sigma_fit,
            "psi_fit": self.psi_fit,
            "sigma_pred": self.sigma_pred,
            "psi_pred": self.psi_pred,
            "delta_sigma_rel": self.delta_sigma_rel,
            "delta_psi": self.delta_psi,
            "window": list(self.window),
            "rms_residual": self.rms_residual,
            "pass": self.passed,
        }


def _select(traj: Trajectory, window) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    if window is None:
        window = (traj.x[0], traj.x[-1]) if traj.x.size else (0.0, 0.0)
    lo, hi = window
    keep = (traj.x >= lo - 1e-9) & (traj.x <= hi + 1e-9)
    x = traj.x[keep]
    if x.size < 3 or x[-1] - x[0] < MIN_PERIODS * PERIOD * (1.0 - 1e-9):
        raise WindowTooShort(f"window {window} spans fewer than {MIN_PERIODS} periods")
    return x, traj.w0[keep], traj.w0_prime[keep]


def envelope_estimate(traj: Trajectory, window=None) -> float:
    """Mean of sqrt(x (w0^2 + w0'^2/12)) over the window."""
    x, w, dw = _select(traj, window)
    return float(np.mean(np.sqrt(x * (w * w + dw * dw / 12.0))))


def _phase_arg(x: np.ndarray, sigma: float) -> np.ndarray:
    return OMEGA_FREQ * x + 2.0 / math.sqrt(3.0) * sigma**2 * np.log(x)


def fit_sigma_psi(
    traj: Trajectory, window=None, tol: float = 1e-10, max_iter: int = 50, strict: bool = False
) -> FitResult:
    """Iterated linear least squares for (sigma, psi).

    Below ``sigma = 1e-4`` the phase is not identifiable: the result has
    ``phase_defined = False`` (or :class:`AmplitudeTooSmall` is raised when
    ``strict``).
    """
    x, w, dw = _select(traj, window)
    span = (float(x[0]), float(x[-1]))
    sigma = float(np.mean(np.sqrt(x * (w * w + dw * dw / 12.0))))
    if sigma < PHASE_THRESHOLD:
        result = FitResult(sigma, math.nan, 2.0 / math.sqrt(3.0) * sigma**2,
                           float(np.sqrt(np.mean(w * w))), span, 0, False)
        if strict:
            err = AmplitudeTooSmall(f"amplitude {sigma:.3e} below {PHASE_THRESHOLD:g}")
            err.result = result
            raise err
        return result

    target = np.sqrt(x) * w
    for it in range(1, max_iter + 1):
        th = _phase_arg(x, sigma)
        basis = np.column_stack([np.cos(th), np.sin(th)])
        (a, b), *_ = np.linalg.lstsq(basis, target, rcond=None)
        new_sigma = math.hypot(a, b)
        done = abs(new_sigma - sigma) <= tol
        sigma = new_sigma
        if done:
            break
    else:
        raise NoConvergence(f"sigma iteration did not settle in {max_iter} steps")

    psi = wrap_angle(math.atan2(-b, a))
    model = sigma / np.sqrt(x) * np.cos(_phase_arg(x, sigma) + psi)
    rms = float(np.sqrt(np.mean((w - model) ** 2)))
    return FitResult(sigma, psi, 2.0 / math.sqrt(3.0) * sigma**2, rms, span, it, True)


def compare_fit_prediction(
    fit: FitResult,
    inf: AsymptoticInfinity,
    sigma_tol: float = SIGMA_TOL,
    psi_tol: float = PSI_TOL,
) -> FitReport:
    """Compare a fit with the connection-formula prediction.

    Passes when ``|dsigma| / max(sigma_pred, 0.05) <= sigma_tol`` and the
    angular phase distance is at most ``psi_tol`` (skipped when both phases
    are undefined).
    """
    if fit.phase_defined != inf.phase_defined:
        raise PhaseUndefined(
            f"fit phase defined={fit.phase_defined}, prediction phase defined={inf.phase_defined}"
        )
    d_sigma = abs(fit.sigma - inf.sigma)
    d_rel = d_sigma / max(inf.sigma, SIGMA_FLOOR)
    ok = d_rel <= sigma_tol
    d_psi = None
    if fit.phase_defined:
        d_psi = angular_distance(fit.psi, inf.psi)
        ok = ok and d_psi <= psi_tol
    return FitReport(
        sigma_fit=fit.sigma,
        psi_fit=fit.psi if fit.phase_defined else None,
        sigma_pred=inf.sigma,
        psi_pred=inf.psi if inf.phase_defined else None,
        delta_sigma=d_sigma,
        delta_sigma_rel=d_rel,
        delta_psi=d_psi,
        window=fit.window,
        rms_residual=fit.rms_residual,
        passed=bool(ok),
    )
