"""Connection formulae for the radial Toda equation
``w0'' + w0'/x = 2 exp(-2 w0) - 2 exp(4 w0)``.

Maps the small-x data (gamma, rho) to monodromy data (s, y) and on to the
large-x amplitude and phase (sigma, psi), with numerical cross-checks by
direct integration.
"""
from .connection import (
    AsymptoticInfinity,
    AsymptoticZero,
    forward,
    infinity_from_params,
    infinity_from_zero,
    q_from_zero,
    sy_from_zero,
    zero_from_sy,
)
from .monodromy import ConnectionParams, MonodromyData, identity_suite, params_from_sy
from .ode import BACKEND, IntegratorConfig, Trajectory, integrate_radial_toda
from .asymfit import compare_fit_prediction, fit_sigma_psi

__version__ = "0.1.0"

__all__ = [
    "AsymptoticInfinity",
    "AsymptoticZero",
    "BACKEND",
    "ConnectionParams",
    "IntegratorConfig",
    "MonodromyData",
    "Trajectory",
    "compare_fit_prediction",
    "fit_sigma_psi",
    "forward",
    "identity_suite",
    "infinity_from_params",
    "infinity_from_zero",
    "integrate_radial_toda",
    "params_from_sy",
    "q_from_zero",
    "sy_from_zero",
    "zero_from_sy",
]
