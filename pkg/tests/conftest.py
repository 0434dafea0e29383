import functools

import numpy as np
import pytest
from hypothesis import settings, strategies as st

from toda_connect import connection, ode

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# Monodromy points away from the s -> -3 and s -> 1 edges
s_values = st.floats(-2.9, 0.9, allow_nan=False)
y_values = st.floats(-3.0, 3.0, allow_nan=False)
gamma_values = st.floats(-0.45, 0.95, allow_nan=False)
rho_values = st.floats(-2.0, 2.0, allow_nan=False)


def random_sy(n, seed):
    rng = np.random.default_rng(seed)
    return list(zip(rng.uniform(-2.9, 0.9, n), rng.uniform(-3.0, 3.0, n)))


@functools.lru_cache(maxsize=None)
def trajectory(gamma, rho, x_max=200.0, dense_step=0.04):
    cfg = ode.IntegratorConfig(x_max=x_max, dense_step=dense_step)
    return ode.integrate_radial_toda(connection.AsymptoticZero(gamma, rho), cfg)


@pytest.fixture
def traj():
    return trajectory


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
