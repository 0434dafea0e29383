import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from toda_connect import algebra
from toda_connect.algebra import EPS, constants, determinant, identity, inverse, residual
from toda_connect.errors import SingularMatrix


def test_omega_value():
    w = constants().omega
    assert w == complex(-0.5, math.sqrt(3.0) / 2.0)
    assert abs(w**3 - 1) < 10 * EPS
    assert abs(1 + w + w * w) < 10 * EPS


def test_omega_powers_by_table():
    for k in range(-4, 7):
        assert algebra.omega_pow(k) == algebra.omega_pow(k % 3)
    assert algebra.omega_pow(2) == constants().omega.conjugate()


def test_constant_relations():
    c = constants()
    tol = 10 * EPS
    assert residual(c.Omega @ c.Omega, 3 * c.C) <= tol
    assert residual(inverse(c.Omega), c.C @ c.Omega / 3) <= tol
    assert residual(inverse(c.Omega), c.Omega @ c.C / 3) <= tol
    assert residual(c.C @ c.C, identity()) == 0
    assert residual(c.Delta @ c.Delta, identity()) == 0
    assert residual(c.Pi @ c.Pi @ c.Pi, identity()) == 0
    assert residual(inverse(c.d3) @ c.Pi @ c.d3, c.omega * c.Pi) <= tol


def test_constants_are_read_only():
    with pytest.raises(ValueError):
        constants().C[0, 0] = 5


def test_determinants():
    c = constants()
    assert abs(determinant(c.Omega) - (-3j * math.sqrt(3.0))) < 1e-14
    assert determinant(identity()) == 1
    assert determinant(c.C) == -1


def test_inverse_examples():
    assert residual(inverse(identity()), identity()) == 0
    assert residual(inverse(np.diag([2, 4, 1 / 8])), np.diag([0.5, 0.25, 8.0])) == 0


def test_inverse_singular():
    with pytest.raises(SingularMatrix):
        inverse(np.ones((3, 3)))


def test_inverse_with_known_determinant():
    m = np.array([[2, 1, 0], [0, 3, 1], [1, 0, 1]], dtype=complex)
    assert residual(inverse(m, det=determinant(m)), inverse(m)) < 1e-15


def test_as_mat3_rejects_bad_input():
    with pytest.raises(ValueError):
        algebra.as_mat3(np.zeros((2, 2)))
    with pytest.raises(ValueError):
        algebra.as_mat3(np.full((3, 3), np.nan))


def _random_mat(seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))


def test_inverse_random_well_conditioned():
    for seed in range(500):
        m = _random_mat(seed)
        cond = np.linalg.cond(m, np.inf)
        if cond > 1e6:
            continue
        err = np.abs(m @ inverse(m) - identity()).max()
        assert err <= 1e3 * EPS * cond


@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_determinant_multiplicative(a, b):
    ma, mb = _random_mat(a), _random_mat(b)
    da, db = determinant(ma), determinant(mb)
    scale = np.abs(ma).max() ** 3 * np.abs(mb).max() ** 3
    assert abs(determinant(ma @ mb) - da * db) <= 1e2 * EPS * max(abs(da * db), scale)


def test_allclose_scaled():
    a = np.full((3, 3), 1e6, dtype=complex)
    assert algebra.allclose3(a, a + 1e-7)
    assert not algebra.allclose3(a, a + 1e-3)
