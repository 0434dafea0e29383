import math

import numpy as np
import pytest
from hypothesis import given

from conftest import random_sy, s_values, y_values
from toda_connect import connection, monodromy
from toda_connect.algebra import EPS, constants, determinant, identity, inverse, residual, scale
from toda_connect.errors import DomainError, InvalidParams
from toda_connect.monodromy import (
    DET_E,
    W1,
    W2,
    ConnectionParams,
    MonodromyData,
    connection_matrices,
    identity_suite,
    params_from_sy,
    q_matrices,
    stokes_matrices,
)

TRIVIAL = ConnectionParams(1 / 3, 0j, 0.0)


def _p(s, y):
    return params_from_sy(MonodromyData(s, y))


@pytest.mark.parametrize("s", [-3.0, 1.0, 2.0, float("inf")])
def test_monodromy_data_domain(s):
    with pytest.raises(DomainError):
        MonodromyData(s, 0.0)


def test_params_trivial():
    p = _p(0.0, 0.0)
    assert abs(p.a_r - 1 / 3) < 1e-16 and p.b == 0 and p.s == 0


def test_params_s_minus_two():
    p = _p(-2.0, 0.0)
    assert abs(p.a_r - (1 / 3 + 2 * math.sqrt(1 / 36 + (1 / 3) / 36))) < 1e-15
    assert max(p.constraint_residuals()) < 1e-15


@given(s_values, y_values)
def test_params_constraints_and_inverse(s, y):
    p = _p(s, y)
    assert max(p.constraint_residuals()) <= 1e-12 * (1 + p.a_r**2)
    assert p.a_r >= 1 / 3 - 1e-15
    assert (W1 * p.b).imag == pytest.approx(y, abs=1e-12 * (1 + abs(y)))
    back = monodromy.sy_from_params(p)
    assert back.s == s and abs(back.y - y) <= 1e-12 * (1 + abs(y))


def test_invalid_params_rejected():
    with pytest.raises(InvalidParams):
        connection_matrices(ConnectionParams(0.5, 0j, 0.0))


def test_stokes_trivial():
    st = stokes_matrices(0.0)
    for m in (st.s1_inf, st.s2_inf, st.s1_zero, st.s2_zero):
        assert residual(m, identity()) == 0


def test_stokes_s_minus_two_entries():
    m = stokes_matrices(-2.0).s1_inf
    assert abs(m[0, 1] - (-2 * W2)) < 1e-15
    assert abs(m[2, 0] - (-2 * W2)) < 1e-15
    # -a w^2 with a = -2 w^2 equals 2 w
    assert abs(m[2, 1] - 2 * W1) < 1e-15


@given(s_values)
def test_stokes_structure(s):
    st = stokes_matrices(s)
    c = constants().C
    for m in (st.s1_inf, st.s2_inf, st.s1_zero, st.s2_zero):
        assert abs(determinant(m) - 1) < 1e-13
    assert residual(st.s1_inf.conj(), c @ inverse(st.s2_inf) @ c) < 1e-14


@pytest.mark.parametrize("s", [-2.5, -1.0, 0.0, 0.7])
def test_stokes_from_q_products(s):
    st, qs = stokes_matrices(s), q_matrices(s)
    qi, qz = qs.q_inf, qs.q_zero
    assert residual(qi[3] @ qi[4] @ qi[5], st.s1_inf) < 1e-14
    assert residual(qi[6] @ qi[7] @ qi[8], st.s2_inf) < 1e-14
    assert residual(qz[3] @ qz[4] @ qz[5], st.s1_zero) < 1e-14
    assert residual(qz[6] @ qz[7] @ qz[8], st.s2_zero) < 1e-14


@given(s_values)
def test_q_structure_and_cyclic(s):
    qs = q_matrices(s)
    pi = constants().Pi
    for table in (qs.q_inf, qs.q_zero):
        assert sorted(table) == [3, 4, 5, 6, 7, 8]
        for m in table.values():
            off = m - identity()
            assert np.count_nonzero(np.abs(off) > 0) <= 1
            assert np.all(np.diag(m) == 1)
    for n in (3, 4, 5, 6):
        assert residual(qs.q_inf[n], inverse(pi) @ qs.q_inf[n + 2] @ pi) < 1e-14


def test_q_trivial():
    qs = q_matrices(0.0)
    assert all(residual(m, identity()) == 0 for m in [*qs.q_inf.values(), *qs.q_zero.values()])


def test_e1_trivial():
    e1, e2 = connection_matrices(TRIVIAL)
    assert residual(e1, constants().C / 3) == 0


@given(s_values, y_values)
def test_e1_properties(s, y):
    e1, e2 = connection_matrices(_p(s, y))
    c = constants().C
    assert residual(e1, e1.T) == 0
    assert residual(e1, c @ e1.conj() @ c) < 1e-14
    assert abs(determinant(e1) - DET_E) <= 1e-12 * (1 + scale(e1)) ** 3
    st = stokes_matrices(s)
    assert residual(e2, st.s2_zero @ e1 @ st.s1_inf) == 0


@given(s_values, y_values)
def test_e1c_hermitian_positive_minors(s, y):
    e1, _ = connection_matrices(_p(s, y))
    h = e1 @ constants().C
    assert residual(h, h.conj().T) < 1e-14
    assert h[0, 0].real > 0
    assert np.linalg.det(h[:2, :2]).real > 0


def test_identity_suite_trivial():
    rep = identity_suite(TRIVIAL)
    assert rep.max_residual() <= 2 * EPS


def test_identity_suite_example():
    rep = identity_suite(_p(-2.0, 0.5))
    assert rep.passed(1e-12), rep.residuals


def test_identity_suite_keys():
    keys = set(identity_suite(TRIVIAL).residuals)
    assert {"e1_symmetric", "e1_det", "e2_two_formulas", "e2_inversion", "e1_cyclic",
            "stokes_reality", "q_product", "q_cyclic", "no_formal_monodromy"} <= keys


@given(s_values, y_values)
def test_identity_suite_random(s, y):
    assert identity_suite(_p(s, y)).passed(1e-12)


def test_identity_suite_detects_corruption():
    rep = identity_suite(_p(-2.0, 0.5), _corrupt=1.01)
    assert rep.residuals["e2_inversion"] > 1e-3


def test_ldr_trivial():
    for f in monodromy.ldr_decompose(TRIVIAL):
        for m in (f.l, f.d, f.r):
            assert residual(m, identity()) == 0


@given(s_values, y_values)
def test_ldr_reconstruction(s, y):
    p = _p(s, y)
    factors = monodromy.ldr_decompose(p)
    targets = monodromy.ldr_targets(p)
    assert [f.k for f in factors] == [1, 2, 3, 4, 5, 6]
    for f, t in zip(factors, targets):
        assert residual(f.product(), t) <= 1e-12
        assert np.all(np.diag(f.l) == 1) and np.all(np.diag(f.r) == 1)
        d = np.diag(f.d)
        assert np.all(d.imag == 0) and np.all(d.real > 0)
        assert residual(f.d, np.diag(d)) == 0


def test_ldr_first_target():
    p = _p(0.5, -1.0)
    e1, _ = connection_matrices(p)
    f1 = monodromy.ldr_decompose(p)[0]
    assert residual(f1.product(), inverse(e1, DET_E) @ constants().C / 3) <= 1e-12
    a = p.a_r
    assert np.allclose(np.diag(f1.d), [1 / (3 * a), 3 * a, 1], rtol=1e-15)


def test_d_diagonals_order():
    d = monodromy.d_diagonals(0.5)
    for entries in d:
        assert sorted(entries.real) == sorted([1 / 1.5, 1.5, 1.0])
        assert abs(np.prod(entries) - 1) < 1e-15


def _chain(gamma, rho):
    z = connection.AsymptoticZero(gamma, rho)
    return connection.params_from_zero(z), connection.q_from_zero(z)


def test_factorization_trivial():
    p, q = _chain(0.0, 0.0)
    assert monodromy.e1_factorization_residual(p, 0.0, q) <= 1e-12


def test_factorization_chain():
    p, q = _chain(0.5, 0.0)
    assert monodromy.e1_factorization_residual(p, 0.5, q) <= 1e-10
    assert monodromy.e1_factorization_residual(p, 0.5, 1.1 * q) > 1e-3


def test_factorization_lhs_entries():
    p, q = _chain(0.3, 0.4)
    st = stokes_matrices(p.s)
    e1, _ = connection_matrices(p)
    lhs = st.s1_zero.conj().T @ constants().C @ inverse(e1, DET_E) @ st.s1_zero
    a, b, s = p.a_r, p.b, p.s
    bc = b.conjugate()
    expected = 9 * np.array([
        [a, W2 * b, W1 * bc],
        [W1 * bc, a, W1 * s * a + W2 * b - s * bc],
        [W2 * b, W2 * s * a - s * b + W1 * bc, a],
    ])
    assert residual(lhs, expected) < 1e-13
    assert residual(lhs, monodromy.k_lambda(0.3, q)) < 1e-12


def test_factorization_domain():
    p, q = _chain(0.5, 0.0)
    with pytest.raises(DomainError):
        monodromy.e1_factorization_residual(p, 0.5, -1.0)
    with pytest.raises(DomainError):
        monodromy.e1_factorization_residual(p, 1.2, q)


def test_random_identity_scale_bound():
    for s, y in random_sy(200, 11):
        p = _p(s, y)
        e1, e2 = connection_matrices(p)
        assert identity_suite(p).max_residual() <= 1e-12 * (1 + scale(e1, e2))


@given(s_values, y_values)
def test_connection_inverses(s, y):
    p = _p(s, y)
    e1, e2 = connection_matrices(p)
    e1i, e2i = monodromy.connection_inverses(p)
    tol = 1e-13 * (1 + scale(e1)) ** 2
    assert np.abs(e1 @ e1i - identity()).max() <= tol
    assert np.abs(e2 @ e2i - identity()).max() <= tol


def test_connection_inverses_large_a():
    import mpmath

    p = connection.params_from_zero(connection.AsymptoticZero(0.8, -2.0))
    assert p.a_r > 800
    e1, e2 = connection_matrices(p)
    for m, mi in zip((e1, e2), monodromy.connection_inverses(p)):
        exact = mpmath.inverse(mpmath.matrix([[mpmath.mpc(complex(v)) for v in row] for row in m]))
        ref = np.array(exact.tolist(), dtype=complex)
        # agreement is limited by the conditioning of m itself, not by cancellation
        assert residual(mi, ref) < 1e-6
        assert np.abs(m @ mi - identity()).max() < 100 * EPS * np.abs(m).max() * np.abs(mi).max()
