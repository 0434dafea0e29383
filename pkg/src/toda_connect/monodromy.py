"""Stokes, Q and connection matrices parametrized by the monodromy data
``(s, y)``, together with the symmetry identities they satisfy.

Q-matrix indices are the integer thirds ``3n``: ``3, 4, 5`` for
``n = 1, 4/3, 5/3`` and ``6, 7, 8`` for ``n = 2, 7/3, 8/3``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    Mat3,
    constants,
    determinant,
    diag,
    identity,
    inverse,
    omega_pow,
    residual,
    scale,
    transpose_inverse,
)
from .errors import DomainError, InvalidParams

W1 = omega_pow(1)
W2 = omega_pow(2)

PARAM_TOL = 1e-9
DET_E = -1.0 / 27.0


@dataclass(frozen=True)
class MonodromyData:
    s: float
    y: float

    def __post_init__(self):
        _check_s(self.s)
        if not math.isfinite(self.y):
            raise DomainError(f"y={self.y!r} is not finite")


@dataclass(frozen=True)
class ConnectionParams:
    """The triple (A, B, s) parametrizing E1.

    Constraints: ``A^2 - A/3 = |B|^2`` and ``(1 + s) A + w B + w^2 conj(B) = 1/3``.
    """

    a_r: float
    b: complex
    s: float

    def constraint_residuals(self) -> tuple[float, float]:
        a, b, s = self.a_r, self.b, self.s
        r7 = abs(a * a - a / 3.0 - abs(b) ** 2)
        r6 = abs((1.0 + s) * a + W1 * b + W2 * b.conjugate() - 1.0 / 3.0)
        return r7, r6

    def validate(self, tol: float = PARAM_TOL) -> "ConnectionParams":
        if not (math.isfinite(self.a_r) and cmath.isfinite(self.b) and math.isfinite(self.s)):
            raise InvalidParams("non-finite connection parameters")
        if not (-3.0 < self.s < 1.0):
            raise InvalidParams(f"s={self.s!r} outside (-3, 1)")
        r7, r6 = self.constraint_residuals()
        if max(r7, r6) > tol * (1.0 + self.a_r):
            raise InvalidParams(f"constraint residuals {r7:.3e}, {r6:.3e} exceed {tol:g}")
        return self


@dataclass(frozen=True)
class StokesSet:
    s1_inf: Mat3
    s2_inf: Mat3
    s1_zero: Mat3
    s2_zero: Mat3


@dataclass(frozen=True)
class QSet:
    q_inf: dict
    q_zero: dict


@dataclass(frozen=True)
class LDRFactors:
    k: int
    l: Mat3
    d: Mat3
    r: Mat3

    def product(self) -> Mat3:
        return self.l @ self.d @ self.r


@dataclass
class IdentityReport:
    residuals: dict = field(default_factory=dict)

    def max_residual(self) -> float:
        return max(self.residuals.values()) if self.residuals else 0.0

    def passed(self, tol: float = 1e-12) -> bool:
        return self.max_residual() <= tol


def _check_s(s: float) -> None:
    if not (math.isfinite(s) and -3.0 < s < 1.0):
        raise DomainError(f"s={s!r} outside (-3, 1)")


def params_from_sy(m: MonodromyData) -> ConnectionParams:
    """Map monodromy data (s, y) to (A, B, s), taking the positive root."""
    s, y = m.s, m.y
    _check_s(s)
    r = math.sqrt(1.0 / 36.0 + (3.0 + s) / (1.0 - s) * (1.0 / 36.0 + y * y))
    a_r = 1.0 / (3.0 * (3.0 + s)) + 2.0 / (3.0 + s) * r
    b = W2 * complex(1.0 / (3.0 * (3.0 + s)) - (1.0 + s) / (3.0 + s) * r, y)
    assert a_r > 0.0
    return ConnectionParams(a_r, b, s)


def sy_from_params(p: ConnectionParams) -> MonodromyData:
    return MonodromyData(p.s, (W1 * p.b).imag)


def stokes_matrices(s: float) -> StokesSet:
    _check_s(s)
    a = W2 * s
    return StokesSet(
        s1_inf=np.array([[1, a, 0], [0, 1, 0], [a, -a * W2, 1]], dtype=complex),
        s2_inf=np.array([[1, 0, -a * W2], [-a * W2, 1, a * a * W1 + a], [0, 0, 1]], dtype=complex),
        s1_zero=np.array([[1, 0, -a], [-a, 1, a * a + a * W2], [0, 0, 1]], dtype=complex),
        s2_zero=np.array([[1, a * W2, 0], [0, 1, 0], [a * W2, -a, 1]], dtype=complex),
    )


_Q_INF = {3: ((0, 1), 1), 4: ((2, 1), -W2), 5: ((2, 0), 1), 6: ((1, 0), -W2), 7: ((1, 2), 1), 8: ((0, 2), -W2)}
_Q_ZERO = {3: ((1, 0), -1), 4: ((1, 2), W2), 5: ((0, 2), -1), 6: ((0, 1), W2), 7: ((2, 1), -1), 8: ((2, 0), W2)}


def _elementary(pos, value) -> Mat3:
    m = identity()
    m[pos] = value
    return m


def q_matrices(s: float) -> QSet:
    """Twelve unipotent Q matrices, keyed by ``3n`` in ``{3, ..., 8}``."""
    _check_s(s)
    a = W2 * s
    return QSet(
        q_inf={k: _elementary(pos, c * a) for k, (pos, c) in _Q_INF.items()},
        q_zero={k: _elementary(pos, c * a) for k, (pos, c) in _Q_ZERO.items()},
    )


def connection_matrices(p: ConnectionParams) -> tuple[Mat3, Mat3]:
    """Return (E1, E2) with E2 = S2^(0) E1 S1^(inf)."""
    p.validate()
    a, b, s = p.a_r, p.b, p.s
    bc = b.conjugate()
    e1 = np.array(
        [
            [a, b, bc],
            [b, W1 * s * a - W2 * s * b + bc, a],
            [bc, a, W2 * s * a + b - W1 * s * bc],
        ],
        dtype=complex,
    )
    st = stokes_matrices(s)
    return e1, st.s2_zero @ e1 @ st.s1_inf


def identity_suite(p: ConnectionParams, _corrupt: float = 1.0) -> IdentityReport:
    """Evaluate every symmetry identity of the monodromy data.

    Residuals are scaled as in :func:`algebra.residual`.  ``_corrupt``
    scales B after validation and exists only to exercise the suite's
    sensitivity.
    """
    p.validate()
    if _corrupt != 1.0:
        p = ConnectionParams(p.a_r, p.b * _corrupt, p.s)
        e1 = _e1_unchecked(p)
    else:
        e1, _ = connection_matrices(p)
    k = constants()
    d3, d3i, C, Pi = k.d3, k.d3.conj(), k.C, k.Pi
    st = stokes_matrices(p.s)
    qs = q_matrices(p.s)
    qi, q0 = qs.q_inf, qs.q_zero
    e1_inv = inverse(e1, DET_E)

    e2 = st.s2_zero @ e1 @ st.s1_inf
    out = {}
    out["e1_symmetric"] = residual(e1, e1.T)
    out["e1_reality"] = residual(e1, C @ e1.conj() @ C)
    out["e1_det"] = abs(determinant(e1) - DET_E) / (1.0 + scale(e1))
    out["e2_two_formulas"] = residual(e2, inverse(st.s1_zero) @ e1 @ inverse(st.s2_inf))
    out["e2_antisymmetry"] = residual(e2, d3 @ e1_inv.T @ d3 / 9.0)
    out["e2_inversion"] = residual(e2, d3 @ e1_inv @ d3 / 9.0)
    out["e1_cyclic"] = residual(
        d3i @ e1,
        W1 * (qi[6] @ qi[7] @ Pi) @ d3i @ e1 @ (qi[3] @ qi[4] @ Pi),
    )
    out["stokes_reality"] = residual(st.s1_inf.conj(), C @ inverse(st.s2_inf) @ C)
    out["stokes_inf_antisymmetry"] = residual(st.s2_inf, d3i @ transpose_inverse(st.s1_inf) @ d3)
    out["stokes_zero_antisymmetry"] = residual(st.s2_zero, d3 @ transpose_inverse(st.s1_zero) @ d3i)
    # S_n^(0) = d3 S_{n+1}^(inf) d3^-1, with S_3^(inf) = d3^-1 S_2^(inf)T-1 d3
    s3_inf = d3i @ transpose_inverse(st.s2_inf) @ d3
    out["stokes_zero_from_inf"] = max(
        residual(st.s1_zero, d3 @ st.s2_inf @ d3i),
        residual(st.s2_zero, d3 @ s3_inf @ d3i),
    )
    out["q_product"] = max(
        residual(st.s1_inf, qi[3] @ qi[4] @ qi[5]),
        residual(st.s2_inf, qi[6] @ qi[7] @ qi[8]),
        residual(st.s1_zero, q0[3] @ q0[4] @ q0[5]),
        residual(st.s2_zero, q0[6] @ q0[7] @ q0[8]),
    )
    pi_inv = Pi.T
    out["q_cyclic"] = max(
        residual(qset[n], pi_inv @ qset[n + 2] @ Pi) for qset in (qi, q0) for n in (3, 4, 5, 6)
    )
    out["q_inf_from_zero"] = max(residual(qi[n + 3], d3i @ q0[n] @ d3) for n in (3, 4, 5))
    # compared against I, so scale by the size of the two factors instead
    e2_inv = inverse(e2, DET_E)
    loop = e2_inv @ (st.s2_zero @ e1 @ st.s1_inf)
    out["no_formal_monodromy"] = float(
        np.abs(loop - identity()).max() / (1.0 + scale(e2_inv) * scale(e2))
    )
    return IdentityReport(out)


def _e1_unchecked(p: ConnectionParams) -> Mat3:
    a, b, s = p.a_r, p.b, p.s
    bc = b.conjugate()
    return np.array(
        [
            [a, b, bc],
            [b, W1 * s * a - W2 * s * b + bc, a],
            [bc, a, W2 * s * a + b - W1 * s * bc],
        ],
        dtype=complex,
    )


def connection_inverses(p: ConnectionParams) -> tuple[Mat3, Mat3]:
    """``E1^{-1} = 9 d3^{-1} E2 d3^{-1}`` and ``E2^{-1} = 9 d3^{-1} E1 d3^{-1}``.

    Products only, so no digits are lost when A is large and the adjugate
    inverse is badly conditioned.
    """
    e1, e2 = connection_matrices(p)
    d3i = constants().d3.conj()
    return 9.0 * d3i @ e2 @ d3i, 9.0 * d3i @ e1 @ d3i


def ldr_targets(p: ConnectionParams) -> list[Mat3]:
    """The six matrices factored by :func:`ldr_decompose`."""
    e1i, e2i = connection_inverses(p)
    C = constants().C
    t1 = e1i @ C / 3.0
    t2 = e2i @ C / 3.0
    qi = q_matrices(p.s).q_inf
    return [
        t1,
        inverse(qi[3]) @ t1 @ qi[6],
        qi[5] @ t2 @ inverse(qi[8]),
        t2,
        inverse(qi[6]) @ t2 @ qi[3],
        qi[8] @ t1 @ inverse(qi[5]),
    ]


def ldr_decompose(p: ConnectionParams) -> list[LDRFactors]:
    """Closed-form L D R factorizations of the six jump matrices on |zeta| = 1.

    L and R have unit diagonal; D is diagonal with entries drawn from
    ``{1/(3A), 3A, 1}``.  At ``B = 0`` every factor is the identity.
    """
    p.validate()
    a, s = p.a_r, p.s
    if p.b == 0:
        return [LDRFactors(k, identity(), identity(), identity()) for k in range(1, 7)]
    b = p.b / a
    bb = p.b.conjugate() / a
    m = abs(p.b) ** 2 / a**2
    t, ti = 3.0 * a, 1.0 / (3.0 * a)
    rows = [
        (
            [[1, -b - W2 * m, -bb], [0, 1, 0], [0, W2 * b, 1]],
            [ti, t, 1],
            [[1, 0, 0], [-bb - W1 * m, 1, W1 * bb], [-b, 0, 1]],
        ),
        (
            [[1, W1 * bb, 0], [0, 1, 0], [-b, -W1 * m - W1 * s - bb, 1]],
            [1, t, ti],
            [[1, 0, -bb], [W2 * b, 1, -W2 * m - W2 * s - b], [0, 0, 1]],
        ),
        (
            [[1, 0, 0], [W2 * b, 1, 0], [-W2 * m - b, -bb, 1]],
            [t, 1, ti],
            [[1, W1 * bb, -W1 * m - bb], [0, 1, -b], [0, 0, 1]],
        ),
        (
            [[1, 0, 0], [-W1 * m - W1 * s - bb, 1, -b], [W1 * bb, 0, 1]],
            [t, ti, 1],
            [[1, -W2 * m - W2 * s - b, W2 * b], [0, 1, 0], [0, -bb, 1]],
        ),
        (
            [[1, 0, W2 * b], [-bb, 1, -W2 * m - b], [0, 0, 1]],
            [1, ti, t],
            [[1, -b, 0], [0, 1, 0], [W1 * bb, -W1 * m - bb, 1]],
        ),
        (
            [[1, -b, -W1 * m - W1 * s - bb], [0, 1, W1 * bb], [0, 0, 1]],
            [ti, 1, t],
            [[1, 0, 0], [-bb, 1, 0], [-W2 * m - W2 * s - b, W2 * b, 1]],
        ),
    ]
    return [
        LDRFactors(k, np.array(l, dtype=complex), diag(d), np.array(r, dtype=complex))
        for k, (l, d, r) in enumerate(rows, start=1)
    ]


def d_diagonals(a_r: float) -> list[np.ndarray]:
    """Diagonal entries of D_1..D_6 as real arrays."""
    t, ti = 3.0 * a_r, 1.0 / (3.0 * a_r)
    return [
        np.array(d)
        for d in ([ti, t, 1.0], [1.0, t, ti], [t, 1.0, ti], [t, ti, 1.0], [1.0, ti, t], [ti, 1.0, t])
    ]


def k_lambda(gamma: float, q: float) -> Mat3:
    """Right-hand side ``(1/l0) K^* diag(1/(l1 q), 1, q/l1) K`` of the
    factorization of ``(S1^(0))^* C E1^{-1} S1^(0)``."""
    if not (-0.5 < gamma < 1.0):
        raise DomainError(f"gamma={gamma!r} outside (-1/2, 1)")
    if not q > 0.0:
        raise DomainError(f"q={q!r} must be positive")
    t = math.pi * (1.0 - gamma) / 3.0
    lam0 = 4.0 / 3.0 * math.sin(t) ** 2
    lam1 = 2.0 * math.cos(t)
    wg = cmath.exp(2j * math.pi * gamma / 3.0)
    kmat = np.array(
        [
            [1, wg, 1 / wg],
            [1, W1, W2],
            [1, W2 / wg, wg / W2],
        ],
        dtype=complex,
    )
    mid = diag([1.0 / (lam1 * q), 1.0, q / lam1])
    return kmat.conj().T @ mid @ kmat / lam0


def e1_factorization_residual(p: ConnectionParams, gamma: float, q: float) -> float:
    """Scaled residual of the K/Lambda factorization of E1 at zeta = 0."""
    rhs = k_lambda(gamma, q)
    e1i, _ = connection_inverses(p)
    s1z = stokes_matrices(p.s).s1_zero
    lhs = s1z.conj().T @ constants().C @ e1i @ s1z
    return residual(lhs, rhs)
