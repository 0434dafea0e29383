"""Fixed-size complex 3x3 linear algebra and the constant matrices of the
rank-3 Toda Lax system.

A ``Mat3`` is a ``numpy.ndarray`` of shape ``(3, 3)`` and dtype
``complex128``.  Constants are returned as read-only arrays so they can be
shared freely between threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError, SingularMatrix

Mat3 = np.ndarray

EPS = np.finfo(float).eps
SQRT3 = np.sqrt(3.0)

# omega = exp(2 pi i / 3), stored once; all powers come from this table.
OMEGA = complex(-0.5, SQRT3 / 2.0)
_OMEGA_POW = (1.0 + 0.0j, OMEGA, OMEGA.conjugate())


def omega_pow(k: int) -> complex:
    """Return omega**k by table lookup (exact period 3)."""
    return _OMEGA_POW[k % 3]


def _frozen(a) -> Mat3:
    m = np.array(a, dtype=np.complex128)
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class TodaConstants:
    omega: complex
    d3: Mat3
    Omega: Mat3
    C: Mat3
    Delta: Mat3
    Pi: Mat3


@lru_cache(maxsize=1)
def constants() -> TodaConstants:
    """Return the constant bundle (omega, d3, Omega, C, Delta, Pi)."""
    w0, w1, w2 = _OMEGA_POW
    return TodaConstants(
        omega=OMEGA,
        d3=_frozen(np.diag([w0, w1, w2])),
        Omega=_frozen([[1, 1, 1], [1, w1, w2], [1, w2, w1]]),
        C=_frozen([[1, 0, 0], [0, 0, 1], [0, 1, 0]]),
        Delta=_frozen([[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
        Pi=_frozen([[0, 1, 0], [0, 0, 1], [1, 0, 0]]),
    )


def identity() -> Mat3:
    return np.eye(3, dtype=np.complex128)


def as_mat3(a) -> Mat3:
    """Coerce to a finite complex 3x3 array."""
    m = np.asarray(a, dtype=np.complex128)
    if m.shape != (3, 3):
        raise DomainError(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DomainError("matrix has non-finite entries")
    return m


def _cofactors(m: Mat3) -> Mat3:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return np.array(
        [
            [e * i - f * h, f * g - d * i, d * h - e * g],
            [c * h - b * i, a * i - c * g, b * g - a * h],
            [b * f - c * e, c * d - a * f, a * e - b * d],
        ]
    )


def determinant(m) -> complex:
    """Cofactor expansion of the 3x3 determinant."""
    m = as_mat3(m)
    cof = _cofactors(m)
    return complex(m[0, 0] * cof[0, 0] + m[0, 1] * cof[0, 1] + m[0, 2] * cof[0, 2])


def inverse(m, det: complex | None = None) -> Mat3:
    """Adjugate inverse of a 3x3 matrix.

    Parameters
    ----------
    m : array_like
        The matrix.
    det : complex, optional
        Known exact determinant.  Matrices with a fixed determinant but
        large entries (E1 near s = -3) lose most of their digits in the
        cofactor expansion; supplying the exact value avoids it.

    Raises
    ------
    SingularMatrix
        If ``|det m| <= 1e3 * eps * ||m||**3`` (infinity norm) for a computed
        determinant, or if a supplied one is zero.
    """
    m = as_mat3(m)
    cof = _cofactors(m)
    if det is None:
        det = m[0, 0] * cof[0, 0] + m[0, 1] * cof[0, 1] + m[0, 2] * cof[0, 2]
        norm = np.abs(m).sum(axis=1).max()
        if abs(det) <= 1e3 * EPS * norm**3:
            raise SingularMatrix(f"determinant {abs(det):.3e} below threshold")
    elif det == 0:
        raise SingularMatrix("supplied determinant is zero")
    return cof.T / det


def transpose_inverse(m) -> Mat3:
    """Return ``(m^T)^{-1}``, written M^{T-1} in the identity corpus."""
    return inverse(m).T


def diag(entries) -> Mat3:
    return np.diag(np.asarray(entries, dtype=np.complex128))


def scale(*mats) -> float:
    """Largest entry magnitude over the given matrices."""
    return max(float(np.abs(m).max()) for m in mats)


def residual(a, b) -> float:
    """Scaled entrywise distance ``max|a - b| / (1 + max|entry|)``."""
    a = np.asarray(a)
    b = np.asarray(b)
    return float(np.abs(a - b).max() / (1.0 + scale(a, b)))


def allclose3(a, b, tol: float = 1e-12) -> bool:
    """Matrix equality used throughout the tests."""
    return residual(a, b) <= tol
