"""2x2 building blocks: Pauli matrices, Bloch rotations, Pauli roots,
translation matrices, negators, and phase-aware matrix comparison.

Axes are numbered 1 (X), 2 (Y), 3 (Z); the ordering is fixed so that the
Levi-Civita symbol over (1, 2, 3) is well defined.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

X_AXIS, Y_AXIS, Z_AXIS = 1, 2, 3
AXES = (X_AXIS, Y_AXIS, Z_AXIS)

EPS = 1e-9
SNAP = 1e-12

_I2 = np.eye(2, dtype=complex)
_PAULI = {
    X_AXIS: np.array([[0, 1], [1, 0]], dtype=complex),
    Y_AXIS: np.array([[0, -1j], [1j, 0]], dtype=complex),
    Z_AXIS: np.array([[1, 0], [0, -1]], dtype=complex),
}


def levi_civita(a: int, b: int, c: int) -> int:
    if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        return 1
    if (a, b, c) in ((3, 2, 1), (1, 3, 2), (2, 1, 3)):
        return -1
    return 0


def snap(m: np.ndarray, tol: float = SNAP) -> np.ndarray:
    """Zero out negligible real/imaginary parts; cosmetic only."""
    out = m.copy()
    re = out.real.copy()
    im = out.imag.copy()
    re[np.abs(re) < tol] = 0.0
    im[np.abs(im) < tol] = 0.0
    return re + 1j * im


def pauli(a: int) -> np.ndarray:
    return _PAULI[a].copy()


def identity(n: int = 1) -> np.ndarray:
    return np.eye(2**n, dtype=complex)


def rotation_matrix(a: int, theta: float) -> np.ndarray:
    """R_a(theta) = cos(theta/2) I - i sin(theta/2) sigma_a."""
    if not math.isfinite(theta):
        raise ValueError(f"rotation angle must be finite, got {theta!r}")
    return snap(math.cos(theta / 2) * _I2 - 1j * math.sin(theta / 2) * _PAULI[a])


def pauli_root_matrix(a: int, e: Fraction) -> np.ndarray:
    """sigma_a^(m/k) = e^(i pi m / 2k) R_a(pi m / k)."""
    m, k = e.numerator, e.denominator
    phase = cmath.exp(1j * math.pi * m / (2 * k))
    return snap(phase * rotation_matrix(a, math.pi * m / k))


def translation_matrix(a: int, b: int) -> np.ndarray:
    """rho_ab = (sigma_a + sigma_b) / sqrt(2); rho_aa = I."""
    if a == b:
        return identity()
    return snap((_PAULI[a] + _PAULI[b]) / math.sqrt(2))


def hadamard() -> np.ndarray:
    return translation_matrix(X_AXIS, Z_AXIS)


def negator_matrix(a: int, theta: float) -> np.ndarray:
    """N_a(theta) = I + i sin(theta) e^(i theta) (I - sigma_a)."""
    if not math.isfinite(theta):
        raise ValueError(f"negator angle must be finite, got {theta!r}")
    coef = 1j * math.sin(theta) * cmath.exp(1j * theta)
    return snap(_I2 + coef * (_I2 - _PAULI[a]))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(a, b)


def is_unitary(u: np.ndarray, eps: float = 10 * EPS) -> bool:
    n = u.shape[0]
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(n))) <= eps)


def equal_up_to_phase(
    a: np.ndarray, b: np.ndarray, eps: float = EPS
) -> tuple[bool, complex | None]:
    """Whether a = lambda * b for unit-modulus lambda; returns (flag, lambda).

    lambda is read off at the largest-magnitude entry of b.
    """
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    pivot = b[idx]
    if abs(pivot) < eps:
        return bool(np.max(np.abs(a - b)) <= eps), 1.0 + 0j
    lam = a[idx] / pivot
    if abs(abs(lam) - 1.0) > eps:
        return False, None
    if np.max(np.abs(a - lam * b)) > eps:
        return False, None
    return True, complex(lam)
