"""Numeric meaning of circuits: dense unitaries, phase-insensitive
equivalence, and classical truth tables.

Line 0 is the most significant bit of the basis-state index, matching the
top-to-bottom drawing order.
"""

from __future__ import annotations

import numpy as np

from . import algebra
from .circuit import Circuit, Gate, NamedOp, Negator, PauliRoot, Translation, require_valid

MAX_DENSE_QUBITS = 12


def op_matrix(op: NamedOp) -> np.ndarray:
    if isinstance(op, PauliRoot):
        return algebra.pauli_root_matrix(op.axis, op.exp)
    if isinstance(op, Translation):
        return algebra.translation_matrix(op.a, op.b)
    if isinstance(op, Negator):
        return algebra.negator_matrix(op.axis, op.theta)
    raise TypeError(f"unknown operation {op!r}")


def _bit(index: int, line: int, n: int) -> int:
    return (index >> (n - 1 - line)) & 1


def gate_unitary(g: Gate, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix for one gate, controls and polarities included."""
    if n > MAX_DENSE_QUBITS:
        raise ValueError(f"dense simulation capped at {MAX_DENSE_QUBITS} qubits, got {n}")
    u = op_matrix(g.op)
    dim = 1 << n
    full = np.eye(dim, dtype=complex)
    tbit = 1 << (n - 1 - g.target)
    for j in range(dim):
        if j & tbit:
            continue
        if all(_bit(j, line, n) == int(pol) for line, pol in g.controls):
            j1 = j | tbit
            full[j, j] = u[0, 0]
            full[j1, j] = u[1, 0]
            full[j, j1] = u[0, 1]
            full[j1, j1] = u[1, 1]
    return full


def circuit_unitary(c: Circuit) -> np.ndarray:
    require_valid(c)
    dim = 1 << c.n
    acc = np.eye(dim, dtype=complex)
    for g in c.gates:
        acc = gate_unitary(g, c.n) @ acc
    return algebra.snap(acc, tol=1e-14)


def equivalent(a: Circuit, b: Circuit, eps: float = algebra.EPS) -> tuple[bool, complex | None]:
    """Same action up to one global phase; returns (flag, phase) like
    equal_up_to_phase."""
    if a.n != b.n:
        return False, None
    return algebra.equal_up_to_phase(circuit_unitary(a), circuit_unitary(b), eps)


def truth_table(c: Circuit, eps: float = algebra.EPS) -> list[int]:
    """The permutation of basis states, for circuits whose unitary is a
    permutation matrix up to per-state phases. Raises ValueError otherwise.
    """
    u = circuit_unitary(c)
    dim = u.shape[0]
    perm = []
    for col in range(dim):
        rows = np.flatnonzero(np.abs(u[:, col]) > eps)
        if len(rows) != 1 or abs(abs(u[rows[0], col]) - 1.0) > eps:
            raise ValueError(f"not a classical permutation: column {col} is not a unit vector")
        perm.append(int(rows[0]))
    return perm
