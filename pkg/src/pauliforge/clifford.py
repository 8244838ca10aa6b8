"""Pauli words, Clifford membership, and generator-set closures.

Membership uses the normalizer condition: U is Clifford iff conjugating each
of the 2n generators X_i, Z_i lands back in the Pauli group. Closures are
plain breadth-first multiplication with elements canonicalized modulo global
phase.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import (
    EPS,
    X_AXIS,
    Z_AXIS,
    identity,
    kron,
    negator_matrix,
    pauli,
    pauli_root_matrix,
    translation_matrix,
)
from .circuit import Gate, PauliRoot
from .semantics import gate_unitary

MAX_PAULI_QUBITS = 3
DEFAULT_MAX_ORDER = 20000

_PHASES = (1, 1j, -1, -1j)


class ClosureOverflowError(RuntimeError):
    """Raised when a closure would exceed its element budget."""

    def __init__(self, max_order: int, partial_order: int):
        super().__init__(
            f"group closure exceeds max_order={max_order} (reached {partial_order} elements)"
        )
        self.max_order = max_order
        self.partial_order = partial_order


@dataclass(frozen=True)
class PauliWord:
    """A phased tensor of identity/Pauli factors; phase is a power of i."""

    labels: tuple[int, ...]  # one entry per qubit, 0 for identity, 1..3 for X/Y/Z
    phase: int  # exponent of i, in {0, 1, 2, 3}

    def __post_init__(self):
        if not self.labels or any(l not in (0, 1, 2, 3) for l in self.labels):
            raise ValueError("labels must be nonempty and in 0..3")
        if self.phase not in (0, 1, 2, 3):
            raise ValueError("phase must be a power of i in 0..3")

    @property
    def n(self) -> int:
        return len(self.labels)

    def matrix(self) -> np.ndarray:
        m = np.array([[_PHASES[self.phase]]], dtype=complex)
        for label in self.labels:
            m = kron(m, identity(1) if label == 0 else pauli(label))
        return m

    def __mul__(self, other: "PauliWord") -> "PauliWord":
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        labels = []
        phase = (self.phase + other.phase) % 4
        for a, b in zip(self.labels, other.labels):
            if a == 0 or b == 0:
                labels.append(a or b)
            elif a == b:
                labels.append(0)
            else:
                c = 6 - a - b  # the third axis
                labels.append(c)
                # sigma_a sigma_b = +/- i sigma_c, sign by cyclic order
                phase = (phase + (1 if (a, b) in ((1, 2), (2, 3), (3, 1)) else 3)) % 4
        return PauliWord(tuple(labels), phase)


def _qubit_count(u: np.ndarray) -> int:
    dim = u.shape[0]
    if u.shape != (dim, dim) or dim & (dim - 1) or dim == 0:
        raise ValueError(f"matrix dimension {u.shape} is not a square power of two")
    return dim.bit_length() - 1


def _unphased_words(n: int) -> list[tuple[tuple[int, ...], np.ndarray]]:
    out = []
    for labels in itertools.product((0, 1, 2, 3), repeat=n):
        out.append((labels, PauliWord(labels, 0).matrix()))
    return out


def is_pauli_word(u: np.ndarray, eps: float = EPS) -> PauliWord | None:
    """Matches U against all phased Pauli tensors; None when no match."""
    n = _qubit_count(u)
    if n > MAX_PAULI_QUBITS:
        raise ValueError(f"pauli word matching capped at {MAX_PAULI_QUBITS} qubits")
    for labels, m in _unphased_words(n):
        for phase in range(4):
            if np.max(np.abs(u - _PHASES[phase] * m)) <= eps:
                return PauliWord(labels, phase)
    return None


def _pauli_on_line(axis: int, line: int, n: int) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for i in range(n):
        m = kron(m, pauli(axis) if i == line else identity(1))
    return m


def is_clifford(
    u: np.ndarray, eps: float = EPS
) -> tuple[bool, tuple[str, np.ndarray] | None]:
    """Normalizer test against the 2n generators X_i, Z_i.

    Returns (True, None) or (False, (generator name, its non-Pauli
    conjugate)).
    """
    n = _qubit_count(u)
    if n > MAX_PAULI_QUBITS:
        raise ValueError(f"clifford test capped at {MAX_PAULI_QUBITS} qubits")
    for line in range(n):
        for axis, name in ((X_AXIS, "X"), (Z_AXIS, "Z")):
            conj = u @ _pauli_on_line(axis, line, n) @ u.conj().T
            if is_pauli_word(conj, eps) is None:
                return False, (f"{name}{line}", conj)
    return True, None


@dataclass(frozen=True)
class GroupClosure:
    """A finite matrix group modulo global phase."""

    order: int
    elements: tuple[np.ndarray, ...]  # canonical forms, row-major rounded
    words: tuple[str, ...]  # one generator word per element

    def keys(self) -> frozenset[bytes]:
        return frozenset(e.tobytes() for e in self.elements)


def _canonical(u: np.ndarray) -> np.ndarray:
    flat = u.reshape(-1)
    cutoff = 0.5 * np.max(np.abs(flat))
    pivot = flat[np.flatnonzero(np.abs(flat) > cutoff)[0]]
    return np.round(u / pivot, 6) + (0.0 + 0.0j)  # normalize -0.0 in both parts

def bfs_closure(
    gens: list[np.ndarray],
    max_order: int = DEFAULT_MAX_ORDER,
    labels: list[str] | None = None,
) -> GroupClosure:
    """Breadth-first closure under left-multiplication by the generators.

    Elements are kept modulo global phase. A canonical-form hash lookup is
    confirmed by a full matrix comparison before an element is treated as
    seen. Raises ClosureOverflowError when the order would exceed max_order.
    """
    if not gens:
        raise ValueError("need at least one generator")
    dim = gens[0].shape[0]
    if any(g.shape != (dim, dim) for g in gens):
        raise ValueError("generators have mixed dimensions")
    for g in gens:
        if np.max(np.abs(g @ g.conj().T - np.eye(dim))) > 10 * EPS:
            raise ValueError("generators must be unitary")
    if labels is None:
        labels = [f"g{i}" for i in range(len(gens))]

    seen: dict[bytes, np.ndarray] = {}
    elements: list[np.ndarray] = []
    words: list[str] = []

    def add(u: np.ndarray, word: str) -> bool:
        canon = _canonical(u)
        key = canon.tobytes()
        prev = seen.get(key)
        if prev is not None and np.max(np.abs(prev - canon)) <= 1e-5:
            return False
        if len(elements) >= max_order:
            raise ClosureOverflowError(max_order, len(elements) + 1)
        seen[key] = canon
        elements.append(canon)
        words.append(word)
        frontier.append((u, word))
        return True

    frontier: list[tuple[np.ndarray, str]] = []
    add(np.eye(dim, dtype=complex), "e")
    while frontier:
        u, word = frontier.pop(0)
        for g, label in zip(gens, labels):
            add(g @ u, label if word == "e" else f"{label}.{word}")
    return GroupClosure(len(elements), tuple(elements), tuple(words))


def generators_equivalent(
    a: list[np.ndarray], b: list[np.ndarray], max_order: int = DEFAULT_MAX_ORDER
) -> bool:
    """Whether two generator lists produce the same group modulo phase."""
    return bfs_closure(a, max_order).keys() == bfs_closure(b, max_order).keys()


def clifford_identities_check(eps: float = EPS) -> list[tuple[str, bool]]:
    """Derivations of X, Y, Z from S and H, plus the S-conjugation of X."""
    h = translation_matrix(X_AXIS, Z_AXIS)
    s = pauli_root_matrix(Z_AXIS, Fraction(1, 2))
    close = lambda m, axis: bool(np.max(np.abs(m - pauli(axis))) <= eps)
    return [
        ("Z = SS", close(s @ s, 3)),
        ("X = HSSH", close(h @ s @ s @ h, 1)),
        ("Y = SHSSHSSS", close(s @ h @ s @ s @ h @ s @ s @ s, 2)),
        ("Y = SXS+", close(s @ pauli(1) @ s.conj().T, 2)),
    ]


# --- named generator sets ---------------------------------------------------


def _embed(u: np.ndarray, line: int, n: int) -> np.ndarray:
    m = np.array([[1.0 + 0j]])
    for i in range(n):
        m = kron(m, u if i == line else identity(1))
    return m


def _controlled(axis: int, ctrl: int, target: int) -> np.ndarray:
    return gate_unitary(Gate(PauliRoot(axis, Fraction(1)), target, ((ctrl, True),)), 2)


def generator_set(
    kind: str, n: int, a: int = X_AXIS, b: int = Z_AXIS
) -> tuple[list[str], list[np.ndarray]]:
    """Builds one of the named generator families on 1 or 2 qubits.

    kind "paper" is {controlled sigma_a, sqrt(sigma_a), rho_ab}, "standard"
    is {CNOT, S, H}, and "negator" replaces the root with N_a(pi/4). On two
    qubits every single-qubit generator is embedded on both lines and the
    controlled gate appears in both orientations.
    """
    if n not in (1, 2):
        raise ValueError("generator sets are defined for 1 or 2 qubits")
    if kind == "paper":
        single = [
            (f"sqrt(s{a})", pauli_root_matrix(a, Fraction(1, 2))),
            (f"rho{a}{b}", translation_matrix(a, b)),
        ]
        ctrl_axis = a
    elif kind == "standard":
        single = [
            ("S", pauli_root_matrix(Z_AXIS, Fraction(1, 2))),
            ("H", translation_matrix(X_AXIS, Z_AXIS)),
        ]
        ctrl_axis = X_AXIS
    elif kind == "negator":
        single = [
            (f"N{a}(pi/4)", negator_matrix(a, np.pi / 4)),
            (f"rho{a}{b}", translation_matrix(a, b)),
        ]
        ctrl_axis = a
    else:
        raise ValueError(f"unknown generator set {kind!r}")

    labels: list[str] = []
    mats: list[np.ndarray] = []
    if n == 1:
        for name, m in single:
            labels.append(name)
            mats.append(m)
    else:
        for ctrl, target in ((0, 1), (1, 0)):
            labels.append(f"C{ctrl}(s{ctrl_axis})@{target}")
            mats.append(_controlled(ctrl_axis, ctrl, target))
        for name, m in single:
            for line in range(2):
                labels.append(f"{name}@{line}")
                mats.append(_embed(m, line, 2))
    return labels, mats
