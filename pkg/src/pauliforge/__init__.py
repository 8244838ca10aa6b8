"""Rewriting toolkit for circuits built from rational roots of the Pauli matrices."""

__version__ = "0.1.0"

from .algebra import (
    AXES,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    equal_up_to_phase,
    kron,
    negator_matrix,
    pauli,
    pauli_root_matrix,
    rotation_matrix,
    translation_matrix,
)
from .circuit import Circuit, CircuitStats, Gate, NamedOp, Negator, PauliRoot, Translation
from .semantics import circuit_unitary, equivalent, gate_unitary, truth_table
from .text import ParseError, SourceSpan, parse, print_circuit

__all__ = [
    "AXES",
    "X_AXIS",
    "Y_AXIS",
    "Z_AXIS",
    "Circuit",
    "CircuitStats",
    "Gate",
    "NamedOp",
    "Negator",
    "ParseError",
    "PauliRoot",
    "SourceSpan",
    "Translation",
    "circuit_unitary",
    "equal_up_to_phase",
    "equivalent",
    "gate_unitary",
    "kron",
    "negator_matrix",
    "parse",
    "pauli",
    "pauli_root_matrix",
    "print_circuit",
    "rotation_matrix",
    "translation_matrix",
    "truth_table",
]
