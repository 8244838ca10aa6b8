"""Shared hypothesis strategies for building valid random circuits, plus the
acceptance checklist printed after the run."""

from fractions import Fraction

import hypothesis.strategies as st

from pauliforge import Circuit, Gate, Negator, PauliRoot, Translation

axes = st.sampled_from((1, 2, 3))

exponents = st.builds(
    Fraction,
    st.integers(min_value=-8, max_value=8),
    st.sampled_from((1, 2, 3, 4, 8)),
)

pauli_roots = st.builds(PauliRoot, axes, exponents)
translations = st.builds(Translation, axes, axes)
negators = st.builds(
    Negator,
    axes,
    st.floats(min_value=-6.0, max_value=6.0, allow_nan=False, allow_infinity=False),
)
named_ops = st.one_of(pauli_roots, translations, negators)


@st.composite
def gates(draw, n):
    target = draw(st.integers(min_value=0, max_value=n - 1))
    others = [line for line in range(n) if line != target]
    picked = draw(
        st.lists(st.sampled_from(others), unique=True, max_size=min(len(others), 3))
        if others
        else st.just([])
    )
    controls = tuple((line, draw(st.booleans())) for line in picked)
    return Gate(draw(named_ops), target, controls)


@st.composite
def circuits(draw, max_qubits=5, max_gates=12):
    n = draw(st.integers(min_value=1, max_value=max_qubits))
    gate_list = draw(st.lists(gates(n), max_size=max_gates))
    return Circuit(n, tuple(gate_list))


@st.composite
def small_circuits(draw):
    """Kept to sizes where dense simulation is instant."""
    return draw(circuits(max_qubits=3, max_gates=6))


# one "PASS/FAIL  <criterion>" line per acceptance test, shown after the run
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance checklist")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
