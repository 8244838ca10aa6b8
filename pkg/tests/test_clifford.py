"""Pauli words, the normalizer-based Clifford test, and generator closures.

The 2-qubit order-11520 closures are exercised in the acceptance suite; here
the 1-qubit groups keep the runtime low.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from pauliforge.algebra import hadamard, pauli, pauli_root_matrix
from pauliforge.clifford import (
    ClosureOverflowError,
    PauliWord,
    bfs_closure,
    clifford_identities_check,
    generator_set,
    generators_equivalent,
    is_clifford,
    is_pauli_word,
)


def test_pauli_word_matrices():
    assert np.allclose(PauliWord((1,), 0).matrix(), pauli(1))
    assert np.allclose(PauliWord((3,), 2).matrix(), -pauli(3))
    xz = PauliWord((1, 3), 1).matrix()
    assert np.allclose(xz, 1j * np.kron(pauli(1), pauli(3)))


def test_pauli_word_product_matches_matrices():
    for la, lb in itertools.product(itertools.product((0, 1, 2, 3), repeat=2), repeat=2):
        for pa, pb in ((0, 0), (1, 3), (2, 2)):
            a, b = PauliWord(la, pa), PauliWord(lb, pb)
            assert np.allclose((a * b).matrix(), a.matrix() @ b.matrix()), (a, b)


def test_pauli_word_validation():
    with pytest.raises(ValueError):
        PauliWord((), 0)
    with pytest.raises(ValueError):
        PauliWord((4,), 0)
    with pytest.raises(ValueError):
        PauliWord((1,), 5)
    with pytest.raises(ValueError):
        PauliWord((1,), 0) * PauliWord((1, 1), 0)


def test_is_pauli_word_recognition():
    assert is_pauli_word(pauli(2)) == PauliWord((2,), 0)
    assert is_pauli_word(-1j * np.kron(pauli(1), np.eye(2))) == PauliWord((1, 0), 3)
    assert is_pauli_word(hadamard()) is None


def test_is_clifford_accepts_s_and_h_rejects_t():
    ok, _ = is_clifford(pauli_root_matrix(3, Fraction(1, 2)))
    assert ok
    ok, _ = is_clifford(hadamard())
    assert ok
    ok, witness = is_clifford(pauli_root_matrix(3, Fraction(1, 4)))
    assert not ok
    name, conj = witness
    assert name == "X0" and is_pauli_word(conj) is None


@given(st.sampled_from(("paper", "standard", "negator")), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_random_generator_products_stay_clifford(kind, seed):
    import random

    rng = random.Random(seed)
    _, gens = generator_set(kind, 1)
    u = np.eye(2, dtype=complex)
    for _ in range(rng.randint(1, 12)):
        u = rng.choice(gens) @ u
    ok, _ = is_clifford(u)
    assert ok


def test_single_qubit_closure_order_is_24():
    for kind in ("paper", "standard", "negator"):
        labels, gens = generator_set(kind, 1)
        closure = bfs_closure(gens, labels=labels)
        assert closure.order == 24, kind
        assert len(closure.words) == 24 and closure.words[0] == "e"


def test_all_paper_axis_pairs_generate_the_same_group():
    base = generator_set("standard", 1)[1]
    for a, b in itertools.permutations((1, 2, 3), 2):
        gens = generator_set("paper", 1, a=a, b=b)[1]
        assert generators_equivalent(base, gens), (a, b)


def test_closure_is_generator_order_independent():
    _, gens = generator_set("standard", 1)
    forward = bfs_closure(gens)
    backward = bfs_closure(list(reversed(gens)))
    assert forward.keys() == backward.keys()
    # a redundant generator changes nothing
    padded = bfs_closure(gens + [gens[0] @ gens[1]])
    assert padded.keys() == forward.keys()


def test_closure_overflow_budget():
    _, gens = generator_set("standard", 1)
    with pytest.raises(ClosureOverflowError) as info:
        bfs_closure(gens, max_order=10)
    assert info.value.max_order == 10
    with pytest.raises(ValueError):
        bfs_closure([])
    with pytest.raises(ValueError):
        bfs_closure([np.ones((2, 2), dtype=complex)])


def test_clifford_identities():
    assert all(ok for _, ok in clifford_identities_check())
    names = [name for name, _ in clifford_identities_check()]
    assert names == ["Z = SS", "X = HSSH", "Y = SHSSHSSS", "Y = SXS+"]


def test_generator_set_validation():
    with pytest.raises(ValueError):
        generator_set("paper", 3)
    with pytest.raises(ValueError):
        generator_set("frob", 1)
    labels, gens = generator_set("standard", 2)
    assert len(gens) == 6  # both CNOT orientations plus S, H on each line
    assert all(g.shape == (4, 4) for g in gens)
