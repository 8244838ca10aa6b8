"""Matrix-level identity suite for the 2x2 building blocks and the circuit
identities behind the rewrite catalog, checked at eps = 1e-9 over all
admissible axis choices and root degrees k in {1, 2, 4}.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from pauliforge import algebra
from pauliforge.algebra import (
    EPS,
    X_AXIS,
    Y_AXIS,
    Z_AXIS,
    equal_up_to_phase,
    hadamard,
    identity,
    is_unitary,
    kron,
    levi_civita,
    negator_matrix,
    pauli,
    pauli_root_matrix,
    rotation_matrix,
    translation_matrix,
)

AXES = (X_AXIS, Y_AXIS, Z_AXIS)
KS = (1, 2, 4)
THETAS = (-2.7, -1.0, -0.3, 0.0, 0.4, 1.1, 2.9)


def root(a, k):
    return pauli_root_matrix(a, Fraction(1, k))


def close(x, y, eps=EPS):
    return np.max(np.abs(np.asarray(x) - np.asarray(y))) <= eps


def test_pauli_matrices_entries():
    assert close(pauli(1), [[0, 1], [1, 0]])
    assert close(pauli(2), [[0, -1j], [1j, 0]])
    assert close(pauli(3), [[1, 0], [0, -1]])


def test_pauli_unitary_hermitian_involutions():
    for a in AXES:
        s = pauli(a)
        assert is_unitary(s)
        assert close(s, s.conj().T)
        assert close(s @ s, identity(1))


def test_rotation_definition():
    for a in AXES:
        for theta in THETAS:
            expected = math.cos(theta / 2) * identity(1) - 1j * math.sin(theta / 2) * pauli(a)
            assert close(rotation_matrix(a, theta), expected)


def test_pauli_as_half_turn_rotation():
    for a in AXES:
        assert close(pauli(a), np.exp(1j * np.pi / 2) * rotation_matrix(a, np.pi))


def test_rotation_dagger_three_ways():
    for a in AXES:
        for theta in THETAS:
            r = rotation_matrix(a, theta)
            assert close(r.conj().T, rotation_matrix(a, -theta))
            for b in AXES:
                if b == a:
                    continue
                assert close(r.conj().T, pauli(b) @ r @ pauli(b))
                assert close(r, pauli(b) @ r.conj().T @ pauli(b))


def test_rotation_additivity():
    for a in AXES:
        for t1 in THETAS:
            for t2 in THETAS:
                assert close(
                    rotation_matrix(a, t1) @ rotation_matrix(a, t2),
                    rotation_matrix(a, t1 + t2),
                )


def test_roots_as_rotations():
    for a in AXES:
        for k in KS:
            phase = np.exp(1j * np.pi / (2 * k))
            assert close(root(a, k), phase * rotation_matrix(a, np.pi / k))
            assert close(
                root(a, k).conj().T,
                np.conj(phase) * rotation_matrix(a, np.pi / k).conj().T,
            )


def test_rotations_as_roots():
    for a in AXES:
        for k in KS:
            phase = np.exp(-1j * np.pi / (2 * k))
            assert close(rotation_matrix(a, np.pi / k), phase * root(a, k))


def test_kth_root_really_is_one():
    for a in AXES:
        for k in KS:
            acc = identity(1)
            for _ in range(k):
                acc = acc @ root(a, k)
            assert close(acc, pauli(a))


def test_root_as_conjugated_dagger():
    for a in AXES:
        for b in AXES:
            if b == a:
                continue
            for k in KS:
                lhs = root(a, k)
                rhs = np.exp(1j * np.pi / k) * pauli(b) @ root(a, k).conj().T @ pauli(b)
                assert close(lhs, rhs)
                assert close(
                    root(a, k).conj().T,
                    np.exp(-1j * np.pi / k) * pauli(b) @ root(a, k) @ pauli(b),
                )


def test_translation_conjugates_paulis():
    for a in AXES:
        for b in AXES:
            if a == b:
                continue
            rho = translation_matrix(a, b)
            assert close(pauli(a), rho @ pauli(b) @ rho)


def test_translation_matrix_forms():
    for a in AXES:
        for b in AXES:
            if a == b:
                assert close(translation_matrix(a, b), identity(1))
                continue
            rho = translation_matrix(a, b)
            assert close(rho, (pauli(a) + pauli(b)) / np.sqrt(2))
            assert close(rho, translation_matrix(b, a))
            assert close(rho @ rho, identity(1))
            product = (
                np.exp(1j * np.pi / 2)
                * rotation_matrix(a, np.pi / 2)
                @ rotation_matrix(b, np.pi / 2)
                @ rotation_matrix(a, np.pi / 2)
            )
            assert close(rho, product)


def test_translation_conjugates_roots():
    for a in AXES:
        for b in AXES:
            if a == b:
                continue
            rho = translation_matrix(a, b)
            for k in KS:
                assert close(root(a, k), rho @ root(b, k) @ rho)


def test_hadamard_forms():
    h = hadamard()
    assert close(h, np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    assert close(h, (pauli(1) + pauli(3)) / np.sqrt(2))
    assert close(h, translation_matrix(X_AXIS, Z_AXIS))
    product = (
        np.exp(1j * np.pi / 2)
        * rotation_matrix(1, np.pi / 2)
        @ rotation_matrix(3, np.pi / 2)
        @ rotation_matrix(1, np.pi / 2)
    )
    assert close(h, product)


def test_hadamard_swaps_x_and_z():
    h = hadamard()
    assert close(pauli(3), h @ pauli(1) @ h)
    assert close(pauli(1), h @ pauli(3) @ h)


def test_pauli_product_relations():
    # commutator/anticommutator combination and the product formula
    for a in AXES:
        for b in AXES:
            sa, sb = pauli(a), pauli(b)
            comm = sa @ sb - sb @ sa
            anti = sa @ sb + sb @ sa
            total = 2j * sum(levi_civita(a, b, c) * pauli(c) for c in AXES)
            if a == b:
                total = total + 2 * identity(1)
            assert close(comm + anti, total)
            product = 1j * sum(levi_civita(a, b, c) * pauli(c) for c in AXES)
            if a == b:
                product = product + identity(1)
            assert close(sa @ sb, product)


def test_root_conjugated_by_sibling_square_root():
    # cyclic (a, b, c): sqrt(sigma_c) sigma_a^{1/k} sqrt(sigma_c)^dagger
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        sign = levi_civita(a, b, c)
        assert sign == 1
        for k in KS:
            lhs = root(b, k)
            rhs = sign * (root(c, 2) @ root(a, k) @ root(c, 2).conj().T)
            assert close(lhs, rhs)


def test_root_conjugation_anticyclic_only_at_k_1():
    # with epsilon = -1 the sign only survives for the Pauli itself
    for a, b, c in ((2, 1, 3), (3, 2, 1), (1, 3, 2)):
        sign = levi_civita(a, b, c)
        assert sign == -1
        rhs = sign * (root(c, 2) @ pauli(a) @ root(c, 2).conj().T)
        assert close(pauli(b), rhs)
        for k in (2, 4):
            rhs = sign * (root(c, 2) @ root(a, k) @ root(c, 2).conj().T)
            assert not close(root(b, k), rhs)


def test_clifford_examples():
    s = root(3, 2)
    h = hadamard()
    assert close(pauli(3), s @ s)
    assert close(pauli(1), h @ s @ s @ h)
    assert close(pauli(2), s @ h @ s @ s @ h @ s @ s @ s)
    assert close(pauli(2), s @ pauli(1) @ s.conj().T)


def test_s_from_v_and_h():
    v = root(1, 2)
    h = hadamard()
    assert close(root(3, 2), h @ v @ h)


def test_negator_definition_and_rotation_form():
    for a in AXES:
        for theta in THETAS:
            n = negator_matrix(a, theta)
            direct = identity(1) + 1j * math.sin(theta) * np.exp(1j * theta) * (
                identity(1) - pauli(a)
            )
            assert close(n, direct)
            assert close(n, np.exp(1j * theta) * rotation_matrix(a, 2 * theta))


def test_negator_at_quarter_angle_is_square_root():
    for a in AXES:
        assert close(negator_matrix(a, np.pi / 4), root(a, 2))
        for k in KS:
            assert close(negator_matrix(a, np.pi / (2 * k)), root(a, k))


def test_equal_up_to_phase_reports_the_phase():
    u = root(2, 4)
    ok, phase = equal_up_to_phase(u, 1j * u)
    # the reported factor lambda satisfies a = lambda * b
    assert ok and close(phase, -1j)
    ok, _ = equal_up_to_phase(u, hadamard())
    assert not ok


def test_pauli_root_arbitrary_exponent_is_power():
    for a in AXES:
        t = pauli_root_matrix(a, Fraction(1, 4))
        assert close(pauli_root_matrix(a, Fraction(3, 4)), t @ t @ t)
        assert close(pauli_root_matrix(a, Fraction(-1, 4)), t.conj().T)
        assert close(pauli_root_matrix(a, Fraction(0)), identity(1))


def test_rotation_rejects_non_finite_angles():
    with pytest.raises(ValueError):
        rotation_matrix(1, float("nan"))
    with pytest.raises(ValueError):
        negator_matrix(1, float("inf"))
