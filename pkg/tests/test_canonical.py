import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from noisyops.canonical import (
    adjoint_rotation,
    mixed_unitary_decomposition,
    pad_decomposition,
    pauli_probabilities,
    pauli_transfer,
    signed_svd_so3,
    su2_from_so3,
)
from noisyops.channels import (
    ChoiMatrix,
    KrausDecomposition,
    MixedUnitaryDecomposition,
    choi_distance,
    to_choi,
)
from noisyops.errors import KTooSmall, NotCP, NotRotation, NotUnital
from noisyops.linalg import I2, PAULIS, SIGMA_X, SIGMA_Y, SIGMA_Z
from noisyops.sampling import haar_unitary, random_mixed_unitary, random_unital_choi

from conftest import equal_up_to_phase, scipy_unitary

PAULI_EXAMPLE = MixedUnitaryDecomposition(np.ones(3) / 3, PAULIS[1:])


def rotation_about(axis, angle):
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    k = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + math.sin(angle) * k + (1 - math.cos(angle)) * k @ k


def pauli_channel(p):
    return MixedUnitaryDecomposition(p, PAULIS)


def test_pauli_transfer_examples():
    np.testing.assert_allclose(pauli_transfer(KrausDecomposition(2, (I2,))), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(pauli_transfer(PAULI_EXAMPLE), -np.eye(3) / 3, atol=1e-15)
    np.testing.assert_allclose(
        pauli_transfer(KrausDecomposition(2, (SIGMA_X,))), np.diag([1, -1, -1]), atol=1e-15
    )


def test_pauli_transfer_of_unitary_is_its_rotation(rng):
    u = scipy_unitary(2, rng)
    t = pauli_transfer(KrausDecomposition(2, (u,)))
    np.testing.assert_allclose(t, adjoint_rotation(u), atol=1e-14)
    np.testing.assert_allclose(t.T @ t, np.eye(3), atol=1e-14)
    assert np.linalg.det(t) == pytest.approx(1)


def test_pauli_transfer_rejects_non_unital():
    damp = KrausDecomposition(2, (np.diag([1.0, 0.0]), np.array([[0.0, 1.0], [0.0, 0.0]])))
    with pytest.raises(NotUnital):
        pauli_transfer(damp)


def test_signed_svd_flips_negative_determinant():
    res = signed_svd_so3(-np.eye(3) / 3)
    np.testing.assert_allclose(np.abs(res.lambdas), [1 / 3] * 3, atol=1e-15)
    assert np.prod(res.lambdas) < 0
    for r in (res.left, res.right):
        assert np.linalg.det(r) == pytest.approx(1)
    np.testing.assert_allclose(res.left @ np.diag(res.lambdas) @ res.right, -np.eye(3) / 3, atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_signed_svd_properties(seed):
    t = np.random.default_rng(seed).standard_normal((3, 3))
    res = signed_svd_so3(t)
    np.testing.assert_allclose(res.left @ np.diag(res.lambdas) @ res.right, t, atol=1e-13)
    for r in (res.left, res.right):
        np.testing.assert_allclose(r.T @ r, np.eye(3), atol=1e-13)
        assert np.linalg.det(r) == pytest.approx(1)
    np.testing.assert_allclose(np.abs(res.lambdas), np.linalg.svd(t, compute_uv=False), atol=1e-13)


@pytest.mark.parametrize(
    "axis, angle",
    [
        ((0, 0, 1), math.pi / 2),
        ((1, 0, 0), math.pi),
        ((1, 1, 1), math.pi - 1e-9),
        ((1, -2, 0.5), math.pi - 1e-7),
        ((0, 1, 0), 1e-9),
        ((0.3, 0.4, -0.1), 2.0),
    ],
)
def test_su2_lift_reproduces_rotation(axis, angle):
    r = rotation_about(axis, angle)
    v = su2_from_so3(r)
    np.testing.assert_allclose(v.conj().T @ v, I2, atol=1e-14)
    np.testing.assert_allclose(adjoint_rotation(v), r, atol=1e-12)


def test_su2_lift_known_values():
    assert equal_up_to_phase(su2_from_so3(np.diag([1.0, -1.0, -1.0])), SIGMA_X, atol=1e-14)
    assert equal_up_to_phase(su2_from_so3(np.diag([-1.0, 1.0, -1.0])), SIGMA_Y, atol=1e-14)
    assert equal_up_to_phase(su2_from_so3(np.diag([-1.0, -1.0, 1.0])), SIGMA_Z, atol=1e-14)
    np.testing.assert_array_equal(su2_from_so3(np.eye(3)), I2)


def test_su2_lift_rejects_non_rotations():
    with pytest.raises(NotRotation):
        su2_from_so3(np.diag([1.0, 1.0, -1.0]))
    with pytest.raises(NotRotation):
        su2_from_so3(2 * np.eye(3))
    with pytest.raises(NotRotation):
        su2_from_so3(np.eye(2))


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_su2_lift_of_random_rotation(seed):
    v = haar_unitary(2, np.random.default_rng(seed))
    w = su2_from_so3(adjoint_rotation(v))
    assert equal_up_to_phase(w, v, atol=1e-12)


def test_pauli_probabilities():
    np.testing.assert_allclose(pauli_probabilities([1, 1, 1]), [1, 0, 0, 0])
    np.testing.assert_allclose(pauli_probabilities([0, 0, 0]), [0.25] * 4)
    np.testing.assert_allclose(pauli_probabilities([-1 / 3] * 3), [0, 1 / 3, 1 / 3, 1 / 3], atol=1e-16)
    p = pauli_probabilities([1 + 4e-10, 1, 1])
    assert p.min() >= 0 and p.sum() == pytest.approx(1)
    with pytest.raises(NotCP):
        pauli_probabilities([1, 1, -1])


def test_decomposition_of_pauli_example():
    m = mixed_unitary_decomposition(to_choi(PAULI_EXAMPLE))
    assert len(m) == 3
    np.testing.assert_allclose(m.weights, [1 / 3] * 3, atol=1e-14)
    assert choi_distance(m, PAULI_EXAMPLE) <= 1e-13


def test_decomposition_of_pauli_channel():
    p = np.array([0.4, 0.3, 0.2, 0.1])
    m = mixed_unitary_decomposition(pauli_channel(p))
    np.testing.assert_allclose(np.sort(m.weights), np.sort(p), atol=1e-14)
    assert choi_distance(m, pauli_channel(p)) <= 1e-13


def test_decomposition_of_unitary_channel(rng):
    u = scipy_unitary(2, rng)
    m = mixed_unitary_decomposition(KrausDecomposition(2, (u,)))
    assert len(m) == 1 and m.weights[0] == 1
    assert equal_up_to_phase(m.unitaries[0], u, atol=1e-12)


def test_decomposition_rejects_non_cp():
    # Bloch scalings (1, 1, -1) are a transpose, positive but not CP
    c = np.zeros((4, 4), dtype=complex)
    for j in range(2):
        for k in range(2):
            c[2 * j + k, 2 * k + j] = 0.5
    with pytest.raises(NotCP):
        mixed_unitary_decomposition(ChoiMatrix(2, c))


def test_recovery_from_choi_only(rng):
    worst = 0.0
    for _ in range(200):
        c = random_unital_choi(rng)
        m = mixed_unitary_decomposition(c)
        assert len(m) <= 4
        worst = max(worst, choi_distance(m, c))
    assert worst <= 1e-12


def test_pad_decomposition():
    m = MixedUnitaryDecomposition([0.5, 0.3, 0.2], (I2, SIGMA_X, SIGMA_Y))
    padded = pad_decomposition(m, 5)
    np.testing.assert_allclose(padded.weights, [0.25, 0.25, 0.15, 0.15, 0.2])
    assert padded.unitaries[1] is padded.unitaries[0]
    assert padded.unitaries[3] is padded.unitaries[2]
    assert choi_distance(padded, m) <= 1e-15
    assert pad_decomposition(m, 3) is not m and len(pad_decomposition(m, 3)) == 3
    with pytest.raises(KTooSmall):
        pad_decomposition(m, 2)


def test_pad_ties_split_lowest_index():
    m = MixedUnitaryDecomposition([0.5, 0.5], (SIGMA_X, SIGMA_Z))
    padded = pad_decomposition(m, 3)
    np.testing.assert_allclose(padded.weights, [0.25, 0.25, 0.5])
    np.testing.assert_array_equal(padded.unitaries[1], SIGMA_X)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), k=st.integers(1, 6))
def test_canonical_form_matches_random_channel(seed, k):
    m = random_mixed_unitary(k, np.random.default_rng(seed))
    dec = mixed_unitary_decomposition(to_choi(m))
    assert choi_distance(dec, m) <= 1e-12
    assert np.all(np.diff(np.arange(len(dec))) > 0)


def test_su2_lift_quarter_turn_about_x():
    r = rotation_about((1, 0, 0), math.pi / 2)
    expected = (I2 - 1j * SIGMA_X) / np.sqrt(2)  # exp(-i pi sigma_x / 4)
    assert equal_up_to_phase(su2_from_so3(r), expected, atol=1e-14)


def test_recovery_of_conjugated_two_term_channel(rng):
    w1, w2 = scipy_unitary(2, rng), scipy_unitary(2, rng)
    m = MixedUnitaryDecomposition([0.6, 0.4], (w1 @ w2, w1 @ SIGMA_Y @ w2))
    dec = mixed_unitary_decomposition(to_choi(m))
    assert len(dec) == 2
    np.testing.assert_allclose(dec.weights, [0.6, 0.4], atol=1e-13)
    assert choi_distance(dec, m) <= 1e-9


def test_pad_single_term():
    padded = pad_decomposition(MixedUnitaryDecomposition([1.0], (I2,)), 2)
    np.testing.assert_array_equal(padded.weights, [0.5, 0.5])
    for u in padded.unitaries:
        np.testing.assert_array_equal(u, I2)
