"""Mixed-unitary decomposition of unital qubit channels.

A unital qubit channel acts on Bloch vectors by a real 3x3 matrix ``t``.
Writing ``t = R_L diag(lambdas) R_R`` with ``R_L, R_R`` in SO(3) and lifting
both rotations to SU(2) gives

    T(X) = sum_i p_i (V_L s_i V_R) X (V_L s_i V_R)^dagger,

with ``s_0 = 1`` and ``s_1..s_3`` the Pauli matrices, where the Pauli weights
``p_i`` are fixed by ``lambdas`` (see :func:`pauli_probabilities`).
"""
import math
from typing import NamedTuple

import numpy as np

from .channels import (
    MixedUnitaryDecomposition,
    Representation,
    apply_channel,
    channel_dim,
)
from .errors import DimensionMismatch, KTooSmall, NotCP, NotRotation, NotTracePreserving, NotUnital
from .linalg import PAULIS, dagger, fix_global_phase, svd

TOL_UNITAL = 1e-8
TAU_CLAMP = 1e-9
DROP_WEIGHT = 1e-12


class SignedSVD(NamedTuple):
    left: np.ndarray
    lambdas: np.ndarray
    right: np.ndarray


def pauli_transfer(rep: Representation) -> np.ndarray:
    """Real 3x3 Bloch block ``t[i, j] = Tr(s_i T(s_j)) / 2`` of a unital qubit channel."""
    if channel_dim(rep) != 2:
        raise DimensionMismatch("Pauli transfer matrix is only defined for qubits")
    images = [apply_channel(rep, s) for s in PAULIS]
    if np.linalg.norm(images[0] - PAULIS[0]) > TOL_UNITAL:
        raise NotUnital("T(1) differs from 1")
    traces = np.array([np.trace(m) for m in images]) / 2
    if np.max(np.abs(traces - [1, 0, 0, 0])) > TOL_UNITAL:
        raise NotTracePreserving("Tr T(X) differs from Tr X")
    t = np.array([[np.trace(PAULIS[i] @ images[j]) / 2 for j in (1, 2, 3)] for i in (1, 2, 3)])
    if np.max(np.abs(t.imag)) > TOL_UNITAL:
        raise NotCP("channel is not Hermiticity preserving")
    return t.real.copy()


def signed_svd_so3(t: np.ndarray) -> SignedSVD:
    """Factor ``t = left @ diag(lambdas) @ right`` with both factors in SO(3).

    Magnitudes of ``lambdas`` are the singular values in descending order; a
    negative determinant of either orthogonal factor is absorbed by flipping
    its last column (left) or last row (right) together with ``lambdas[2]``.
    """
    t = np.asarray(t, dtype=float)
    res = svd(t)
    left = res.left.real.copy()
    right = dagger(res.right).real.copy()
    lambdas = res.singulars.astype(float).copy()
    if np.linalg.det(left) < 0:
        left[:, 2] *= -1
        lambdas[2] *= -1
    if np.linalg.det(right) < 0:
        right[2, :] *= -1
        lambdas[2] *= -1
    return SignedSVD(left, lambdas, right)


def adjoint_rotation(v: np.ndarray) -> np.ndarray:
    """Bloch rotation ``R[i, j] = Tr(s_i V s_j V^dagger) / 2`` induced by a unitary."""
    return np.array(
        [[np.trace(PAULIS[i] @ v @ PAULIS[j] @ dagger(v)).real / 2 for j in (1, 2, 3)] for i in (1, 2, 3)]
    )


def su2_from_so3(r: np.ndarray) -> np.ndarray:
    """Lift a rotation to a 2x2 unitary whose adjoint action reproduces it.

    Uses the axis-angle form ``V = cos(w/2) 1 - i sin(w/2) n.sigma``. For
    ``w > pi/2`` the axis comes from the dominant column of the symmetric part
    ``(R + R^T)/2 - cos(w) 1 = (1 - cos w) n n^T`` (which is ``(R + 1)/2`` at
    ``w = pi``), with its sign fixed by the antisymmetric part.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3, 3):
        raise NotRotation(f"expected a 3x3 matrix, got {r.shape}")
    if np.linalg.norm(r.T @ r - np.eye(3)) > 1e-8 or abs(np.linalg.det(r) - 1) > 1e-8:
        raise NotRotation("matrix is not in SO(3)")
    w = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    angle = math.atan2(np.linalg.norm(w) / 2, (np.trace(r) - 1) / 2)
    if angle == 0.0:
        return PAULIS[0].copy()
    if angle > math.pi / 2:
        # dividing the antisymmetric part by sin(w) loses accuracy here
        sym = (r + r.T) / 2 - math.cos(angle) * np.eye(3)
        k = int(np.argmax(np.diag(sym)))
        axis = sym[:, k] / np.linalg.norm(sym[:, k])
        if axis @ w < 0:
            axis = -axis
    else:
        axis = w / (2 * math.sin(angle))
        axis /= np.linalg.norm(axis)
    gen = axis[0] * PAULIS[1] + axis[1] * PAULIS[2] + axis[2] * PAULIS[3]
    v = math.cos(angle / 2) * PAULIS[0] - 1j * math.sin(angle / 2) * gen
    return fix_global_phase(v)


def pauli_probabilities(lambdas) -> np.ndarray:
    """Pauli weights ``(p0, p1, p2, p3)`` of the diagonal channel with Bloch
    scalings ``lambdas``; small negatives are clamped, larger ones raise."""
    l1, l2, l3 = lambdas
    p = np.array(
        [
            1 + l1 + l2 + l3,
            1 + l1 - l2 - l3,
            1 - l1 + l2 - l3,
            1 - l1 - l2 + l3,
        ]
    ) / 4
    if p.min() < -TAU_CLAMP:
        raise NotCP(f"Pauli weights {p} leave the probability simplex")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def mixed_unitary_decomposition(rep: Representation) -> MixedUnitaryDecomposition:
    """Decompose a unital qubit channel into at most four weighted unitaries.

    Terms whose weight is at most ``DROP_WEIGHT`` are dropped; the remaining
    unitaries keep the Pauli order ``1, s_x, s_y, s_z``.
    """
    t = pauli_transfer(rep)
    left, lambdas, right = signed_svd_so3(t)
    v_left = su2_from_so3(left)
    v_right = su2_from_so3(right)
    p = pauli_probabilities(lambdas)
    keep = [i for i in range(4) if p[i] > DROP_WEIGHT]
    weights = p[keep] / p[keep].sum()
    unitaries = [fix_global_phase(v_left @ PAULIS[i] @ v_right) for i in keep]
    return MixedUnitaryDecomposition(weights, tuple(unitaries))


def pad_decomposition(m: MixedUnitaryDecomposition, k: int) -> MixedUnitaryDecomposition:
    """Reach exactly ``k`` terms by repeatedly halving the largest weight
    (lowest index on ties) and duplicating its unitary right after it."""
    if k < len(m):
        raise KTooSmall(f"cannot pad {len(m)} terms down to {k}")
    weights = list(m.weights)
    unitaries = list(m.unitaries)
    while len(weights) < k:
        i = int(np.argmax(weights))
        half = weights[i] / 2
        weights[i : i + 1] = [half, half]
        unitaries.insert(i + 1, unitaries[i])
    return MixedUnitaryDecomposition(np.array(weights), tuple(unitaries))
