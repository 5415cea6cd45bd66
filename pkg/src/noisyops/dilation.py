"""Environment dilations ``T(X) = Tr_E[U (X (x) 1_n/n) U^+]``.

Tensor ordering is system first, environment second: the flat index of
``|i>_sys (x) |e>_env`` is ``i * n + e``.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .canonical import mixed_unitary_decomposition, pad_decomposition
from .channels import (
    ChoiMatrix,
    MixedUnitaryDecomposition,
    Representation,
    choi_distance,
    kraus_rank,
)
from .errors import DimensionMismatch, KTooSmall, NonUniformWeights, NotUnitary
from .linalg import as_matrix, dagger, is_unitary, kron, partial_trace_env
from .rebalance import uniformize

TOL_UNIFORM = 1e-12
TOL_VERIFY = 1e-9


@dataclass(frozen=True, eq=False)
class DilationUnitary:
    env_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape[0] != m.shape[1] or m.shape[0] % self.env_dim:
            raise DimensionMismatch(f"{m.shape} is not a (d*{self.env_dim})-square matrix")
        object.__setattr__(self, "matrix", m)

    @property
    def sys_dim(self) -> int:
        return self.matrix.shape[0] // self.env_dim


def build_dilation(m: MixedUnitaryDecomposition) -> DilationUnitary:
    """Block-diagonal ``U = sum_i V_i (x) |i><i|`` for a uniformly weighted decomposition."""
    k = len(m)
    if np.max(np.abs(np.asarray(m.weights) - 1.0 / k)) > TOL_UNIFORM:
        raise NonUniformWeights(f"weights {np.asarray(m.weights)} are not uniform")
    u = sum(kron(v, np.diag(np.eye(k)[i])) for i, v in enumerate(m.unitaries))
    return DilationUnitary(k, u)


def noisy_operation_channel(u, d: int, n: int) -> ChoiMatrix:
    """Choi matrix of the ``n``-noisy operation generated by ``u``.

    ``T(E_jk)`` is evaluated on each matrix unit of ``M(C^d)`` and assembled
    into ``(1/d) sum_{j,k} E_jk (x) T(E_jk)``.
    """
    mat = u.matrix if isinstance(u, DilationUnitary) else as_matrix(u)
    if mat.shape != (d * n, d * n):
        raise DimensionMismatch(f"unitary of shape {mat.shape} for d={d}, n={n}")
    if not is_unitary(mat):
        raise NotUnitary("dilation matrix is not unitary")
    env = np.eye(n) / n
    choi = np.zeros((d * d, d * d), dtype=complex)
    for j in range(d):
        for k in range(d):
            unit = np.zeros((d, d))
            unit[j, k] = 1.0
            image = partial_trace_env(mat @ kron(unit, env) @ dagger(mat), d, n)
            choi += kron(unit, image)
    return ChoiMatrix(d, choi / d)


def verify_noisy_representation(rep: Representation, u: DilationUnitary, n: int) -> float:
    """Choi distance between ``rep`` and the ``n``-noisy operation of ``u``."""
    return choi_distance(rep, noisy_operation_channel(u, 2, n))


class NoisyRealization(NamedTuple):
    decomposition: MixedUnitaryDecomposition
    dilation: DilationUnitary
    distance: float


def noisy_realization(rep: Representation, k: int = 4) -> NoisyRealization:
    """Full pipeline: decompose, pad to ``k`` terms, equalize the weights,
    build the dilation and measure how well it reproduces ``rep``.

    Raises
    ------
    KTooSmall
        If ``k`` is below the Kraus rank of ``rep``.
    """
    rank = kraus_rank(rep)
    if k < rank:
        raise KTooSmall(f"environment dimension {k} is below the Kraus rank {rank}")
    mixed = mixed_unitary_decomposition(rep)
    if len(mixed) > k:
        # weights the rank threshold treats as zero; drop the smallest
        keep = np.sort(np.argsort(-mixed.weights, kind="stable")[:k])
        w = mixed.weights[keep]
        mixed = MixedUnitaryDecomposition(w / w.sum(), tuple(mixed.unitaries[i] for i in keep))
    uniform = uniformize(pad_decomposition(mixed, k))
    dil = build_dilation(uniform)
    return NoisyRealization(uniform, dil, verify_noisy_representation(rep, dil, k))
