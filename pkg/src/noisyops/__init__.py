"""Explicit 4-noisy realizations of unital qubit channels.

Pipeline: :func:`mixed_unitary_decomposition` -> :func:`pad_decomposition`
-> :func:`uniformize` -> :func:`build_dilation`, bundled as
:func:`noisy_realization`.
"""
from .canonical import mixed_unitary_decomposition, pad_decomposition, pauli_transfer
from .channels import (
    ChoiMatrix,
    KrausDecomposition,
    MixedUnitaryDecomposition,
    apply_channel,
    choi_distance,
    choi_from_kraus,
    kraus_from_choi,
    kraus_rank,
    to_choi,
    to_kraus,
    validate,
)
from .dilation import (
    DilationUnitary,
    build_dilation,
    noisy_operation_channel,
    noisy_realization,
    verify_noisy_representation,
)
from .kernels import BACKEND
from .linalg import PAULIS, hermitian_eig, svd
from .rebalance import lemma1_rebalance, majorizes, reweight, uniformize
from .sampling import haar_unitary, random_mixed_unitary, random_unital_choi, trial_rng
from .schmidt import check_rank_lemma, operator_schmidt_decomposition, operator_schmidt_rank, rank_census

__version__ = "0.1.0"
