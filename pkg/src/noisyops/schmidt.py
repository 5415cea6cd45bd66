"""Operator Schmidt decompositions and the Kraus-rank / Schmidt-rank link.

For a unitary ``U`` on ``C^d (x) C^n`` the ``n``-noisy operation it generates
has Kraus rank equal to the operator Schmidt rank of ``U``; for ``d = n = 2``
that rank is never 3.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .channels import TAU_RANK, KrausDecomposition, kraus_rank
from .dilation import noisy_operation_channel
from .errors import DimensionMismatch, TheoremViolation
from .linalg import as_matrix, hermitian_eig, svd
from .sampling import haar_unitary, trial_rng

GAP_FACTOR = 1e3


@dataclass(frozen=True, eq=False)
class OperatorSchmidtDecomposition:
    """``Y = sum_i coefficients[i] * left_ops[i] (x) right_ops[i]`` with both
    operator families Hilbert-Schmidt orthonormal."""

    coefficients: np.ndarray
    left_ops: tuple
    right_ops: tuple
    singulars: np.ndarray = field(repr=False, default=None)

    @property
    def rank(self) -> int:
        return len(self.coefficients)

    def reconstruct(self) -> np.ndarray:
        return sum(c * np.kron(a, b) for c, a, b in zip(self.coefficients, self.left_ops, self.right_ops))


class RankLemmaCheck(NamedTuple):
    kraus_rank: int
    schmidt_rank: int
    equal: bool


def realign(y, d1: int, d2: int) -> np.ndarray:
    """Reshuffle ``Y[(i k), (j l)] -> R[(i j), (k l)]``; ``Y = A (x) B`` maps to
    the outer product of the row-major vectorizations of ``A`` and ``B``."""
    y = as_matrix(y)
    if y.shape != (d1 * d2, d1 * d2):
        raise DimensionMismatch(f"operator of shape {y.shape} is not ({d1}*{d2})-square")
    return y.reshape(d1, d2, d1, d2).transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2)


def unrealign(r, d1: int, d2: int) -> np.ndarray:
    r = as_matrix(r)
    if r.shape != (d1 * d1, d2 * d2):
        raise DimensionMismatch(f"realigned matrix of shape {r.shape} for ({d1}, {d2})")
    return r.reshape(d1, d1, d2, d2).transpose(0, 2, 1, 3).reshape(d1 * d2, d1 * d2)


def operator_schmidt_decomposition(y, d1: int, d2: int, tau_rank: float = TAU_RANK) -> OperatorSchmidtDecomposition:
    res = svd(realign(y, d1, d2))
    s = res.singulars
    keep = [i for i in range(len(s)) if s[0] > 0 and s[i] > tau_rank * s[0]]
    return OperatorSchmidtDecomposition(
        coefficients=s[keep].copy(),
        left_ops=tuple(res.left[:, i].reshape(d1, d1) for i in keep),
        right_ops=tuple(np.conj(res.right[:, i]).reshape(d2, d2) for i in keep),
        singulars=s,
    )


def operator_schmidt_rank(y, d1: int, d2: int, tau_rank: float = TAU_RANK) -> int:
    return operator_schmidt_decomposition(y, d1, d2, tau_rank).rank


def schmidt_kraus_operators(u, d: int, n: int) -> KrausDecomposition:
    """Kraus operators read off the operator Schmidt decomposition of ``u``.

    Rescaling the environment factors so that ``Tr(B_i B_j^+) = n delta_ij``
    turns ``U = sum_i A_i (x) B_i`` into the Kraus decomposition
    ``T(X) = sum_i A_i X A_i^+`` of the ``n``-noisy operation.
    """
    dec = operator_schmidt_decomposition(u, d, n)
    ops = tuple(c * a / np.sqrt(n) for c, a in zip(dec.coefficients, dec.left_ops))
    return KrausDecomposition(d, ops)


def check_rank_lemma(u, d: int, n: int) -> RankLemmaCheck:
    mat = getattr(u, "matrix", u)
    kr = kraus_rank(noisy_operation_channel(mat, d, n))
    sr = operator_schmidt_rank(mat, d, n)
    return RankLemmaCheck(kr, sr, kr == sr)


@dataclass
class RankHistogram:
    counts: dict
    trials: int
    seed: int
    tolerance: float
    min_gap: float
    dim: int = 2
    env_dim: int = 2

    def to_json(self) -> dict:
        return {
            "counts": {str(r): c for r, c in sorted(self.counts.items())},
            "trials": self.trials,
            "seed": self.seed,
            "min_gap": self.min_gap,
            "tolerance": self.tolerance,
            "dim": self.dim,
            "env_dim": self.env_dim,
        }

    def to_csv(self) -> str:
        rows = ["rank,count"] + [f"{r},{c}" for r, c in sorted(self.counts.items())]
        return "\n".join(rows) + "\n"


def rank_census(d: int, n: int, trials: int, seed: int, tau_rank: float = TAU_RANK) -> RankHistogram:
    """Kraus ranks of ``n``-noisy operations from Haar-random unitaries.

    Trial ``i`` draws its unitary from ``trial_rng(seed, i)``. ``min_gap``
    is the smallest ratio, over all trials, between the smallest retained
    Choi eigenvalue and the largest one; a value far above ``tau_rank``
    means no rank was decided near the threshold.

    Raises
    ------
    TheoremViolation
        For ``d = n = 2``, if any trial has Kraus rank 3 with a robust gap.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    counts = {}
    min_gap = np.inf
    for i in range(trials):
        u = haar_unitary(d * n, trial_rng(seed, i))
        values = hermitian_eig(noisy_operation_channel(u, d, n).matrix).values
        kept = values[values > tau_rank * values[0]]
        rank = len(kept)
        gap = kept[-1] / values[0]
        min_gap = min(min_gap, gap)
        counts[rank] = counts.get(rank, 0) + 1
        if d == 2 and n == 2 and rank == 3 and gap >= GAP_FACTOR * tau_rank:
            raise TheoremViolation(f"trial {i} (seed {seed}) gives a 2-noisy qubit channel of Kraus rank 3")
    return RankHistogram(counts, trials, seed, tau_rank, float(min_gap), d, n)
