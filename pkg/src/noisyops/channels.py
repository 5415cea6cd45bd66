"""Kraus, Choi and mixed-unitary representations of small channels.

Conventions
-----------
``vec`` stacks columns: ``vec(A)[j*d + i] = A[i, j]``. The normalized Choi
matrix of a channel ``T`` on ``M(C^d)`` is

    C = (1/d) sum_i vec(A_i) vec(A_i)^dagger = (1/d) sum_{j,k} E_jk (x) T(E_jk),

so the first tensor factor carries the input index and the second factor
the output. ``Tr(C) = 1``; ``T`` is trace preserving iff tracing out the
output factor leaves ``1/d``, and unital iff tracing out the input factor
leaves ``1/d``.
"""
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .errors import DimensionMismatch, InvalidKraus, NotPSD, NotTracePreserving
from .linalg import (
    TOL_UNITARY,
    as_matrix,
    dagger,
    hermitian_eig,
    is_unitary,
    partial_trace_env,
    partial_trace_first,
)

TAU_RANK = 1e-8
TOL_CHANNEL = 1e-8
TOL_PSD = 1e-9
TOL_WEIGHTS = 1e-12


def vec(a: np.ndarray) -> np.ndarray:
    return np.asarray(a).reshape(-1, order="F")


def unvec(v: np.ndarray, d: int) -> np.ndarray:
    return np.asarray(v).reshape((d, d), order="F")


@dataclass(frozen=True, eq=False)
class KrausDecomposition:
    dim: int
    operators: tuple

    def __post_init__(self):
        ops = tuple(as_matrix(a) for a in self.operators)
        if not ops:
            raise ValueError("at least one Kraus operator is required")
        for a in ops:
            if a.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"Kraus operator of shape {a.shape}, dim {self.dim}")
        object.__setattr__(self, "operators", ops)

    def __len__(self):
        return len(self.operators)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.dim**2, self.dim**2):
            raise DimensionMismatch(f"Choi matrix of shape {m.shape} for dim {self.dim}")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class MixedUnitaryDecomposition:
    """``T(X) = sum_i weights[i] U_i X U_i^dagger``."""

    weights: np.ndarray
    unitaries: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).reshape(-1)
        us = tuple(as_matrix(u) for u in self.unitaries)
        if len(w) != len(us) or not us:
            raise ValueError("weights and unitaries must be non-empty and of equal length")
        if np.any(w < 0) or abs(w.sum() - 1.0) > TOL_WEIGHTS:
            raise ValueError(f"weights {w} are not a probability distribution")
        d = us[0].shape[0]
        for u in us:
            if u.shape != (d, d):
                raise DimensionMismatch("unitaries must share one square shape")
            if not is_unitary(u, TOL_UNITARY):
                raise ValueError("non-unitary term in mixed-unitary decomposition")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "unitaries", us)

    @property
    def dim(self) -> int:
        return self.unitaries[0].shape[0]

    def __len__(self):
        return len(self.weights)


Representation = Union[KrausDecomposition, ChoiMatrix, MixedUnitaryDecomposition]


@dataclass
class ValidationReport:
    completely_positive: bool
    trace_preserving: bool
    unital: bool
    worst_violations: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.completely_positive and self.trace_preserving and self.unital


def _kraus_operators(rep) -> tuple:
    # Kraus-type operators of a Kraus or mixed-unitary representation
    if isinstance(rep, KrausDecomposition):
        return rep.operators
    if isinstance(rep, MixedUnitaryDecomposition):
        return tuple(np.sqrt(p) * u for p, u in zip(rep.weights, rep.unitaries))
    raise TypeError(f"no Kraus operators for {type(rep).__name__}")


def _choi_of_operators(ops, d: int) -> np.ndarray:
    vs = np.column_stack([vec(a) for a in ops])
    return (vs @ dagger(vs)) / d


def _tp_violation(ops, d: int) -> float:
    return float(np.linalg.norm(sum(dagger(a) @ a for a in ops) - np.eye(d)))


def _unital_violation(ops, d: int) -> float:
    return float(np.linalg.norm(sum(a @ dagger(a) for a in ops) - np.eye(d)))


def choi_from_kraus(k: KrausDecomposition) -> ChoiMatrix:
    """Normalized Choi matrix of a trace-preserving Kraus decomposition."""
    if _tp_violation(k.operators, k.dim) > TOL_CHANNEL:
        raise InvalidKraus("sum of A^dagger A differs from the identity")
    return ChoiMatrix(k.dim, _choi_of_operators(k.operators, k.dim))


def kraus_from_choi(c: ChoiMatrix, tau_rank: float = TAU_RANK) -> KrausDecomposition:
    """Canonical (mutually Hilbert-Schmidt orthogonal) Kraus operators.

    ``A_i = sqrt(d p_i) unvec(psi_i)`` for every eigenpair ``(p_i, psi_i)`` of
    the Choi matrix with ``p_i > tau_rank * p_max``. Inside a degenerate
    eigenvalue cluster the operators are only defined up to a unitary mix.
    """
    d = c.dim
    eig = hermitian_eig(c.matrix)
    if eig.values[-1] < -TOL_PSD:
        raise NotPSD(f"Choi matrix has eigenvalue {eig.values[-1]:.3e}")
    marginal = partial_trace_env(c.matrix, d, d)
    if d * np.linalg.norm(marginal - np.eye(d) / d) > TOL_CHANNEL:
        raise NotTracePreserving("input marginal of the Choi matrix is not 1/d")
    top = eig.values[0]
    ops = [
        np.sqrt(d * p) * unvec(eig.vectors[:, i], d)
        for i, p in enumerate(eig.values)
        if p > tau_rank * top
    ]
    return KrausDecomposition(d, tuple(ops))


def to_choi(rep: Representation) -> ChoiMatrix:
    if isinstance(rep, ChoiMatrix):
        return rep
    if isinstance(rep, KrausDecomposition):
        return choi_from_kraus(rep)
    if isinstance(rep, MixedUnitaryDecomposition):
        return ChoiMatrix(rep.dim, _choi_of_operators(_kraus_operators(rep), rep.dim))
    raise TypeError(f"unsupported channel representation {type(rep).__name__}")


def to_kraus(rep: Representation) -> KrausDecomposition:
    if isinstance(rep, KrausDecomposition):
        return rep
    if isinstance(rep, MixedUnitaryDecomposition):
        return KrausDecomposition(rep.dim, _kraus_operators(rep))
    return kraus_from_choi(to_choi(rep))


def channel_dim(rep: Representation) -> int:
    return rep.dim


def apply_channel(rep: Representation, x) -> np.ndarray:
    """Evaluate ``T(X)``."""
    x = as_matrix(x)
    d = channel_dim(rep)
    if x.shape != (d, d):
        raise DimensionMismatch(f"input of shape {x.shape} for a channel on dim {d}")
    if isinstance(rep, ChoiMatrix):
        c4 = rep.matrix.reshape(d, d, d, d)
        return d * np.einsum("jk,jakb->ab", x, c4)
    return sum(a @ x @ dagger(a) for a in _kraus_operators(rep))


def validate(rep: Representation, tol: float = TOL_CHANNEL) -> ValidationReport:
    """Check complete positivity, trace preservation and unitality.

    CP is read off the smallest Choi eigenvalue. TP and unitality use
    ``||sum A^dagger A - 1||_F`` and ``||sum A A^dagger - 1||_F`` for Kraus-type
    inputs, and the equivalent (rescaled) Choi marginals otherwise.
    """
    d = channel_dim(rep)
    if isinstance(rep, ChoiMatrix):
        choi = rep.matrix
        tp = d * float(np.linalg.norm(partial_trace_env(choi, d, d) - np.eye(d) / d))
        un = d * float(np.linalg.norm(partial_trace_first(choi, d, d) - np.eye(d) / d))
    else:
        ops = _kraus_operators(rep)
        choi = _choi_of_operators(ops, d)
        tp = _tp_violation(ops, d)
        un = _unital_violation(ops, d)
    herm = float(np.linalg.norm(choi - dagger(choi)))
    min_eig = hermitian_eig(0.5 * (choi + dagger(choi))).values[-1]
    cp = max(0.0, -float(min_eig))
    return ValidationReport(
        completely_positive=cp <= TOL_PSD and herm <= tol,
        trace_preserving=tp <= tol,
        unital=un <= tol,
        worst_violations={"cp": max(cp, herm), "tp": tp, "unital": un},
    )


def kraus_rank(rep: Representation, tau_rank: float = TAU_RANK) -> int:
    """Number of Choi eigenvalues above ``tau_rank`` times the largest."""
    values = hermitian_eig(to_choi(rep).matrix).values
    return int(np.count_nonzero(values > tau_rank * values[0]))


def choi_distance(t1: Representation, t2: Representation) -> float:
    """Frobenius distance between normalized Choi matrices."""
    if channel_dim(t1) != channel_dim(t2):
        raise DimensionMismatch("channels act on different dimensions")
    return float(np.linalg.norm(to_choi(t1).matrix - to_choi(t2).matrix))
