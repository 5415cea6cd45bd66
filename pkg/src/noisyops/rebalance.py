"""Rebalancing the weights of a qubit mixed-unitary decomposition.

Two weighted unitary conjugations ``a U1.U1^+ + d U2.U2^+`` can be rewritten
as ``b V1.V1^+ + c V2.V2^+`` whenever ``a >= b >= c >= d >= 0`` and
``a + d = b + c`` (:func:`lemma1_rebalance`). Chaining such exchanges as
T-transforms moves a weight vector ``p`` to any ``q`` that it majorizes
(:func:`reweight`), in particular to the uniform distribution
(:func:`uniformize`).
"""
import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import kernels
from .channels import MixedUnitaryDecomposition
from .errors import (
    ConvergenceFailure,
    DegenerateWeights,
    InconsistentAlpha,
    NotMajorized,
    NotUnitary,
)
from .linalg import PAULIS, dagger, hermitian_eig, is_unitary

TWO_PI = 2 * math.pi
TOL_SUM = 1e-12
TOL_ORDER = 1e-12
TOL_MAJORIZE = 1e-12
TOL_MODULUS = 1e-9
TOL_MATCH = 1e-13
TOL_FINAL = 1e-10


@dataclass(frozen=True)
class RebalanceWeights:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        a, b, c, d = self.a, self.b, self.c, self.d
        if min(a, b, c, d) < 0:
            raise ValueError("rebalance weights must be non-negative")
        if not (a >= b - TOL_ORDER and b >= c - TOL_ORDER and c >= d - TOL_ORDER):
            raise ValueError(f"weights must satisfy a >= b >= c >= d, got {a, b, c, d}")
        if abs((a + d) - (b + c)) > TOL_SUM:
            raise ValueError("weights must satisfy a + d = b + c")


class RelativeDiagonalization(NamedTuple):
    s: np.ndarray
    z1: complex
    z2: complex
    theta: float


class PhaseSolution(NamedTuple):
    alpha: float
    beta: float


@dataclass(frozen=True, eq=False)
class TTransformStep:
    """One weight exchange: ``delta`` moves from entry ``n`` to entry ``m``
    (0-based, ``n < m``) whose unitaries are replaced by ``replaced``."""

    n: int
    m: int
    delta: float
    replaced: tuple
    weights_after: tuple = ()


def _wrap_angle(x: float) -> float:
    x = math.fmod(x, TWO_PI)
    if x < 0:
        x += TWO_PI
    return 0.0 if x >= TWO_PI else x


def prob_vector(p, tol: float = TOL_SUM) -> np.ndarray:
    """Validate and return a probability vector as a float array."""
    v = np.asarray(p, dtype=float).reshape(-1)
    if v.size == 0 or np.any(v < 0) or abs(v.sum() - 1.0) > tol:
        raise ValueError(f"{v} is not a probability vector")
    return v


def majorizes(p, q, tol: float = TOL_MAJORIZE) -> bool:
    """``p`` majorizes ``q``: prefix sums of the decreasingly sorted ``p``
    dominate those of ``q`` (shorter vector zero-padded)."""
    p = prob_vector(p)
    q = prob_vector(q)
    k = max(len(p), len(q))
    ps = np.cumsum(np.sort(np.pad(p, (0, k - len(p))))[::-1])
    qs = np.cumsum(np.sort(np.pad(q, (0, k - len(q))))[::-1])
    return bool(np.all(ps >= qs - tol))


def diagonalize_relative(u1, u2) -> RelativeDiagonalization:
    """Unitary ``S`` with ``S^+ U1^+ U2 S = diag(z1, z2)``.

    ``U1^+ U2 = c 1 + N`` with ``N`` traceless normal, so ``N / mu`` (``mu``
    a square root of ``-det N``) is Hermitian with eigenvalues +-1 and shares
    its eigenvectors.
    """
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    if u1.shape != (2, 2) or u2.shape != (2, 2) or not (is_unitary(u1) and is_unitary(u2)):
        raise NotUnitary("relative diagonalization needs two 2x2 unitaries")
    w = dagger(u1) @ u2
    nrm = w - np.trace(w) / 2 * np.eye(2)
    mu = cmath.sqrt(-np.linalg.det(nrm))
    if abs(mu) <= 1e-15:
        s = np.eye(2, dtype=complex)
    else:
        h = nrm / mu
        s = hermitian_eig(0.5 * (h + dagger(h)), tol_herm=np.inf).vectors
    diag = np.diag(dagger(s) @ w @ s)
    z1, z2 = (complex(z / abs(z)) for z in diag)
    theta = _wrap_angle(cmath.phase(z1 * z2.conjugate()))
    return RelativeDiagonalization(s, z1, z2, theta)


def phase_residual(w: RebalanceWeights, theta: float, alpha: float) -> float:
    """Left side of the phase equation

    ``a^2 + b^2 - c^2 + d^2 + 2ad cos(theta) - 2ab cos(alpha) - 2db cos(theta - alpha)``.
    """
    a, b, c, d = w.a, w.b, w.c, w.d
    return (
        a * a + b * b - c * c + d * d
        + 2 * a * d * math.cos(theta)
        - 2 * a * b * math.cos(alpha)
        - 2 * d * b * math.cos(theta - alpha)
    )


def solve_alpha(w: RebalanceWeights, theta: float) -> float:
    """Root ``alpha`` in ``[0, theta]`` of the phase equation, by bisection.

    The residual is non-positive at 0 and non-negative at ``theta``. The
    sign test uses the factored form ``(|z| - c)(|z| + c)`` with
    ``z = a + d e^{i theta} - b e^{i alpha}``, which keeps full precision
    when ``c`` is small.
    """
    if w.a == 0:
        raise DegenerateWeights("all rebalance weights vanish")
    if theta == 0.0:
        return 0.0
    return float(kernels.bisect_alpha(w.a, w.b, w.c, w.d, theta))


def solve_beta(w: RebalanceWeights, theta: float, alpha: float) -> float:
    if w.c == 0:
        return 0.0
    z = w.a + w.d * cmath.exp(1j * theta) - w.b * cmath.exp(1j * alpha)
    if abs(abs(z) - w.c) > TOL_MODULUS:
        raise InconsistentAlpha(f"|z| = {abs(z)!r} but c = {w.c!r}")
    return _wrap_angle(cmath.phase(z))


def solve_phases(w: RebalanceWeights, theta: float) -> PhaseSolution:
    alpha = solve_alpha(w, theta)
    return PhaseSolution(alpha, solve_beta(w, theta, alpha))


def lemma1_rebalance(w: RebalanceWeights, u1, u2):
    """Unitaries ``(V1, V2)`` with ``a U1 X U1^+ + d U2 X U2^+ = b V1 X V1^+ + c V2 X V2^+``.

    With ``S`` diagonalizing ``U1^+ U2`` and ``W_j = diag(e^{i phase_j}, 1)``,
    ``V_j = U1 S W_j S^+``.
    """
    u1 = np.asarray(u1, dtype=complex)
    u2 = np.asarray(u2, dtype=complex)
    if w.d == 0:
        return u1.copy(), u1.copy()
    rel = diagonalize_relative(u1, u2)
    alpha, beta = solve_phases(w, rel.theta)
    frame = u1 @ rel.s
    v1 = frame @ np.diag([cmath.exp(1j * alpha), 1.0]) @ dagger(rel.s)
    v2 = frame @ np.diag([cmath.exp(1j * beta), 1.0]) @ dagger(rel.s)
    return v1, v2


def _sorted_padded(m: MixedUnitaryDecomposition, q, k: int):
    p = np.pad(np.asarray(m.weights, dtype=float), (0, k - len(m)))
    unitaries = list(m.unitaries) + [PAULIS[0].copy()] * (k - len(m))
    order = np.argsort(-p, kind="stable")
    q = np.sort(np.pad(q, (0, k - len(q))))[::-1]
    return p[order], [unitaries[i] for i in order], q


def reweight(m: MixedUnitaryDecomposition, q):
    """Rewrite ``m`` with weights ``q`` by T-transforms.

    Both weight vectors are zero-padded to a common length ``k`` (padding
    terms use the identity) and sorted in decreasing order. Each step picks
    ``n`` as the last index with ``q_n < p_n`` and ``m`` as the first later
    index with ``q_m > p_m`` and moves ``delta = min(p_n - q_n, q_m - p_m)``.
    At most ``k - 1`` steps are needed.

    Returns
    -------
    (MixedUnitaryDecomposition, list of TTransformStep)
        Decomposition with weights ``sorted(q, reverse=True)`` (same length
        as ``q``) and the step trace.
    """
    q = prob_vector(q)
    if not majorizes(m.weights, q):
        raise NotMajorized(f"{np.asarray(m.weights)} does not majorize {q}")
    k = max(len(m), len(q))
    p, unitaries, target = _sorted_padded(m, q, k)
    steps = []
    while True:
        close = np.abs(p - target) <= TOL_MATCH
        p[close] = target[close]
        if np.all(close):
            break
        if len(steps) >= k - 1:
            raise ConvergenceFailure(f"weights {p} still differ from {target} after {k - 1} steps")
        above = np.nonzero(p > target)[0]
        if not len(above):
            raise ConvergenceFailure("no entry left to lower")
        n = int(above[-1])
        below = [i for i in range(n + 1, k) if target[i] > p[i]]
        if not below:
            raise ConvergenceFailure("no later entry left to raise")
        j = below[0]
        delta = min(p[n] - target[n], target[j] - p[j])
        w = RebalanceWeights(p[n], p[n] - delta, p[j] + delta, p[j])
        v, u = lemma1_rebalance(w, unitaries[n], unitaries[j])
        unitaries[n], unitaries[j] = v, u
        # snap whichever entry the step matched
        if p[n] - target[n] <= target[j] - p[j]:
            p[n] = target[n]
            p[j] = p[j] + delta
        else:
            p[n] = p[n] - delta
            p[j] = target[j]
        steps.append(TTransformStep(n, j, float(delta), (v, u), tuple(p)))
    if np.max(np.abs(p - target)) > TOL_FINAL:
        raise ConvergenceFailure("weights drifted from the target")
    out = MixedUnitaryDecomposition(target[: len(q)], tuple(unitaries[: len(q)]))
    return out, steps


def uniformize(m: MixedUnitaryDecomposition) -> MixedUnitaryDecomposition:
    """Equal weights ``1/k`` on the same number of terms."""
    k = len(m)
    uniform = np.full(k, 1.0 / k)
    if np.all(np.asarray(m.weights) == uniform):
        return m
    res, _ = reweight(m, uniform)
    return MixedUnitaryDecomposition(uniform, res.unitaries)
