"""Seeded random instances: Haar unitaries and random unital qubit channels.

All generators take a :class:`numpy.random.Generator`. Reproducible streams
come from :func:`trial_rng`, which seeds PCG64 through
``SeedSequence([seed, index])`` so that trial ``i`` of a run with seed ``s``
is independent of how many other trials run or in which order.
"""
import numpy as np

from .channels import ChoiMatrix, MixedUnitaryDecomposition, to_choi


def trial_rng(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Ginibre matrix with the
    phases of ``diag(R)`` moved into ``Q``."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def haar_unitary_channel(rng: np.random.Generator, dim: int = 2) -> MixedUnitaryDecomposition:
    return MixedUnitaryDecomposition([1.0], (haar_unitary(dim, rng),))


def random_mixed_unitary(k: int, rng: np.random.Generator, dim: int = 2) -> MixedUnitaryDecomposition:
    """``k`` Haar unitaries with flat-Dirichlet weights."""
    weights = rng.dirichlet(np.ones(k))
    return MixedUnitaryDecomposition(weights, tuple(haar_unitary(dim, rng) for _ in range(k)))


def random_unital_choi(rng: np.random.Generator, k: int = 4) -> ChoiMatrix:
    """Choi matrix of a random unital qubit channel (a random ``k``-term
    mixed-unitary channel, which covers every unital qubit channel for k=4)."""
    return to_choi(random_mixed_unitary(k, rng))


def random_rebalance_instance(rng: np.random.Generator):
    """Random ``(a, b, c, d)`` with ``a >= b >= c >= d >= 0``, ``a + d = b + c``."""
    x = np.sort(rng.random(2))[::-1]
    a, d = x
    delta = rng.random() * (a - d) / 2
    return a, a - delta, d + delta, d
