"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. The eigensolver
and SVD run on the Jacobi kernels from :mod:`noisyops.kernels`; everything
else is thin numpy plumbing.
"""
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotHermitian

TOL_HERM = 1e-10
TOL_EIG = 1e-10
TOL_UNITARY = 1e-10

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: ``PAULIS[0]`` is the identity, ``PAULIS[1:]`` are sigma_x, sigma_y, sigma_z.
PAULIS = (I2, SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in PAULIS:
    _m.flags.writeable = False


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


class SingularValueDecomposition(NamedTuple):
    left: np.ndarray
    singulars: np.ndarray
    right: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce to a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def hermitian_eig(h, tol_herm: float = TOL_HERM) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    h : array_like
        Square matrix, Hermitian up to ``tol_herm`` (relative to its
        Frobenius norm).
    tol_herm : float
        Relative Hermiticity tolerance.

    Returns
    -------
    EigenDecomposition
        Eigenvalues in descending order and the matching orthonormal
        eigenvectors as columns.

    Raises
    ------
    NotHermitian
        If ``||H - H^dagger||_F > tol_herm * ||H||_F``.
    """
    a = as_matrix(h)
    _require_square(a)
    norm = np.linalg.norm(a)
    if np.linalg.norm(a - dagger(a)) > tol_herm * norm:
        raise NotHermitian("matrix is not Hermitian within tolerance")
    a = 0.5 * (a + dagger(a))
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        scale = 1.0
    values, vectors, _ = kernels.jacobi_eigh(a / scale)
    values = values * scale
    order = np.argsort(-values, kind="stable")
    return EigenDecomposition(values[order], vectors[:, order])


def svd(m) -> SingularValueDecomposition:
    """Full singular value decomposition ``M = left @ diag(singulars) @ right^dagger``.

    The right factor is accumulated by one-sided Jacobi rotations, which
    diagonalize ``M^dagger M`` implicitly without forming it. Left singular
    vectors are ``M v_i / sigma_i``, re-orthonormalized, with the null space
    completed by Gram-Schmidt.
    """
    a = as_matrix(m)
    rows, cols = a.shape
    if rows < cols:
        res = svd(dagger(a))
        return SingularValueDecomposition(res.right, res.singulars, res.left)
    scale = np.max(np.abs(a)) if a.size else 0.0
    if scale == 0.0:
        scale = 1.0
    work, right, _ = kernels.jacobi_svd_columns(a / scale)
    work = work * scale
    norms = np.linalg.norm(work, axis=0)
    order = np.argsort(-norms, kind="stable")
    norms = norms[order]
    work = work[:, order]
    right = right[:, order]
    left = _orthonormal_columns(work, norms, rows)
    return SingularValueDecomposition(left, norms, right)


def _orthonormal_columns(work: np.ndarray, norms: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros((size, size), dtype=complex)
    scale = norms[0] if len(norms) else 0.0
    filled = []
    pending = []
    for j in range(work.shape[1]):
        if norms[j] > 1e-300 and norms[j] > 1e-15 * scale:
            w = work[:, j] / norms[j]
            for _ in range(2):
                for i in filled:
                    w = w - np.vdot(out[:, i], w) * out[:, i]
            nrm = np.linalg.norm(w)
            if nrm > 0.5:
                out[:, j] = w / nrm
                filled.append(j)
                continue
        pending.append(j)
    pending += list(range(work.shape[1], size))
    unit = np.eye(size, dtype=complex)
    for j in pending:
        # standard basis vector with the largest residual (always >= 1/sqrt(size))
        resid = unit - out[:, filled] @ (dagger(out[:, filled]) @ unit)
        w = resid[:, np.argmax(np.linalg.norm(resid, axis=0))]
        for _ in range(2):
            for i in filled:
                w = w - np.vdot(out[:, i], w) * out[:, i]
        out[:, j] = w / np.linalg.norm(w)
        filled.append(j)
    return out


def kron(a, b) -> np.ndarray:
    """Kronecker product with ``(A (x) B)[i*rB + k, j*cB + l] = A[i, j] B[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace_env(y, d: int, n: int) -> np.ndarray:
    """Trace out the second (environment) factor of a ``dn x dn`` operator."""
    a = as_matrix(y)
    if a.shape != (d * n, d * n):
        raise DimensionMismatch(f"operator of shape {a.shape} is not {d}*{n} square")
    return np.trace(a.reshape(d, n, d, n), axis1=1, axis2=3)


def partial_trace_first(y, d: int, n: int) -> np.ndarray:
    """Trace out the first factor of a ``dn x dn`` operator."""
    a = as_matrix(y)
    if a.shape != (d * n, d * n):
        raise DimensionMismatch(f"operator of shape {a.shape} is not {d}*{n} square")
    return np.trace(a.reshape(d, n, d, n), axis1=0, axis2=2)


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``Tr(A^dagger B)``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def is_unitary(u, tol: float = TOL_UNITARY) -> bool:
    a = as_matrix(u)
    if a.shape[0] != a.shape[1]:
        return False
    return bool(np.linalg.norm(dagger(a) @ a - np.eye(a.shape[0])) <= tol)


def fix_global_phase(u: np.ndarray, atol: float = 1e-9) -> np.ndarray:
    """Rotate the global phase so the first entry (row-major) with modulus
    above ``atol`` is real and positive."""
    flat = u.reshape(-1)
    for z in flat:
        if abs(z) > atol:
            return u * (abs(z) / z)
    return u.copy()
