"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same algorithms, same return conventions; used when the extension is not
built or when ``NOISYOPS_PURE_PYTHON=1`` is set.
"""
import cmath
import math

import numpy as np


def _rotation(app, aqq, apq):
    r = abs(apq)
    theta = (aqq - app) / (2.0 * r)
    t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
    if theta < 0.0:
        t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c, t, apq.conjugate() / r


def jacobi_eigh(h, rtol=1e-14, max_sweeps=100):
    a = np.array(h, dtype=np.complex128, copy=True)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    norm = np.linalg.norm(a)
    sweep = 0
    while sweep < max_sweeps:
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= rtol * norm:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                if apq == 0:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                c, s, t, ph = _rotation(app, aqq, apq)
                r = abs(apq)
                g = np.array([[c, s], [-s * ph, c * ph]])
                a[:, [p, q]] = a[:, [p, q]] @ g
                a[[p, q], :] = g.conj().T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * r
                a[q, q] = aqq + t * r
                v[:, [p, q]] = v[:, [p, q]] @ g
    return np.real(np.diag(a)).copy(), v, sweep


def jacobi_svd_columns(m, rtol=1e-15, max_sweeps=100):
    u = np.array(m, dtype=np.complex128, copy=True)
    n = u.shape[1]
    v = np.eye(n, dtype=np.complex128)
    sweep = 0
    while sweep < max_sweeps:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                alpha = float(np.vdot(u[:, p], u[:, p]).real)
                beta = float(np.vdot(u[:, q], u[:, q]).real)
                gamma = complex(np.vdot(u[:, p], u[:, q]))
                if gamma == 0 or abs(gamma) <= rtol * math.sqrt(alpha) * math.sqrt(beta):
                    continue
                rotated = True
                c, s, _, ph = _rotation(alpha, beta, gamma)
                g = np.array([[c, s], [-s * ph, c * ph]])
                u[:, [p, q]] = u[:, [p, q]] @ g
                v[:, [p, q]] = v[:, [p, q]] @ g
        sweep += 1
        if not rotated:
            break
    return u, v, sweep


def _modulus_gap(a, b, c, d, theta, alpha):
    return abs(a + d * cmath.exp(1j * theta) - b * cmath.exp(1j * alpha)) - c


def bisect_alpha(a, b, c, d, theta, max_iter=200):
    lo, hi = 0.0, theta
    if _modulus_gap(a, b, c, d, theta, lo) == 0.0:
        return lo
    if _modulus_gap(a, b, c, d, theta, hi) == 0.0:
        return hi
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        g = _modulus_gap(a, b, c, d, theta, mid)
        if g == 0.0:
            return mid
        if g < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
