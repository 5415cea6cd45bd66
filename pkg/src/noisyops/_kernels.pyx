# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: complex Jacobi eigensolver, one-sided Jacobi SVD and
the bisection for the two-unitary phase equation.

Every routine here has a line-by-line twin in :mod:`noisyops._pykernels`.
"""
import numpy as np

from libc.math cimport sqrt, fabs, cos, sin, hypot

cdef extern from "complex.h" nogil:
    double complex conj(double complex)
    double creal(double complex)
    double cimag(double complex)


cdef inline double cabs2(double complex z) noexcept nogil:
    return creal(z) * creal(z) + cimag(z) * cimag(z)


cdef inline double cabs(double complex z) noexcept nogil:
    return hypot(creal(z), cimag(z))


cdef inline void _rotation(double app, double aqq, double complex apq,
                           double* c, double* s, double* t,
                           double complex* ph) noexcept nogil:
    # G = diag(1, ph) @ [[c, s], [-s, c]] annihilates apq of the 2x2 block
    cdef double r = cabs(apq)
    cdef double theta = (aqq - app) / (2.0 * r)
    cdef double tt = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
    if theta < 0.0:
        tt = -tt
    c[0] = 1.0 / sqrt(tt * tt + 1.0)
    s[0] = tt * c[0]
    t[0] = tt
    ph[0] = conj(apq) / r


def jacobi_eigh(h, double rtol=1e-14, int max_sweeps=100):
    """Cyclic Jacobi on a Hermitian matrix; returns (eigenvalues, eigenvectors, sweeps)
    with eigenvalues unsorted."""
    a_arr = np.array(h, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t n = a_arr.shape[0]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] a = a_arr
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef double norm2 = 0.0, off2, app, aqq, r, c, s, t
    cdef double complex apq, ph, x, y, cph, sph
    for p in range(n):
        for q in range(n):
            norm2 += cabs2(a[p, q])
    with nogil:
        while sweep < max_sweeps:
            off2 = 0.0
            for p in range(n):
                for q in range(n):
                    if p != q:
                        off2 += cabs2(a[p, q])
            if sqrt(off2) <= rtol * sqrt(norm2):
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = a[p, q]
                    if apq == 0.0:
                        continue
                    app = creal(a[p, p])
                    aqq = creal(a[q, q])
                    _rotation(app, aqq, apq, &c, &s, &t, &ph)
                    r = cabs(apq)
                    sph = s * ph
                    cph = c * ph
                    for k in range(n):
                        x = a[k, p]
                        y = a[k, q]
                        a[k, p] = c * x - sph * y
                        a[k, q] = s * x + cph * y
                    for k in range(n):
                        x = a[p, k]
                        y = a[q, k]
                        a[p, k] = c * x - conj(sph) * y
                        a[q, k] = s * x + conj(cph) * y
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    a[p, p] = app - t * r
                    a[q, q] = aqq + t * r
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - sph * y
                        v[k, q] = s * x + cph * y
    w = np.real(np.diag(a_arr)).copy()
    return w, v_arr, sweep


def jacobi_svd_columns(m, double rtol=1e-15, int max_sweeps=100):
    """One-sided (Hestenes) Jacobi: rotate columns of ``m`` until mutually
    orthogonal. Returns (rotated columns, accumulated right factor, sweeps)."""
    u_arr = np.array(m, dtype=np.complex128, order="C", copy=True)
    cdef Py_ssize_t rows = u_arr.shape[0]
    cdef Py_ssize_t n = u_arr.shape[1]
    v_arr = np.eye(n, dtype=np.complex128)
    cdef double complex[:, ::1] u = u_arr
    cdef double complex[:, ::1] v = v_arr
    cdef Py_ssize_t p, q, k
    cdef int sweep = 0
    cdef bint rotated
    cdef double alpha, beta, c, s, t
    cdef double complex gamma, ph, x, y, sph, cph
    with nogil:
        while sweep < max_sweeps:
            rotated = False
            for p in range(n - 1):
                for q in range(p + 1, n):
                    alpha = 0.0
                    beta = 0.0
                    gamma = 0.0
                    for k in range(rows):
                        alpha += cabs2(u[k, p])
                        beta += cabs2(u[k, q])
                        gamma += conj(u[k, p]) * u[k, q]
                    if gamma == 0.0 or cabs(gamma) <= rtol * sqrt(alpha) * sqrt(beta):
                        continue
                    rotated = True
                    _rotation(alpha, beta, gamma, &c, &s, &t, &ph)
                    sph = s * ph
                    cph = c * ph
                    for k in range(rows):
                        x = u[k, p]
                        y = u[k, q]
                        u[k, p] = c * x - sph * y
                        u[k, q] = s * x + cph * y
                    for k in range(n):
                        x = v[k, p]
                        y = v[k, q]
                        v[k, p] = c * x - sph * y
                        v[k, q] = s * x + cph * y
            sweep += 1
            if not rotated:
                break
    return u_arr, v_arr, sweep


cdef inline double _modulus_gap(double a, double b, double c, double d,
                                double theta, double alpha) noexcept nogil:
    # |a + d e^{i theta} - b e^{i alpha}| - c; same sign as the phase equation
    cdef double re = a + d * cos(theta) - b * cos(alpha)
    cdef double im = d * sin(theta) - b * sin(alpha)
    return hypot(re, im) - c


cdef double _bisect(double a, double b, double c, double d, double theta,
                    int max_iter) noexcept nogil:
    cdef double lo = 0.0, hi = theta, mid, g
    cdef int it
    if _modulus_gap(a, b, c, d, theta, lo) == 0.0:
        return lo
    if _modulus_gap(a, b, c, d, theta, hi) == 0.0:
        return hi
    for it in range(max_iter):
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


def bisect_alpha(double a, double b, double c, double d, double theta,
                 int max_iter=200):
    """Root of the phase equation on [0, theta] by bisection.

    Assumes the residual is <= 0 at 0 and >= 0 at theta."""
    cdef double alpha
    with nogil:
        alpha = _bisect(a, b, c, d, theta, max_iter)
    return alpha
