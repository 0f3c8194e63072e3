# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled Fock-space hot kernels.

Twin of ``oscdetect._kernels_py`` (same interface, same math): truncated
displacement application, overlaps and phase averages over the number
basis, built diagonal by diagonal from a scaled associated-Laguerre
recurrence with log-space prefactors.
"""

import numpy as np

from libc.math cimport atan2, cos, exp, lgamma, log, sin, sqrt

cdef double M_PI = 3.141592653589793238462643383279502884


cdef inline double _t_start(Py_ssize_t k, double x, double ln_r) nogil:
    # T_k[0] = R^k e^{-x/2} / sqrt(k!)
    return exp(k * ln_r - 0.5 * x - 0.5 * lgamma(k + 1.0))


cdef void _diag_sums_c(const double complex[::1] c, double abs_z,
                       double complex[::1] out) nogil:
    # out[k] = sum_n conj(c[n+k]) c[n] T_k[n]
    cdef Py_ssize_t dim = c.shape[0]
    cdef double x = abs_z * abs_z
    cdef double ln_r = log(abs_z)
    cdef Py_ssize_t k, n
    cdef double t_prev, t_cur, t_next, fn
    cdef double complex acc
    for k in range(dim):
        t_prev = _t_start(k, x, ln_r)
        acc = (c[k].conjugate()) * c[0] * t_prev
        if dim - k > 1:
            t_cur = (k + 1.0 - x) / sqrt(k + 1.0) * t_prev
            acc = acc + (c[k + 1].conjugate()) * c[1] * t_cur
            for n in range(1, dim - k - 1):
                fn = n
                t_next = ((2.0 * fn + k + 1.0 - x) * sqrt((fn + 1.0) / (fn + k + 1.0)) * t_cur
                          - sqrt(fn * (fn + 1.0) * (fn + k) / (fn + k + 1.0)) * t_prev) / (fn + 1.0)
                t_prev = t_cur
                t_cur = t_next
                acc = acc + (c[n + 1 + k].conjugate()) * c[n + 1] * t_cur
        out[k] = acc


def _as_state(c):
    c = np.ascontiguousarray(c, dtype=np.complex128)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("state vector must be a nonempty 1-D array")
    return c


def diagonal_sums(c, double abs_z):
    """S[k] = sum_n conj(c[n+k]) c[n] T_k[n]; phase-independent part of the
    overlap <c|D(z)|c> for |z| = abs_z."""
    c = _as_state(c)
    cdef const double complex[::1] cv = c
    out = np.empty(c.size, dtype=np.complex128)
    cdef double complex[::1] ov = out
    if abs_z == 0.0:
        out[:] = 0.0
        out[0] = np.vdot(c, c)
        return out
    with nogil:
        _diag_sums_c(cv, abs_z, ov)
    return out


def overlap_sum(c, z):
    """<c|D(z)|c> on the truncation of the given state vector."""
    c = _as_state(c)
    cdef double complex zz = z
    if zz == 0:
        return complex(np.vdot(c, c))
    s = diagonal_sums(c, abs(zz))
    cdef double complex[::1] sv = s
    cdef double phi = atan2(zz.imag, zz.real)
    cdef Py_ssize_t dim = s.shape[0], k
    cdef double complex acc = sv[0]
    cdef double complex ph, term
    cdef double sign
    for k in range(1, dim):
        ph.real = cos(k * phi)
        ph.imag = sin(k * phi)
        sign = -1.0 if (k & 1) else 1.0
        term = ph * sv[k]
        acc = acc + term + sign * term.conjugate()
    return complex(acc)


def displace_apply(c, z):
    """w = D(z) c on the truncation of the given state vector."""
    c = _as_state(c)
    cdef double complex zz = z
    if zz == 0:
        return c.copy()
    cdef const double complex[::1] cv = c
    w = np.zeros(c.size, dtype=np.complex128)
    cdef double complex[::1] wv = w
    cdef Py_ssize_t dim = c.shape[0]
    cdef double r = abs(zz)
    cdef double x = r * r
    cdef double ln_r = log(r)
    cdef double phi = atan2(zz.imag, zz.real)
    cdef Py_ssize_t k, n
    cdef double t_prev, t_cur, t_next, fn, sign
    cdef double complex ph, phn
    with nogil:
        for k in range(dim):
            ph.real = cos(k * phi)
            ph.imag = sin(k * phi)
            sign = -1.0 if (k & 1) else 1.0
            phn = sign * ph.conjugate()
            t_prev = _t_start(k, x, ln_r)
            wv[k] = wv[k] + ph * t_prev * cv[0]
            if k > 0:
                wv[0] = wv[0] + phn * t_prev * cv[k]
            if dim - k > 1:
                t_cur = (k + 1.0 - x) / sqrt(k + 1.0) * t_prev
                wv[k + 1] = wv[k + 1] + ph * t_cur * cv[1]
                if k > 0:
                    wv[1] = wv[1] + phn * t_cur * cv[k + 1]
                for n in range(1, dim - k - 1):
                    fn = n
                    t_next = ((2.0 * fn + k + 1.0 - x) * sqrt((fn + 1.0) / (fn + k + 1.0)) * t_cur
                              - sqrt(fn * (fn + 1.0) * (fn + k) / (fn + k + 1.0)) * t_prev) / (fn + 1.0)
                    t_prev = t_cur
                    t_cur = t_next
                    wv[n + 1 + k] = wv[n + 1 + k] + ph * t_cur * cv[n + 1]
                    if k > 0:
                        wv[n + 1] = wv[n + 1] + phn * t_cur * cv[n + 1 + k]
    return w


def displacement_matrix(Py_ssize_t dim, z):
    """Dense truncated matrix <m|D(z)|n>, m, n < dim."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    cdef double complex zz = z
    if zz == 0:
        return np.eye(dim, dtype=np.complex128)
    out = np.zeros((dim, dim), dtype=np.complex128)
    cdef double complex[:, ::1] mv = out
    cdef double r = abs(zz)
    cdef double x = r * r
    cdef double ln_r = log(r)
    cdef double phi = atan2(zz.imag, zz.real)
    cdef Py_ssize_t k, n
    cdef double t_prev, t_cur, t_next, fn, sign
    cdef double complex ph, phn
    with nogil:
        for k in range(dim):
            ph.real = cos(k * phi)
            ph.imag = sin(k * phi)
            sign = -1.0 if (k & 1) else 1.0
            phn = sign * ph.conjugate()
            t_prev = _t_start(k, x, ln_r)
            mv[k, 0] = ph * t_prev
            if k > 0:
                mv[0, k] = phn * t_prev
            if dim - k > 1:
                t_cur = (k + 1.0 - x) / sqrt(k + 1.0) * t_prev
                mv[k + 1, 1] = ph * t_cur
                if k > 0:
                    mv[1, k + 1] = phn * t_cur
                for n in range(1, dim - k - 1):
                    fn = n
                    t_next = ((2.0 * fn + k + 1.0 - x) * sqrt((fn + 1.0) / (fn + k + 1.0)) * t_cur
                              - sqrt(fn * (fn + 1.0) * (fn + k) / (fn + k + 1.0)) * t_prev) / (fn + 1.0)
                    t_prev = t_cur
                    t_cur = t_next
                    mv[n + 1 + k, n + 1] = ph * t_cur
                    if k > 0:
                        mv[n + 1, n + 1 + k] = phn * t_cur
    return out


def phase_average(c, double abs_z, Py_ssize_t n_phi):
    """Trapezoid mean over the perturbation phase,
    (1/N) sum_j <c|D(abs_z e^{i phi_j})|c> on the uniform grid
    phi_j = -pi + 2 pi j / N."""
    c = _as_state(c)
    if n_phi < 1:
        raise ValueError("n_phi must be >= 1")
    if abs_z == 0.0:
        return complex(np.vdot(c, c))
    s = diagonal_sums(c, abs_z)
    cdef double complex[::1] sv = s
    cdef Py_ssize_t dim = s.shape[0], j, k
    cdef double phi_j, sign
    cdef double complex rot, ph, term, o_j, acc
    acc = 0
    with nogil:
        for j in range(n_phi):
            phi_j = -M_PI + (2.0 * M_PI * j) / n_phi
            rot.real = cos(phi_j)
            rot.imag = sin(phi_j)
            o_j = sv[0]
            ph = rot
            for k in range(1, dim):
                # resync the rotation now and then to stop drift
                if (k & 1023) == 0:
                    ph.real = cos(k * phi_j)
                    ph.imag = sin(k * phi_j)
                sign = -1.0 if (k & 1) else 1.0
                term = ph * sv[k]
                o_j = o_j + term + sign * term.conjugate()
                ph = ph * rot
            acc = acc + o_j
    return complex(acc / n_phi)
