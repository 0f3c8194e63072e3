"""Pure-NumPy implementations of the Fock-space hot kernels.

Same interface as the compiled extension ``oscdetect._kernels``; the
backend selector picks whichever is available.  Matrix elements of the
displacement operator are generated one diagonal at a time by a scaled
associated-Laguerre recurrence, so every factorial-bearing prefactor is
assembled in log space and no intermediate leaves float range on the
working envelope (|z|^2 up to ~60, truncation up to ~10^4).

Element convention, with z = R e^{i phi} and x = R^2:

    D[n+k, n] = e^{i k phi} * T_k[n]
    D[n, n+k] = (-1)^k e^{-i k phi} * T_k[n]
    T_k[n]    = sqrt(n!/(n+k)!) R^k e^{-x/2} L_n^{(k)}(x)
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "displacement_matrix",
    "displace_apply",
    "overlap_sum",
    "phase_average",
    "diagonal_sums",
]


def _as_state(c) -> np.ndarray:
    c = np.ascontiguousarray(c, dtype=np.complex128)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("state vector must be a nonempty 1-D array")
    return c


def _t_row0(dim: int, x: float, ln_r: float) -> np.ndarray:
    k = np.arange(dim, dtype=np.float64)
    lnf = np.array([math.lgamma(i + 1.0) for i in range(dim)])
    return np.exp(k * ln_r - 0.5 * x - 0.5 * lnf)


def _t_rows(dim: int, x: float, ln_r: float):
    """Yield (n, T_n) where T_n[k] = T_k[n]; entries with n + k >= dim are
    still valid matrix elements (magnitude <= 1), callers just slice."""
    k = np.arange(dim, dtype=np.float64)
    t_prev = _t_row0(dim, x, ln_r)
    yield 0, t_prev
    if dim == 1:
        return
    t_cur = (k + 1.0 - x) / np.sqrt(k + 1.0) * t_prev
    yield 1, t_cur
    for n in range(1, dim - 1):
        a = (2.0 * n + k + 1.0 - x) * np.sqrt((n + 1.0) / (n + k + 1.0)) / (n + 1.0)
        b = np.sqrt(n * (n + 1.0) * (n + k) / (n + k + 1.0)) / (n + 1.0)
        t_prev, t_cur = t_cur, a * t_cur - b * t_prev
        yield n + 1, t_cur


def diagonal_sums(c, abs_z: float) -> np.ndarray:
    """S[k] = sum_n conj(c[n+k]) c[n] T_k[n]; phase-independent part of the
    overlap <c|D(z)|c> for |z| = abs_z."""
    c = _as_state(c)
    dim = c.size
    if abs_z == 0.0:
        s = np.zeros(dim, dtype=np.complex128)
        s[0] = np.vdot(c, c)
        return s
    x = abs_z * abs_z
    ln_r = math.log(abs_z)
    cc = np.conj(c)
    s = np.zeros(dim, dtype=np.complex128)
    for n, row in _t_rows(dim, x, ln_r):
        ln = dim - n
        s[:ln] += cc[n:] * (c[n] * row[:ln])
    return s


def overlap_sum(c, z: complex) -> complex:
    """<c|D(z)|c> on the truncation of the given state vector."""
    c = _as_state(c)
    z = complex(z)
    if z == 0:
        return complex(np.vdot(c, c))
    s = diagonal_sums(c, abs(z))
    phi = math.atan2(z.imag, z.real)
    k = np.arange(c.size)
    ps = np.exp(1j * phi * k[1:]) * s[1:]
    sign = 1.0 - 2.0 * (k[1:] & 1)
    return complex(s[0] + np.sum(ps) + np.sum(sign * np.conj(ps)))


def displace_apply(c, z: complex) -> np.ndarray:
    """w = D(z) c on the truncation of the given state vector."""
    c = _as_state(c)
    z = complex(z)
    dim = c.size
    if z == 0:
        return c.copy()
    r = abs(z)
    phi = math.atan2(z.imag, z.real)
    k = np.arange(dim)
    pos = np.exp(1j * phi * k)
    neg = (1.0 - 2.0 * (k & 1)) * np.conj(pos)
    w = np.zeros(dim, dtype=np.complex128)
    for n, row in _t_rows(dim, r * r, math.log(r)):
        ln = dim - n
        w[n:] += pos[:ln] * row[:ln] * c[n]
        if ln > 1:
            w[n] += np.dot(neg[1:ln] * row[1:ln], c[n + 1:])
    return w


def displacement_matrix(dim: int, z: complex) -> np.ndarray:
    """Dense truncated matrix <m|D(z)|n>, m, n < dim."""
    dim = int(dim)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    z = complex(z)
    if z == 0:
        return np.eye(dim, dtype=np.complex128)
    r = abs(z)
    phi = math.atan2(z.imag, z.real)
    k = np.arange(dim)
    pos = np.exp(1j * phi * k)
    neg = (1.0 - 2.0 * (k & 1)) * np.conj(pos)
    out = np.zeros((dim, dim), dtype=np.complex128)
    for n, row in _t_rows(dim, r * r, math.log(r)):
        ln = dim - n
        out[n:, n] = pos[:ln] * row[:ln]
        if ln > 1:
            out[n, n + 1:] = neg[1:ln] * row[1:ln]
    return out


def phase_average(c, abs_z: float, n_phi: int) -> complex:
    """Trapezoid mean over the perturbation phase,
    (1/N) sum_j <c|D(abs_z e^{i phi_j})|c> on the uniform grid
    phi_j = -pi + 2 pi j / N."""
    c = _as_state(c)
    n_phi = int(n_phi)
    if n_phi < 1:
        raise ValueError("n_phi must be >= 1")
    if abs_z == 0.0:
        return complex(np.vdot(c, c))
    s = diagonal_sums(c, float(abs_z))
    k = np.arange(c.size)[1:]
    sign = 1.0 - 2.0 * (k & 1)
    s_tail = s[1:]
    acc = 0.0 + 0.0j
    for j in range(n_phi):
        phi_j = -math.pi + 2.0 * math.pi * j / n_phi
        ps = np.exp(1j * phi_j * k) * s_tail
        acc += s[0] + np.sum(ps) + np.sum(sign * np.conj(ps))
    return complex(acc / n_phi)
