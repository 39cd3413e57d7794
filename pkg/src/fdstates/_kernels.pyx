# cython: language_level=3
"""Compiled inner loops. Signatures mirror ``_kernels_py``."""
from libc.math cimport cos, sin

import numpy as np


def wigner_grid(const double complex[:] amps, double theta0):
    """Pure-state number-phase Wigner grid W[n, m] from Fock amplitudes."""
    cdef Py_ssize_t N = amps.shape[0]
    cdef Py_ssize_t n, m, k, j, d, M
    cdef double step = 2.0 * 3.141592653589793 / N
    cdef double acc, vr, vi, ang

    out = np.empty((N, N), dtype=np.float64)
    cdef double[:, ::1] w = out
    # trig table for e^{i d theta_m}, d in [-(N-1), N-1]
    ctab = np.empty((2 * N - 1, N), dtype=np.float64)
    stab = np.empty((2 * N - 1, N), dtype=np.float64)
    cdef double[:, ::1] ct = ctab
    cdef double[:, ::1] st = stab
    for d in range(2 * N - 1):
        for m in range(N):
            ang = (d - (N - 1)) * (theta0 + step * m)
            ct[d, m] = cos(ang)
            st[d, m] = sin(ang)

    pr = np.empty(N, dtype=np.float64)
    pi_ = np.empty(N, dtype=np.float64)
    dd = np.empty(N, dtype=np.intp)
    cdef double[::1] vre = pr
    cdef double[::1] vim = pi_
    cdef Py_ssize_t[::1] dk = dd
    cdef double complex v

    for n in range(N):
        M = (2 * n) % N
        for k in range(N):
            j = M - k
            if j < 0:
                j += N
            v = amps[j] * amps[k].conjugate()
            vre[k] = v.real
            vim[k] = v.imag
            dk[k] = k - j + (N - 1)
        for m in range(N):
            acc = 0.0
            for k in range(N):
                d = dk[k]
                acc += vre[k] * ct[d, m] - vim[k] * st[d, m]
            w[n, m] = acc / N
    return out


def line_sums(const double[:, :] grid):
    """S[a, b, c] = sum of grid over {(n, m): (a n + b m + c) mod N == 0}."""
    cdef Py_ssize_t N = grid.shape[0]
    cdef Py_ssize_t a, b, n, m, r
    out = np.zeros((N, N, N), dtype=np.float64)
    cdef double[:, :, ::1] s = out
    for a in range(N):
        for b in range(N):
            for n in range(N):
                r = (a * n) % N
                for m in range(N):
                    # residue (a n + b m) mod N; line index c = -residue mod N
                    s[a, b, (N - r) % N] += grid[n, m]
                    r += b
                    if r >= N:
                        r -= N
    return out


def orthonormal_table(const double[:] x, const double[:] offdiag, Py_ssize_t nmax):
    """Orthonormal three-term recurrence values and x-derivatives.

    p_{n+1} = (x p_n - e_n p_{n-1}) / e_{n+1}, p_0 = 1, with e_k = offdiag[k].
    """
    cdef Py_ssize_t K = x.shape[0]
    cdef Py_ssize_t n, i
    cdef double xi
    vals = np.zeros((nmax + 1, K), dtype=np.float64)
    ders = np.zeros((nmax + 1, K), dtype=np.float64)
    cdef double[:, ::1] p = vals
    cdef double[:, ::1] q = ders
    for i in range(K):
        xi = x[i]
        p[0, i] = 1.0
        if nmax >= 1:
            p[1, i] = xi / offdiag[1]
            q[1, i] = 1.0 / offdiag[1]
        for n in range(1, nmax):
            p[n + 1, i] = (xi * p[n, i] - offdiag[n] * p[n - 1, i]) / offdiag[n + 1]
            q[n + 1, i] = (p[n, i] + xi * q[n, i] - offdiag[n] * q[n - 1, i]) / offdiag[n + 1]
    return vals, ders
