"""Numpy implementations of the inner loops; used when the extension is absent."""
import numpy as np


def wigner_grid(amps, theta0):
    amps = np.asarray(amps, dtype=np.complex128)
    N = amps.shape[0]
    k = np.arange(N)
    n = np.arange(N)[:, None]
    j = (2 * n - k[None, :]) % N
    pairs = amps[j] * np.conj(amps)[None, :]
    thetas = theta0 + 2.0 * np.pi * np.arange(N) / N
    phase = np.exp(1j * (k[None, :] - j)[:, :, None] * thetas[None, None, :])
    return np.einsum("nk,nkm->nm", pairs, phase).real / N


def line_sums(grid):
    grid = np.asarray(grid, dtype=np.float64)
    N = grid.shape[0]
    n, m = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    weights = grid.ravel()
    out = np.zeros((N, N, N))
    c_of_residue = (-np.arange(N)) % N
    for a in range(N):
        for b in range(N):
            res = ((a * n + b * m) % N).ravel()
            out[a, b, c_of_residue] = np.bincount(res, weights=weights, minlength=N)
    return out


def orthonormal_table(x, offdiag, nmax):
    x = np.asarray(x, dtype=np.float64)
    offdiag = np.asarray(offdiag, dtype=np.float64)
    vals = np.zeros((nmax + 1, x.size))
    ders = np.zeros((nmax + 1, x.size))
    vals[0] = 1.0
    if nmax >= 1:
        vals[1] = x / offdiag[1]
        ders[1] = 1.0 / offdiag[1]
    for n in range(1, nmax):
        vals[n + 1] = (x * vals[n] - offdiag[n] * vals[n - 1]) / offdiag[n + 1]
        ders[n + 1] = (vals[n] + x * ders[n] - offdiag[n] * ders[n - 1]) / offdiag[n + 1]
    return vals, ders
