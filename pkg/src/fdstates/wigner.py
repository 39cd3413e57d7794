"""
Discrete number-phase Wigner function on the (s+1) x (s+1) torus.

Grids are indexed ``values[n, m]`` with n the photon number and m the phase
index of theta_m = theta0 + 2 pi m / (s+1). Two independent generic paths
are provided (phase-state matrix elements and number-state coefficients)
plus specialized closed forms for generalized and truncated coherent states.
"""
from dataclasses import dataclass
from math import lgamma, log

import numpy as np

from . import kernels
from .errors import ConfigError, ConsistencyError
from .hilbert import FockVector, phase_angles, phase_basis
from .states import _hermite_data, _polar

IMAG_TOL = 1e-10


@dataclass(frozen=True)
class WignerGrid:
    s: int
    theta0: float
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.s + 1, self.s + 1):
            raise ConfigError(f"grid shape {v.shape} does not match s={self.s}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def thetas(self):
        return phase_angles(self.s, self.theta0)

    def __call__(self, n, m):
        return wigner_point(self, n, m)


def _real_part(z, what):
    resid = float(np.abs(np.imag(z)).max()) if np.size(z) else 0.0
    if resid > IMAG_TOL:
        raise ConsistencyError(f"{what}: imaginary residue {resid:.3g} exceeds {IMAG_TOL:g}")
    return np.real(z)


def _as_amps(state):
    if isinstance(state, FockVector):
        return state.s, state.amps
    amps = np.asarray(state, dtype=np.complex128)
    return amps.size - 1, amps


def _qubit_wigner(amps, theta0):
    """Two-dimensional case: Wootters' Pauli form, rotated by theta0.

    W = 1/4 [1 + (-1)^n <sz> + (-1)^m <X> + (-1)^(n+m) <Y>] with
    X = cos(theta0) sx + sin(theta0) sy and Y = -sin(theta0) sx + cos(theta0) sy.
    """
    rho01 = amps[0] * np.conj(amps[1])
    sx = 2.0 * rho01.real
    sy = -2.0 * rho01.imag
    sz = abs(amps[0]) ** 2 - abs(amps[1]) ** 2
    c, s_ = np.cos(theta0), np.sin(theta0)
    X = c * sx + s_ * sy
    Y = -s_ * sx + c * sy
    sign = np.array([1.0, -1.0])
    return 0.25 * (1.0 + sign[:, None] * sz + sign[None, :] * X + np.outer(sign, sign) * Y)


def phase_amplitudes(state, theta0=0.0):
    """<theta_m|psi> for m = 0..s."""
    s, amps = _as_amps(state)
    return phase_basis(s, theta0).states.conj().T @ amps


def characteristic_function(state, theta0=0.0):
    """C[nu, mu] = sum_m exp(-4 pi i nu (m + mu)/(s+1)) <theta_m|rho|theta_{m+2mu}>."""
    s, _ = _as_amps(state)
    N = s + 1
    a = phase_amplitudes(state, theta0)
    idx = np.arange(N)
    C = np.zeros((N, N), dtype=np.complex128)
    for mu in range(N):
        elems = a * np.conj(a[(idx + 2 * mu) % N])
        for nu in range(N):
            C[nu, mu] = np.sum(np.exp(-4j * np.pi * nu * (idx + mu) / N) * elems)
    return C


def wigner_from_characteristic(C, theta0=0.0):
    """Inverse transform W = (1/N^2) sum exp(4 pi i (nu m - n mu)/N) C[nu, mu].

    Inverts ``characteristic_function`` exactly only for odd N (even s);
    for even N the doubled index 2 mu folds two phase pairs together.
    """
    C = np.asarray(C)
    N = C.shape[0]
    k = np.arange(N)
    F = np.exp(4j * np.pi * np.outer(k, k) / N)
    # W[n, m] = sum_{nu, mu} conj(F)[n, mu] C[nu, mu] F[nu, m]
    W = (np.conj(F) @ C.T @ F) / N**2
    return WignerGrid(N - 1, theta0, _real_part(W, "characteristic inversion"))


def wigner_from_state(state, theta0=0.0):
    """W[n, m] = (1/N) sum_mu exp(-4 pi i n mu / N) <theta_{m-mu}|rho|theta_{m+mu}>."""
    s, amps = _as_amps(state)
    if s == 1:
        return WignerGrid(s, theta0, _qubit_wigner(amps, theta0))
    N = s + 1
    a = phase_amplitudes(amps, theta0)
    idx = np.arange(N)
    F = np.exp(-4j * np.pi * np.outer(idx, idx) / N)
    W = np.empty((N, N), dtype=np.complex128)
    for m in range(N):
        W[:, m] = F @ (a[(m - idx) % N] * np.conj(a[(m + idx) % N]))
    return WignerGrid(s, theta0, _real_part(W / N, "phase-state Wigner"))


def wigner_pure_coeffs(state, theta0=0.0):
    """W from number-state coefficients.

    W[n, m] = (1/N) sum_k C_{M-k} C_k^* exp(i (k - j) theta_m) with
    j = (M - k) mod N, M = 2n mod N; i.e. the phases phi_{M-k} - phi_k sit
    inside the exponent together with (2k - M) theta_m.
    """
    s, amps = _as_amps(state)
    if s == 1:
        return WignerGrid(s, theta0, _qubit_wigner(amps, theta0))
    return WignerGrid(s, theta0, kernels.wigner_grid(np.ascontiguousarray(amps), float(theta0)))


def wigner_point(grid, n, m):
    """Grid value at unreduced integer indices (torus periodicity)."""
    N = grid.s + 1
    return float(grid.values[n % N, m % N])


def number_marginal(grid):
    return grid.values.sum(axis=1)


def phase_marginal(grid):
    return grid.values.sum(axis=0)


def line_sum(grid, a, b, c):
    """Sum of W over {(n, m): (a n + b m + c) mod N = 0}."""
    if a % (grid.s + 1) == 0 and b % (grid.s + 1) == 0:
        raise ConfigError("line needs a or b nonzero mod N")
    N = grid.s + 1
    n, m = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    mask = (a * n + b * m + c) % N == 0
    return float(grid.values[mask].sum())


def line_sums_all(grid):
    """S[a, b, c] for all a, b, c in 0..N-1 (S[0, 0, :] is meaningless)."""
    return kernels.line_sums(np.ascontiguousarray(grid.values))


def is_prime(n):
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n**0.5) + 1))


# ---------------------------------------------------------------- generalized CS

def _cs_reduced_g(s, r):
    """G_{eta k} / sqrt(k! j!) as a matrix over (k, j), j = M - k + eta (s + 1).

    The double root sum factorizes into conj(B_k) B_j / (s + 1) with
    B_n = sum_q exp(i x_q r) h_n(x_q) w_q, which avoids the factorials.
    """
    x, h, w = _hermite_data(s)
    B = h @ (np.exp(1j * r * x) * w)
    return np.outer(np.conj(B), B) / (s + 1)


def wigner_generalized_cs(s, alpha, form="complex", theta0=0.0):
    """Closed-form W of the generalized coherent state, even s only.

    ``form="complex"`` sums exponentials of (2k - M)(theta_m - phi + pi/2);
    ``form="real"`` is the cosine form split at n = s/2, where the terms
    with odd index sum k + j enter through Im G (they are purely imaginary).
    """
    if s % 2:
        raise ConfigError("specialized coherent-state Wigner form needs even s")
    r, phi = _polar(alpha)
    N = s + 1
    G = _cs_reduced_g(s, r)
    th = phase_angles(s, theta0)
    if form == "complex":
        W = np.zeros((N, N), dtype=np.complex128)
        for n in range(N):
            M = (2 * n) % N
            z = th - phi + np.pi / 2
            for k in range(M + 1, N):
                W[n] += np.exp(1j * (2 * k - M - N) * z) * G[k, M - k + N]
            for k in range(M + 1):
                W[n] += np.exp(1j * (2 * k - M) * z) * G[k, M - k]
        return WignerGrid(s, theta0, _real_part(W, "generalized CS Wigner"))
    if form != "real":
        raise ConfigError(f"unknown form {form!r}")
    half = s // 2
    W = np.zeros((N, N))
    for n in range(N):
        y = th - phi
        if 2 * n <= s:
            for k in range(2 * n + 1, N):
                W[n] += ((-1) ** (k - n - half) * np.cos((2 * k - 2 * n - N) * y)
                         * G[k, 2 * n - k + N].imag)
            for k in range(2 * n + 1):
                W[n] += (-1) ** (k - n) * np.cos((2 * k - 2 * n) * y) * G[k, 2 * n - k].real
        else:
            for k in range(2 * n - s):
                W[n] -= ((-1) ** (k - n - half) * np.cos((2 * k - 2 * n + N) * y)
                         * G[k, 2 * n - s - 1 - k].imag)
            for k in range(2 * n - s, N):
                W[n] += (-1) ** (k - n) * np.cos((2 * k - 2 * n) * y) * G[k, 2 * n - k].real
    return WignerGrid(s, theta0, W)


# ---------------------------------------------------------------- truncated CS

def truncated_cs_wigner_terms(s, alpha_bar, theta0=0.0):
    """(Lambda1, Phi1, Lambda2, Phi2) of the two-term factored W.

    Lambda_i depend on n and |alpha_bar| only; Phi_i on n, theta_m and the
    phase of alpha_bar only. Lambda2 and Phi2 vanish where their sums are empty.
    """
    r, phi = _polar(alpha_bar)
    N = s + 1
    n_idx = np.arange(N)
    lg = np.array([lgamma(k + 1) for k in range(2 * N + 1)])
    if r > 0:
        logs = 2 * n_idx * log(r) - lg[:N]
        log_norm2 = -(logs.max() + np.log(np.exp(logs - logs.max()).sum()))
    else:
        log_norm2 = 0.0
    y = phase_angles(s, theta0) - phi
    L1 = np.zeros(N)
    L2 = np.zeros(N)
    P1 = np.zeros((N, N))
    P2 = np.zeros((N, N))
    for n in range(N):
        M = (2 * n) % N
        mu1, mu2 = M // 2, (M + 1 + s) // 2
        L1[n] = _power_over_factorial(log_norm2, r, M, lg[mu1])
        for k in range(M + 1):
            P1[n] += np.cos((2 * k - M) * y) * np.exp(lg[mu1] - 0.5 * (lg[k] + lg[M - k]))
        if M + 1 <= s:
            L2[n] = _power_over_factorial(log_norm2, r, M + N, lg[mu2])
            for k in range(M + 1, N):
                P2[n] += np.cos((2 * k - M - N) * y) * np.exp(
                    lg[mu2] - 0.5 * (lg[k] + lg[M - k + N]))
    return L1, P1, L2, P2


def _power_over_factorial(log_norm2, r, p, log_fact):
    if r == 0.0:
        return float(np.exp(log_norm2 - log_fact)) if p == 0 else 0.0
    return float(np.exp(log_norm2 + p * log(r) - log_fact))


def wigner_truncated_cs_factored(s, alpha_bar, theta0=0.0):
    L1, P1, L2, P2 = truncated_cs_wigner_terms(s, alpha_bar, theta0)
    W = (L1[:, None] * P1 + L2[:, None] * P2) / (s + 1)
    return WignerGrid(s, theta0, W)
