"""
Primitives of the (s+1)-dimensional Hilbert space H_s.

All operators are dense complex arrays in the number basis |0>..|s>.
Phase-basis objects are converted to the number basis on construction.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, MatrixNormError

TWO_PI = 2.0 * np.pi
DEFAULT_MAX_NORM = 1e6
WRAP_SNAP = 1e-12


@dataclass(frozen=True)
class FockVector:
    """Pure state in H_s, stored as s+1 complex number-basis amplitudes."""

    s: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=np.complex128).reshape(-1)
        if amps.size != self.s + 1:
            raise ConfigError(f"expected {self.s + 1} amplitudes, got {amps.size}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self):
        return self.s + 1

    def norm(self):
        return float(np.linalg.norm(self.amps))

    def probabilities(self):
        return np.abs(self.amps) ** 2


def _check_s(s):
    if int(s) != s or s < 0:
        raise ConfigError(f"s must be a nonnegative integer, got {s!r}")
    return int(s)


def annihilation_op(s):
    """FD annihilation operator: a|n> = sqrt(n)|n-1>, a|0> = 0."""
    s = _check_s(s)
    return np.diag(np.sqrt(np.arange(1, s + 1, dtype=float)), 1).astype(np.complex128)


def creation_op(s):
    return annihilation_op(s).conj().T


def number_op(s):
    s = _check_s(s)
    return np.diag(np.arange(s + 1, dtype=float)).astype(np.complex128)


def commutator(A, B):
    return A @ B - B @ A


def number_phase_commutator_check(s):
    """Return [a, a^dag]; it should equal 1 - (s+1)|s><s|."""
    a = annihilation_op(s)
    return commutator(a, a.conj().T)


@dataclass(frozen=True)
class PhaseBasis:
    """Phase states |theta_m> as the columns of ``states`` (number basis)."""

    s: int
    theta0: float
    thetas: np.ndarray
    states: np.ndarray

    def vector(self, m):
        return FockVector(self.s, self.states[:, m])


def phase_angles(s, theta0=0.0, wrap_angles=False):
    """theta_m = theta0 + 2 pi m / (s+1); optionally reduced to [0, 2 pi).

    Reduced angles within ``WRAP_SNAP`` of 0 or 2 pi are set to exactly 0:
    the ladder operators take sqrt(theta), which would turn a 1e-16
    round-off residue into a 1e-8 matrix entry.
    """
    s = _check_s(s)
    th = theta0 + TWO_PI * np.arange(s + 1) / (s + 1)
    if wrap_angles:
        th = np.mod(th, TWO_PI)
        th[(th < WRAP_SNAP) | (th > TWO_PI - WRAP_SNAP)] = 0.0
    return th


def phase_basis(s, theta0=0.0):
    s = _check_s(s)
    th = phase_angles(s, theta0)
    n = np.arange(s + 1)
    states = np.exp(1j * np.outer(n, th)) / np.sqrt(s + 1)
    states.setflags(write=False)
    th.setflags(write=False)
    return PhaseBasis(s, float(theta0), th, states)


def phase_state(s, theta0, m):
    s = _check_s(s)
    if not 0 <= m <= s:
        raise ConfigError(f"phase index m={m} outside 0..{s}")
    n = np.arange(s + 1)
    return FockVector(s, np.exp(1j * n * (theta0 + TWO_PI * m / (s + 1))) / np.sqrt(s + 1))


def phase_operator(s, theta0=0.0, wrap_angles=False):
    """Hermitian phase operator sum_m theta_m |theta_m><theta_m| over m = 0..s."""
    P = phase_basis(s, theta0).states
    th = phase_angles(s, theta0, wrap_angles)
    return (P * th) @ P.conj().T


def phase_ladder_ops(s, theta0=0.0, wrap_angles=False):
    """Phase annihilation and creation operators (phi, phi^dag).

    phi|theta_m> = sqrt(theta_m)|theta_{m-1}> for m >= 1 and
    phi|theta_0> = sqrt(theta_0)|theta_s>.
    """
    s = _check_s(s)
    P = phase_basis(s, theta0).states
    th = phase_angles(s, theta0, wrap_angles)
    if np.any(th < 0):
        raise ConfigError("phase ladder operators need nonnegative angles")
    L = np.zeros((s + 1, s + 1), dtype=np.complex128)
    for m in range(1, s + 1):
        L[m - 1, m] = np.sqrt(th[m])
    L[s, 0] = np.sqrt(th[0])
    phi = P @ L @ P.conj().T
    return phi, phi.conj().T


# Pade-13 coefficients (Higham 2005)
_PADE13 = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_THETA13 = 5.371920351148152


def matrix_exponential(M, max_norm=DEFAULT_MAX_NORM):
    """exp(M) by Pade-13 scaling and squaring.

    Raises MatrixNormError when the 1-norm of M exceeds ``max_norm``.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ConfigError("matrix_exponential needs a square matrix")
    if not np.all(np.isfinite(M)):
        raise MatrixNormError("matrix has non-finite entries")
    norm = np.abs(M).sum(axis=0).max() if M.size else 0.0
    if norm > max_norm:
        raise MatrixNormError(f"1-norm {norm:.3g} exceeds bound {max_norm:.3g}")
    if norm == 0.0:
        return np.eye(M.shape[0], dtype=np.complex128)
    squarings = max(0, int(np.ceil(np.log2(norm / _THETA13)))) if norm > _THETA13 else 0
    A = M / 2.0 ** squarings
    b = _PADE13
    ident = np.eye(A.shape[0], dtype=np.complex128)
    A2 = A @ A
    A4 = A2 @ A2
    A6 = A2 @ A4
    U = A @ (A6 @ (b[13] * A6 + b[11] * A4 + b[9] * A2)
             + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * ident)
    V = (A6 @ (b[12] * A6 + b[10] * A4 + b[8] * A2)
         + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * ident)
    R = np.linalg.solve(V - U, V + U)
    for _ in range(squarings):
        R = R @ R
    return R


def displacement_op(s, alpha, max_norm=DEFAULT_MAX_NORM):
    """exp(alpha a^dag - alpha^* a)."""
    a = annihilation_op(s)
    return matrix_exponential(alpha * a.conj().T - np.conj(alpha) * a, max_norm)


def squeeze_op(s, zeta, max_norm=DEFAULT_MAX_NORM):
    """exp((zeta a^dag^2 - zeta^* a^2) / 2)."""
    a = annihilation_op(s)
    a2 = a @ a
    return matrix_exponential(0.5 * (zeta * a2.conj().T - np.conj(zeta) * a2), max_norm)


def phase_displacement_op(s, beta, theta0=0.0, wrap_angles=False, max_norm=DEFAULT_MAX_NORM):
    """exp(beta phi^dag - beta^* phi)."""
    phi, phid = phase_ladder_ops(s, theta0, wrap_angles)
    return matrix_exponential(beta * phid - np.conj(beta) * phi, max_norm)
