"""
State constructors in H_s.

Every family comes in two variants:

* generalized: an FD operator exponential applied to a seed vector, evaluated
  in closed form through Gauss-Jacobi spectral sums over polynomial roots;
* truncated: the infinite-dimensional Fock expansion cut at |s> and
  renormalized.

A third variant, conventional, gives the infinite-dimensional coherent and
squeezed states in a large truncation; it is the reference for overlap
series. ``oracle_state`` rebuilds any generalized state from a matrix
exponential so the closed forms can be checked independently.
"""
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import ceil, factorial, lgamma, log, sqrt
from typing import Optional

import numpy as np
from scipy.special import hyp2f1

from . import hilbert
from .errors import ConfigError, DegenerateStateError
from .hilbert import FockVector
from .poly import (
    hermite_he_roots,
    hermite_orthonormal,
    laguerre_gen,
    meixner_sheffer_offdiag,
    meixner_sheffer_orthonormal,
    meixner_sheffer_roots,
)

ODD_CAT_MIN_NORM = 1e-8


class Family(str, Enum):
    COHERENT = "coherent"
    PHASE_COHERENT = "phase-coherent"
    DISPLACED_NUMBER = "displaced-number"
    CAT = "cat"
    SQUEEZED_VACUUM = "squeezed-vacuum"


class Variant(str, Enum):
    GENERALIZED = "generalized"
    TRUNCATED = "truncated"
    CONVENTIONAL = "conventional"


@dataclass(frozen=True)
class StateSpec:
    """Declarative state description.

    ``aux`` is n_d for displaced number states, the parity delta for cats and
    m0 (theta0 = 2 pi m0 / (s+1)) for phase coherent states.
    """

    family: Family
    variant: Variant
    s: int
    param: complex = 0.0
    aux: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "param", complex(self.param))
        self.validate()

    def validate(self):
        if int(self.s) != self.s or self.s < 0:
            raise ConfigError(f"s must be a nonnegative integer, got {self.s!r}")
        if not np.isfinite(self.param):
            raise ConfigError("parameter must be finite")
        aux = self.aux_value
        if self.family is Family.CAT and aux not in (0, 1):
            raise ConfigError(f"cat parity must be 0 or 1, got {aux}")
        if self.family in (Family.DISPLACED_NUMBER, Family.PHASE_COHERENT):
            if not 0 <= aux <= self.s:
                raise ConfigError(f"aux index {aux} outside 0..{self.s}")
        if self.variant is Variant.CONVENTIONAL and self.family not in (
            Family.COHERENT,
            Family.SQUEEZED_VACUUM,
        ):
            raise ConfigError("conventional variant exists only for coherent and squeezed-vacuum")

    @property
    def aux_value(self):
        return 0 if self.aux is None else int(self.aux)

    @property
    def theta0(self):
        if self.family is Family.PHASE_COHERENT:
            return 2.0 * np.pi * self.aux_value / (self.s + 1)
        return 0.0

    def with_param(self, param):
        return StateSpec(self.family, self.variant, self.s, param, self.aux)

    def to_dict(self):
        return {
            "family": self.family.value,
            "variant": self.variant.value,
            "s": int(self.s),
            "param_re": float(self.param.real),
            "param_im": float(self.param.imag),
            "aux": self.aux,
        }


def _polar(z):
    z = complex(z)
    return abs(z), float(np.angle(z)) if z != 0 else 0.0


def _normalized(s, amps):
    amps = np.asarray(amps, dtype=np.complex128)
    return FockVector(s, amps / np.linalg.norm(amps))


# ---------------------------------------------------------------- spectral data

@lru_cache(maxsize=None)
def _hermite_data(s):
    """Roots of He_{s+1}, orthonormal table h[n, k] (n <= s) and Gauss weights."""
    x = hermite_he_roots(s + 1)
    h, _ = hermite_orthonormal(s, x)
    w = 1.0 / ((s + 1) * h[s] ** 2)
    for arr in (h, w):
        arr.setflags(write=False)
    return x, h, w


@lru_cache(maxsize=None)
def _meixner_sheffer_data(sigma):
    """Roots of G_{sigma+1}, table g[n, k] (n <= sigma) and Christoffel-Darboux weights."""
    x = meixner_sheffer_roots(sigma + 1)
    g, dg = meixner_sheffer_orthonormal(sigma + 1, x)
    e = meixner_sheffer_offdiag(sigma + 1)[sigma + 1]
    w = 1.0 / (e * dg[sigma + 1] * g[sigma])
    g = np.ascontiguousarray(g[: sigma + 1])
    for arr in (g, w):
        arr.setflags(write=False)
    return x, g, w


def _displacement_column(s, r, n_d):
    """<n| exp(r (a^dag - a)) |n_d> for real r via the Hermite spectral sum."""
    x, h, w = _hermite_data(s)
    n = np.arange(s + 1)
    spectral = h @ (np.exp(1j * r * x) * h[n_d] * w)
    return (-1j) ** n * 1j ** n_d * spectral


# ---------------------------------------------------------------- coherent

def generalized_cs(s, alpha):
    """exp(alpha a^dag - alpha^* a)|0> in closed form."""
    r, phi = _polar(alpha)
    n = np.arange(s + 1)
    amps = np.exp(1j * n * phi) * _displacement_column(s, r, 0)
    return FockVector(s, amps)


def _log_poisson_profile(n, r):
    """log(r^n / sqrt(n!)) with r = 0 handled."""
    n = np.asarray(n)
    if r == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    return n * log(r) - 0.5 * np.array([lgamma(k + 1) for k in n])


def _from_log_profile(s, logs, phases):
    logs = logs - np.max(logs)
    return _normalized(s, np.exp(logs) * phases)


def truncated_cs(s, alpha_bar):
    """Fock expansion of the coherent state cut at |s>, renormalized."""
    r, phi = _polar(alpha_bar)
    n = np.arange(s + 1)
    return _from_log_profile(s, _log_poisson_profile(n, r), np.exp(1j * n * phi))


def truncated_cs_normalization(s, alpha_bar):
    """N_s^{-2} = (-1)^s L_s^{-s-1}(|alpha_bar|^2)."""
    y = abs(alpha_bar) ** 2
    return (-1) ** s * laguerre_gen(s, -s - 1, y)


def conventional_dimension(r):
    """Truncation s' used to represent infinite-dimensional coherent states."""
    return int(ceil(r * r + 10.0 * r + 20.0))


def conventional_coherent(alpha, s_prime=None):
    r, phi = _polar(alpha)
    s_prime = conventional_dimension(r) if s_prime is None else int(s_prime)
    n = np.arange(s_prime + 1)
    logs = _log_poisson_profile(n, r) - 0.5 * r * r
    return FockVector(s_prime, np.exp(logs) * np.exp(1j * n * phi))


# ---------------------------------------------------------------- d-coefficients

@dataclass(frozen=True)
class DCoeffTable:
    """d_{nk} for 0 <= n <= n_max, 0 <= k <= s, stored as exact integers."""

    s: int
    n_max: int
    values: tuple

    def __getitem__(self, nk):
        n, k = nk
        if k > self.s:
            return 0
        return self.values[n][k]

    def as_array(self):
        return np.array(self.values, dtype=float)


def d_coeff_recurrence(s, n_max):
    """d_{nk} = [k<=s] d_{n-1,k-1} + (k+1)[k+1<=s] d_{n-1,k+1}, d_00 = 1."""
    rows = [[1] + [0] * s]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (s + 1)
        for k in range(s + 1):
            v = prev[k - 1] if k >= 1 else 0
            if k + 1 <= s:
                v += (k + 1) * prev[k + 1]
            row[k] = v
        rows.append(row)
    return DCoeffTable(s, n_max, tuple(tuple(r) for r in rows))


def d_coeff_closed(s, n, k):
    """Spectral closed form of d_{nk}: (1/sqrt(k!)) sum_l h_k(x_l) x_l^n w_l.

    The roots come in exact +/- pairs, so pairs are summed together and
    entries with odd n - k vanish identically, as do those with n < k.
    """
    if not 0 <= k <= s:
        raise ConfigError(f"k={k} outside 0..{s}")
    if (n - k) % 2 or n < k:
        return 0.0
    x, h, w = _hermite_data(s)
    pos = x > 0
    terms = h[k] * x ** n * w
    total = 2.0 * terms[pos].sum()
    if (s + 1) % 2:
        # zero root present (odd degree); contributes only when n = 0
        total += terms[~pos & (x == 0)].sum() if n == 0 else 0.0
    return float(total / sqrt(factorial(k)))


def generalized_cs_from_dcoeffs(s, alpha, n_max=None):
    """Power-series route: C_k = sum_n sqrt(k!)/n! d_{nk} (-|alpha|^2)^j alpha^k, j = (n-k)/2.

    Converges for any alpha but loses accuracy to cancellation when |alpha|
    is large; intended as an independent cross-check at moderate |alpha|.
    """
    r = abs(alpha)
    if n_max is None:
        n_max = int(40 + 6 * r * r + 20 * r)
    table = d_coeff_recurrence(s, n_max)
    amps = np.zeros(s + 1, dtype=np.complex128)
    for k in range(s + 1):
        acc = 0.0
        for n in range(k, n_max + 1, 2):
            d = table[n, k]
            if d:
                j = (n - k) // 2
                acc += d * (-r * r) ** j / factorial(n)
        amps[k] = sqrt(factorial(k)) * acc * complex(alpha) ** k
    return FockVector(s, amps)


# ---------------------------------------------------------------- phase coherent

def gamma_s(s):
    return sqrt(2.0 * np.pi / (s + 1))


def generalized_phase_cs_coeffs(s, beta, m0=0):
    """Coefficients on |theta_m> of exp(beta phi^dag - beta^* phi)|theta_0>, theta0 = 2 pi m0/(s+1).

    With angles reduced mod 2 pi the phase ladder operator is gamma_s times
    the number-ladder operator in the relabelled basis mu = (m + m0) mod (s+1),
    so the coefficients are those of a displaced number state |gamma_s beta, m0>.
    """
    if not 0 <= m0 <= s:
        raise ConfigError(f"m0={m0} outside 0..{s}")
    r, phi = _polar(beta)
    mu = (np.arange(s + 1) + m0) % (s + 1)
    col = _displacement_column(s, gamma_s(s) * r, m0)
    return np.exp(1j * (mu - m0) * phi) * col[mu]


def generalized_phase_cs(s, beta, m0=0):
    theta0 = 2.0 * np.pi * m0 / (s + 1)
    coeffs = generalized_phase_cs_coeffs(s, beta, m0)
    return FockVector(s, hilbert.phase_basis(s, theta0).states @ coeffs)


def truncated_phase_cs_coeffs(s, beta_bar):
    """Coefficients e^{i m phi} N (gamma_s |beta|)^m / sqrt(m!) on |theta_m>, theta0 = 0."""
    r, phi = _polar(beta_bar)
    m = np.arange(s + 1)
    logs = _log_poisson_profile(m, gamma_s(s) * r)
    c = np.exp(logs - logs.max()) * np.exp(1j * m * phi)
    return c / np.linalg.norm(c)


def truncated_phase_cs(s, beta_bar):
    coeffs = truncated_phase_cs_coeffs(s, beta_bar)
    return FockVector(s, hilbert.phase_basis(s, 0.0).states @ coeffs)


# ---------------------------------------------------------------- displaced number

def _check_index(name, v, s):
    if int(v) != v or not 0 <= v <= s:
        raise ConfigError(f"{name}={v} outside 0..{s}")
    return int(v)


def generalized_dns(s, alpha, n_d):
    """exp(alpha a^dag - alpha^* a)|n_d> in closed form."""
    n_d = _check_index("n_d", n_d, s)
    r, phi = _polar(alpha)
    n = np.arange(s + 1)
    return FockVector(s, np.exp(1j * (n - n_d) * phi) * _displacement_column(s, r, n_d))


def truncated_dns(s, alpha_bar, n_d):
    """Truncated displaced number state via associated Laguerre polynomials."""
    n_d = _check_index("n_d", n_d, s)
    r, phi = _polar(alpha_bar)
    y = r * r
    amps = np.zeros(s + 1, dtype=np.complex128)
    for n in range(s + 1):
        n1, n2 = min(n, n_d), max(n, n_d)
        mag = sqrt(factorial(n1) / factorial(n2)) * r ** (n2 - n1) * laguerre_gen(n1, n2 - n1, y)
        amps[n] = (-1) ** (n2 - n) * mag * np.exp(1j * (n - n_d) * phi)
    norm = np.linalg.norm(amps)
    if norm == 0.0 or not np.isfinite(norm):
        raise DegenerateStateError("truncated displaced number state has zero or infinite norm")
    return FockVector(s, amps / norm)


# ---------------------------------------------------------------- cats

def _parity_project(s, amps, delta, what):
    amps = np.array(amps, dtype=np.complex128)
    amps[(np.arange(s + 1) % 2) != delta] = 0.0
    norm = np.linalg.norm(amps)
    if norm < ODD_CAT_MIN_NORM:
        raise DegenerateStateError(f"{what} with delta={delta} is (numerically) the zero vector")
    return FockVector(s, amps / norm)


def generalized_cat(s, alpha, delta):
    """Normalized |alpha>_s + (-1)^delta |-alpha>_s from generalized coherent states."""
    if delta not in (0, 1):
        raise ConfigError(f"delta must be 0 or 1, got {delta}")
    # |-alpha> has amplitudes (-1)^n C_n(alpha): the sum is a parity projection
    return _parity_project(s, generalized_cs(s, alpha).amps, delta, "generalized cat")


def truncated_cat(s, alpha_bar, delta):
    """Coefficients alpha_bar^{2n+delta} / sqrt((2n+delta)!), renormalized."""
    if delta not in (0, 1):
        raise ConfigError(f"delta must be 0 or 1, got {delta}")
    r, phi = _polar(alpha_bar)
    n = np.arange(s + 1)
    if delta == 1 and (r == 0.0 or s == 0):
        raise DegenerateStateError("truncated odd cat is the zero vector")
    logs = np.where(n % 2 == delta, _log_poisson_profile(n, r), -np.inf)
    return _from_log_profile(s, logs, np.exp(1j * n * phi))


# ---------------------------------------------------------------- squeezed vacuum

def generalized_squeezed_vacuum(s, zeta):
    """exp((zeta a^dag^2 - zeta^* a^2)/2)|0> in closed form.

    On the even subspace |2n>, n = 0..sigma (sigma = s // 2), the generator is
    |zeta|/2 times the Meixner-Sheffer Jacobi matrix (up to phases), so the
    amplitudes are spectral sums over the roots of G_{sigma+1}.
    """
    r, phi = _polar(zeta)
    sigma = s // 2
    x, g, w = _meixner_sheffer_data(sigma)
    n = np.arange(sigma + 1)
    b = (-1j) ** n * (g @ (np.exp(0.5j * r * x) * w))
    amps = np.zeros(s + 1, dtype=np.complex128)
    amps[0::2] = np.exp(1j * n * phi) * b
    return FockVector(s, amps)


def _log_sv_profile(n, t):
    """log(sqrt((2n)!)/n! t^n)."""
    if t == 0.0:
        return np.where(n == 0, 0.0, -np.inf)
    return np.array([0.5 * lgamma(2 * k + 1) - lgamma(k + 1) + k * log(t) for k in n])


def truncated_squeezed_vacuum(s, zeta_bar):
    """b_{2n} proportional to sqrt((2n)!)/n! t^n e^{i n phi}, t = tanh|zeta_bar| / 2."""
    r, phi = _polar(zeta_bar)
    t = 0.5 * np.tanh(r)
    sigma = s // 2
    n = np.arange(sigma + 1)
    logs = np.full(s + 1, -np.inf)
    logs[0::2] = _log_sv_profile(n, t)
    phases = np.zeros(s + 1, dtype=np.complex128)
    phases[0::2] = np.exp(1j * n * phi)
    return _from_log_profile(s, logs, phases)


def truncated_sv_norm_direct(s, zeta_bar):
    """N_s^{-2} = sum_{n<=sigma} (2n)!/(n!)^2 t^{2n}."""
    t = 0.5 * np.tanh(abs(zeta_bar))
    n = np.arange(s // 2 + 1)
    return float(np.exp(2.0 * _log_sv_profile(n, t)).sum()) if t > 0 else 1.0


def truncated_sv_norm_hypergeometric(s, zeta_bar):
    """N_s^{-2} as cosh r minus the hypergeometric tail beyond n = sigma."""
    r = abs(zeta_bar)
    t = 0.5 * np.tanh(r)
    sigma = s // 2
    if t == 0.0:
        return 1.0
    lead = 2.0 * np.exp((2 * sigma + 2) * log(t) + lgamma(2 * sigma + 2)
                        - lgamma(sigma + 1) - lgamma(sigma + 2))
    return float(np.cosh(r) - lead * hyp2f1(1.0, sigma + 1.5, sigma + 2.0, 4.0 * t * t))


def conventional_sv_dimension(r):
    """Even truncation s' where the squeezed-vacuum tail is below double precision."""
    base = conventional_dimension(r)
    th = np.tanh(r)
    if th <= 0.0:
        return base
    # |b_{2n}|^2 ~ tanh(r)^{2n} / sqrt(pi n)
    need = int(ceil(2.0 * 40.0 * log(10.0) / (-2.0 * log(th)))) + 2
    return max(base, need + need % 2)


def conventional_squeezed_vacuum(zeta, s_prime=None):
    """sqrt(sech r) sum sqrt((2n)!)/(2^n n!) (e^{i phi} tanh r)^n |2n> in a large truncation."""
    r, phi = _polar(zeta)
    s_prime = conventional_sv_dimension(r) if s_prime is None else int(s_prime)
    t = 0.5 * np.tanh(r)
    n = np.arange(s_prime // 2 + 1)
    amps = np.zeros(s_prime + 1, dtype=np.complex128)
    amps[0::2] = np.exp(_log_sv_profile(n, t) - 0.5 * log(np.cosh(r))) * np.exp(1j * n * phi)
    return FockVector(s_prime, amps)


# ---------------------------------------------------------------- utilities

def overlap(a, b, embed=True):
    """<a|b>, zero-padding the smaller space when ``embed`` is set."""
    if a.s != b.s and not embed:
        raise ConfigError(f"dimension mismatch: s={a.s} vs s={b.s}")
    d = max(a.amps.size, b.amps.size)
    u = np.zeros(d, dtype=np.complex128)
    v = np.zeros(d, dtype=np.complex128)
    u[: a.amps.size] = a.amps
    v[: b.amps.size] = b.amps
    return complex(np.vdot(u, v))


def build_state(spec):
    """Construct the FockVector described by a StateSpec."""
    s, p, aux = spec.s, spec.param, spec.aux_value
    fam, var = spec.family, spec.variant
    # zero parameter: the seed exactly, without spectral-sum round-off
    if p == 0 and var is not Variant.CONVENTIONAL and fam is not Family.CAT:
        if fam is Family.PHASE_COHERENT and var is Variant.TRUNCATED and aux != 0:
            raise ConfigError("truncated phase coherent states use theta0 = 0 (aux must be 0)")
        return seed_state(spec)
    if fam is Family.COHERENT:
        return {
            Variant.GENERALIZED: lambda: generalized_cs(s, p),
            Variant.TRUNCATED: lambda: truncated_cs(s, p),
            Variant.CONVENTIONAL: lambda: conventional_coherent(p),
        }[var]()
    if fam is Family.PHASE_COHERENT:
        if var is Variant.GENERALIZED:
            return generalized_phase_cs(s, p, aux)
        if aux != 0:
            raise ConfigError("truncated phase coherent states use theta0 = 0 (aux must be 0)")
        return truncated_phase_cs(s, p)
    if fam is Family.DISPLACED_NUMBER:
        if var is Variant.GENERALIZED:
            return generalized_dns(s, p, aux)
        return truncated_dns(s, p, aux)
    if fam is Family.CAT:
        if var is Variant.GENERALIZED:
            return generalized_cat(s, p, aux)
        return truncated_cat(s, p, aux)
    return {
        Variant.GENERALIZED: lambda: generalized_squeezed_vacuum(s, p),
        Variant.TRUNCATED: lambda: truncated_squeezed_vacuum(s, p),
        Variant.CONVENTIONAL: lambda: conventional_squeezed_vacuum(p),
    }[var]()


def seed_state(spec):
    """The state the family reduces to at zero parameter."""
    s = spec.s
    if spec.family is Family.PHASE_COHERENT:
        return hilbert.phase_state(s, spec.theta0, 0)
    idx = spec.aux_value if spec.family in (Family.DISPLACED_NUMBER, Family.CAT) else 0
    amps = np.zeros(s + 1, dtype=np.complex128)
    amps[idx] = 1.0
    return FockVector(s, amps)


def oracle_state(spec, max_norm=hilbert.DEFAULT_MAX_NORM):
    """Generalized state rebuilt from a dense matrix exponential."""
    if spec.variant is not Variant.GENERALIZED:
        raise ConfigError("oracle applies to generalized variants")
    s, p, aux = spec.s, spec.param, spec.aux_value
    if spec.family is Family.SQUEEZED_VACUUM:
        return FockVector(s, hilbert.squeeze_op(s, p, max_norm)[:, 0])
    if spec.family is Family.PHASE_COHERENT:
        U = hilbert.phase_displacement_op(s, p, spec.theta0, wrap_angles=True, max_norm=max_norm)
        return FockVector(s, U @ seed_state(spec).amps)
    if spec.family is Family.DISPLACED_NUMBER:
        return FockVector(s, hilbert.displacement_op(s, p, max_norm)[:, aux])
    if spec.family is Family.CAT:
        plus = hilbert.displacement_op(s, p, max_norm)[:, 0]
        minus = hilbert.displacement_op(s, -p, max_norm)[:, 0]
        v = plus + (-1) ** aux * minus
        norm = np.linalg.norm(v)
        if norm < ODD_CAT_MIN_NORM:
            raise DegenerateStateError("cat superposition is the zero vector")
        return FockVector(s, v / norm)
    return FockVector(s, hilbert.displacement_op(s, p, max_norm)[:, 0])
