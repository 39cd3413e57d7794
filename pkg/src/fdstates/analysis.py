"""
Derived quantities: quasiperiods, overlap series, two-level (s = 1) Stokes
description and parameter sweeps.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, sqrt

import numpy as np

from . import hilbert
from .errors import ConfigError, ConsistencyError, DegenerateStateError, NoReturnError, RegimeError
from .states import Family, StateSpec, Variant, build_state, gamma_s, overlap, seed_state

STAT_TOL = 1e-12

OBSERVABLES = ("seed-return-prob", "seed-return-amplitude", "coefficient-prob", "coefficient-real")


# ---------------------------------------------------------------- quasiperiods

def quasiperiod_formula(s):
    """sqrt(4s+6) for even s, twice that for odd s."""
    if s < 1:
        raise ConfigError("quasiperiod formula needs s >= 1")
    T = sqrt(4 * s + 6)
    return T if s % 2 == 0 else 2.0 * T


def natural_period(spec):
    """Quasiperiod in units of the family's parameter modulus.

    Phase coherent states evolve like coherent states with parameter
    gamma_s * |beta|, so their period in |beta| is T_s / gamma_s.
    """
    T = quasiperiod_formula(spec.s)
    if spec.family is Family.PHASE_COHERENT:
        return T / gamma_s(spec.s)
    return T


@dataclass(frozen=True)
class SweepResult:
    param_values: np.ndarray
    observable: np.ndarray
    spec: StateSpec
    observable_name: str
    index: int = 0

    def __post_init__(self):
        if self.param_values.shape != self.observable.shape:
            raise ConfigError("sweep arrays differ in length")
        if np.any(np.diff(self.param_values) <= 0):
            raise ConfigError("sweep parameter values must increase strictly")


def sweep_grid(start, stop, step):
    """start, start+step, ... up to stop (inclusive within round-off)."""
    if not step > 0:
        raise ConfigError(f"step must be positive, got {step}")
    if not start < stop:
        raise ConfigError(f"range needs start < stop, got ({start}, {stop})")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(count)


def _observable(spec, state, name, index, seed):
    if name == "seed-return-prob":
        return abs(overlap(seed, state)) ** 2
    if name == "seed-return-amplitude":
        return overlap(seed, state).real
    if not 0 <= index <= spec.s:
        raise ConfigError(f"coefficient index {index} outside 0..{spec.s}")
    if name == "coefficient-prob":
        return abs(state.amps[index]) ** 2
    if name == "coefficient-real":
        return state.amps[index].real
    raise ConfigError(f"unknown observable {name!r}; choose from {OBSERVABLES}")


def sweep(spec, start, stop, step, observable="seed-return-prob", index=0):
    """Evaluate an observable along |param| in [start, stop], keeping the phase of spec.param."""
    r = sweep_grid(start, stop, step)
    phase = np.exp(1j * np.angle(spec.param)) if spec.param != 0 else 1.0
    seed = seed_state(spec)
    vals = np.array([
        _observable(spec, build_state(spec.with_param(x * phase)), observable, index, seed)
        for x in r
    ])
    return SweepResult(r, vals, spec, observable, index)


def vacuum_probability_sweep(spec, start, stop, step, index=0):
    """|b_index|^2 over the parameter modulus (index 0 is the vacuum)."""
    return sweep(spec, start, stop, step, "coefficient-prob", index)


def first_local_maximum(x, v, min_height=0.5):
    """(location, value) of the first interior local maximum with value >= min_height.

    The location is refined by a parabola through the three nearest samples.
    Returns None when there is no such maximum.
    """
    for i in range(1, len(v) - 1):
        if v[i] > v[i - 1] and v[i] >= v[i + 1] and v[i] >= min_height:
            denom = v[i - 1] - 2.0 * v[i] + v[i + 1]
            h = x[i + 1] - x[i]
            shift = 0.5 * h * (v[i - 1] - v[i + 1]) / denom if denom != 0 else 0.0
            return x[i] + shift, v[i]
    return None


def quasiperiod_estimate(spec, observable="seed-return-prob", start=None, stop=None,
                         step=0.01, min_height=0.5):
    """First local maximum of a seed-return observable beyond ``start``.

    Defaults scan (T/2, 3T) with T the family's nominal period. Maxima lower
    than ``min_height`` are ripples and are skipped. Raises NoReturnError when
    nothing qualifies, the expected outcome for truncated states.
    """
    if observable not in ("seed-return-prob", "seed-return-amplitude"):
        raise ConfigError("quasiperiod needs a seed-return observable")
    T = natural_period(spec)
    start = 0.5 * T if start is None else start
    stop = 3.0 * T if stop is None else stop
    return quasiperiod_from_sweep(sweep(spec, start, stop, step, observable), start, min_height)


def quasiperiod_from_sweep(result, start=None, min_height=0.5):
    """First qualifying local maximum of a sweep at parameter values >= start."""
    x, v = result.param_values, result.observable
    if start is not None:
        keep = x >= start
        x, v = x[keep], v[keep]
    found = first_local_maximum(x, v, min_height)
    if found is None:
        lo = x[0] if x.size else float("nan")
        hi = x[-1] if x.size else float("nan")
        raise NoReturnError(
            f"no seed return >= {min_height} in ({lo:.4g}, {hi:.4g}) for "
            f"{result.spec.variant.value} {result.spec.family.value}"
        )
    return float(found[0])


# ---------------------------------------------------------------- overlap series

# pair -> (exponent(s), coefficient(s)); pairs are stored with variants sorted
def _cs_conv(s):
    return 2 * (s + 1), Fraction(1, 2 * factorial(s + 1))


def _cs_gen_trunc(s):
    return 2 * (s + 2), Fraction(1, 2 * factorial(s) * (s + 2) ** 2)


def _pcs_gen_trunc(s):
    # the generalized and truncated phase states are coherent states in
    # gamma_s |beta|, so the coherent-state coefficient picks up gamma_s^(2(s+2))
    p, c = _cs_gen_trunc(s)
    return p, float(c) * gamma_s(s) ** p


def _sv_conv(s):
    sigma = s // 2
    return 2 * sigma + 2, Fraction(comb(2 * sigma + 1, sigma + 1), 2 ** (2 * sigma + 2))


_SV_GEN_TRUNC = {1: Fraction(1, 16), 2: Fraction(75, 1024), 3: Fraction(49, 640)}


def _sv_gen_trunc(s):
    sigma = s // 2
    if sigma not in _SV_GEN_TRUNC:
        raise ConfigError("generalized/truncated squeezed-vacuum coefficient known for s = 2..7 only")
    return 2 * sigma + 4, _SV_GEN_TRUNC[sigma]


_G, _T, _C = Variant.GENERALIZED, Variant.TRUNCATED, Variant.CONVENTIONAL

KNOWN_SERIES = {
    (Family.COHERENT, _C, _G): _cs_conv,
    (Family.COHERENT, _C, _T): _cs_conv,
    (Family.COHERENT, _G, _T): _cs_gen_trunc,
    (Family.PHASE_COHERENT, _G, _T): _pcs_gen_trunc,
    (Family.SQUEEZED_VACUUM, _C, _G): _sv_conv,
    (Family.SQUEEZED_VACUUM, _C, _T): _sv_conv,
    (Family.SQUEEZED_VACUUM, _G, _T): _sv_gen_trunc,
}

_ORDER = {_C: 0, _G: 1, _T: 2}


def _pair_key(family, va, vb):
    va, vb = sorted((Variant(va), Variant(vb)), key=_ORDER.get)
    return Family(family), va, vb


def leading_term(family, variant_a, variant_b, s):
    """(exponent p, coefficient c) with 1 - <a|b> = c |param|^p + higher orders."""
    key = _pair_key(family, variant_a, variant_b)
    if key not in KNOWN_SERIES:
        raise ConfigError(f"no known series for {key[0].value} {key[1].value}/{key[2].value}")
    return KNOWN_SERIES[key](s)


def overlap_curve(family, variant_a, variant_b, s, r_values, aux=None):
    """Re <a(r)|b(r)> for real positive r (equal phases)."""
    a = StateSpec(family, variant_a, s, 0.0, aux)
    b = StateSpec(family, variant_b, s, 0.0, aux)
    return np.array([
        overlap(build_state(a.with_param(r)), build_state(b.with_param(r))).real
        for r in r_values
    ])


def default_sample_points(exponent, coeff, count=24, lo_deficit=1e-9, hi_deficit=1e-5):
    """Geometric |param| grid where the leading deficit spans [lo_deficit, hi_deficit]."""
    c = float(coeff)
    r_lo = (lo_deficit / c) ** (1.0 / exponent)
    r_hi = (hi_deficit / c) ** (1.0 / exponent)
    return np.geomspace(r_lo, r_hi, count)


@dataclass(frozen=True)
class OverlapFit:
    exponent: int
    coefficient: float
    expected: float
    rel_error: float
    slope: float
    max_residual: float
    sample_points: np.ndarray = field(repr=False)
    deficits: np.ndarray = field(repr=False)


def overlap_series_fit(family, variant_a, variant_b, s, exponent=None, coeff_expected=None,
                       sample_points=None, aux=None, nuisance=2):
    """Fit the leading coefficient of 1 - Re<a|b> in powers of |param|.

    First the log-log slope over the smallest third of the samples must
    match ``exponent`` within 0.5. Then y / r^p is fitted by least squares
    as c0 + c1 r^2 + ... with ``nuisance`` higher-order terms, and c0 is
    reported. Raises RegimeError if the slope is off or the fit residual
    exceeds 10% of the leading term.
    """
    if exponent is None or coeff_expected is None:
        p_known, c_known = leading_term(family, variant_a, variant_b, s)
        exponent = p_known if exponent is None else exponent
        coeff_expected = c_known if coeff_expected is None else coeff_expected
    if sample_points is None:
        sample_points = default_sample_points(exponent, coeff_expected)
    r = np.asarray(sample_points, dtype=float)
    y = 1.0 - overlap_curve(family, variant_a, variant_b, s, r, aux)
    if np.any(y <= 0):
        raise RegimeError("overlap deficit is not positive at every sample point")
    low = max(3, len(r) // 3)
    slope = float(np.polyfit(np.log(r[:low]), np.log(y[:low]), 1)[0])
    if abs(slope - exponent) > 0.5:
        raise RegimeError(f"log-log slope {slope:.3f} does not match exponent {exponent}")
    X = np.vstack([r ** (2 * j) for j in range(nuisance + 1)]).T
    coef, *_ = np.linalg.lstsq(X, y / r**exponent, rcond=None)
    lead = coef[0] * r**exponent
    resid = float(np.max(np.abs(X @ coef * r**exponent - y) / np.abs(lead)))
    if resid > 0.1:
        raise RegimeError(f"fit residual {resid:.3g} exceeds 10% of the leading term")
    expected = float(coeff_expected)
    return OverlapFit(exponent, float(coef[0]), expected, abs(coef[0] / expected - 1.0),
                      slope, resid, r, y)


# ---------------------------------------------------------------- s = 1

@dataclass(frozen=True)
class StokesVector:
    sx: float
    sy: float
    sz: float

    def norm2(self):
        return self.sx**2 + self.sy**2 + self.sz**2

    def as_array(self):
        return np.array([self.sx, self.sy, self.sz])


def _require_qubit(state):
    if state.s != 1:
        raise ConfigError(f"two-level analysis needs s = 1, got s = {state.s}")


def stokes_from_state(state):
    """Sz = rho00 - rho11, Sx + i Sy = 2 rho01 with rho01 = C0 C1^*."""
    _require_qubit(state)
    c0, c1 = state.amps
    rho01 = c0 * np.conj(c1)
    return StokesVector(2.0 * rho01.real, 2.0 * rho01.imag, abs(c0) ** 2 - abs(c1) ** 2)


def poincare_from_alpha_bar(alpha_bar):
    """Project (Re a, -Im a, 0) onto the unit sphere along the line from the lower pole."""
    u, v = complex(alpha_bar).real, -complex(alpha_bar).imag
    rho2 = u * u + v * v
    t = 2.0 / (1.0 + rho2)
    return StokesVector(t * u, t * v, t - 1.0)


@dataclass(frozen=True)
class NumberPhaseStats:
    mean_n: float
    var_n: float
    mean_phi: float
    var_phi: float
    commutator_mean: complex


def statistics_from_stokes(st):
    """Number/phase moments at theta0 = 0 from the Stokes parameters.

    The commutator mean is -i pi Sy / 2 with rho01 = (Sx + i Sy) / 2.
    """
    return NumberPhaseStats(
        (1.0 - st.sz) / 2.0,
        (st.sx**2 + st.sy**2) / 4.0,
        (1.0 - st.sx) * np.pi / 2.0,
        (st.sy**2 + st.sz**2) * np.pi**2 / 4.0,
        -0.5j * np.pi * st.sy,
    )


def number_phase_statistics(state, theta0=0.0):
    """Direct operator averages of N, Phi and [N, Phi] for s = 1.

    At theta0 = 0 the Stokes-parameter expressions are evaluated as well and
    must agree to 1e-12 (ConsistencyError otherwise).
    """
    _require_qubit(state)
    psi = state.amps
    N = hilbert.number_op(1)
    Phi = hilbert.phase_operator(1, theta0)

    def mean(op):
        return complex(np.vdot(psi, op @ psi))

    mn, mp = mean(N).real, mean(Phi).real
    stats = NumberPhaseStats(
        mn, mean(N @ N).real - mn**2, mp, mean(Phi @ Phi).real - mp**2,
        mean(hilbert.commutator(N, Phi)),
    )
    if theta0 == 0.0:
        ref = statistics_from_stokes(stokes_from_state(state))
        diffs = [abs(getattr(stats, f) - getattr(ref, f)) for f in
                 ("mean_n", "var_n", "mean_phi", "var_phi", "commutator_mean")]
        if max(diffs) > STAT_TOL:
            raise ConsistencyError(f"Stokes moments disagree with operator averages by {max(diffs):.3g}")
    return stats


def squeezing_from_stokes(st):
    if st.sy == 0.0:
        raise DegenerateStateError("squeezing degrees undefined for Sy = 0")
    ay = abs(st.sy)
    return (st.sx**2 + st.sy**2) / (np.pi * ay) - 1.0, np.pi * (st.sy**2 + st.sz**2) / ay - 1.0


def squeezing_degrees(state):
    """(S_N, S_Phi) = 2 var / |<[N, Phi]>| - 1, cross-checked against the Stokes form."""
    stats = number_phase_statistics(state)
    c = abs(stats.commutator_mean)
    if c <= STAT_TOL:
        raise DegenerateStateError("squeezing degrees undefined: <[N, Phi]> vanishes (Sy = 0)")
    direct = (2.0 * stats.var_n / c - 1.0, 2.0 * stats.var_phi / c - 1.0)
    ref = squeezing_from_stokes(stokes_from_state(state))
    if squeezing_discrepancy(direct, ref, c) > STAT_TOL:
        raise ConsistencyError("squeezing degrees disagree between operator and Stokes forms")
    return direct


def squeezing_discrepancy(a, b, commutator_abs):
    """Relative difference of two (S_N, S_Phi) pairs, divided by the condition number.

    S ~ 1/|<[N, Phi]>|, so an O(eps) error in the amplitudes moves S by
    O(eps |S| / |<[N, Phi]>|); the returned value is comparable to eps
    whatever |Sy| is.
    """
    cond = max(1.0, (np.pi / 2) / commutator_abs)
    return max(abs(x - y) / (max(1.0, abs(y)) * cond) for x, y in zip(a, b))
