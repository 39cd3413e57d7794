"""Acceptance criteria 1-10, one test (and one PASS/FAIL line) each."""
import subprocess
import sys
import time
from fractions import Fraction
from math import factorial, pi, sqrt
from pathlib import Path

import numpy as np

from fdstates.analysis import (
    leading_term,
    number_phase_statistics,
    overlap_series_fit,
    poincare_from_alpha_bar,
    quasiperiod_estimate,
    squeezing_degrees,
    squeezing_discrepancy,
    squeezing_from_stokes,
    statistics_from_stokes,
    stokes_from_state,
    sweep,
)
from fdstates.errors import NoReturnError
from fdstates.hilbert import (
    annihilation_op,
    commutator,
    number_phase_commutator_check,
    phase_ladder_ops,
    phase_operator,
    phase_state,
)
from fdstates.poly import hermite_he_roots, laguerre_gen, meixner_sheffer, meixner_sheffer_roots
from fdstates.states import (
    Family,
    StateSpec,
    Variant,
    build_state,
    d_coeff_closed,
    d_coeff_recurrence,
    gamma_s,
    generalized_cs,
    generalized_squeezed_vacuum,
    oracle_state,
    truncated_cs,
    truncated_squeezed_vacuum,
)
from fdstates.wigner import (
    line_sums_all,
    number_marginal,
    phase_amplitudes,
    phase_marginal,
    wigner_from_state,
    wigner_generalized_cs,
    wigner_pure_coeffs,
    wigner_truncated_cs_factored,
)

from conftest import ACCEPTANCE, random_complex, random_state

ROOT = Path(__file__).resolve().parent.parent


def record(num, ok, detail):
    line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[num] = line
    print(line)
    assert ok, line


# ---------------------------------------------------------------- 1

def cs_closed(s, r, phi):
    e = np.exp(1j * phi)
    if s == 1:
        return np.array([np.cos(r), e * np.sin(r)])
    if s == 2:
        c, sn = np.cos(sqrt(3) * r), np.sin(sqrt(3) * r)
        return np.array([(c + 2) / 3, e * sn / sqrt(3), e**2 * sqrt(2) * (1 - c) / 3])
    x1, x2 = sqrt(3 + sqrt(6)), sqrt(3 - sqrt(6))
    c1, c2, s1, s2 = np.cos(x1 * r), np.cos(x2 * r), np.sin(x1 * r), np.sin(x2 * r)
    return np.array([
        (x2**2 * c1 + x1**2 * c2) / (2 * x1**2 * x2**2),
        e * (x2 * s1 + x1 * s2) / (2 * x1 * x2),
        -e**2 * (c1 - c2) / (2 * sqrt(3)),
        -e**3 * (x2 * s1 - x1 * s2) / (2 * x1 * x2),
    ])


def sv_closed(s, r, phi):
    out = np.zeros(s + 1, dtype=complex)
    e = np.exp(1j * phi)
    if s in (2, 3):
        b = r / sqrt(2)
        out[0], out[2] = np.cos(b), e * np.sin(b)
    else:
        b = sqrt(3.5) * r
        out[0], out[2] = (6 + np.cos(b)) / 7, e * np.sin(b) / sqrt(7)
        out[4] = e**2 * 2 * sqrt(6) / 7 * np.sin(b / 2) ** 2
    return out


def tsv_closed(s, r, phi):
    t = 0.5 * np.tanh(r)
    out = np.zeros(s + 1, dtype=complex)
    out[0], out[2] = 1.0, np.exp(1j * phi) * sqrt(2) * t
    return out / sqrt(1 + 2 * t * t)


def test_criterion_01_closed_forms():
    moduli = np.linspace(0, 10, 201)
    phis = (0.0, pi / 4, pi)
    dev = {"cs": 0.0, "sv": 0.0, "tsv": 0.0}
    for r in moduli:
        for phi in phis:
            z = r * np.exp(1j * phi)
            for s in (1, 2, 3):
                dev["cs"] = max(dev["cs"], np.abs(generalized_cs(s, z).amps - cs_closed(s, r, phi)).max())
            for s in (2, 3, 4, 5):
                dev["sv"] = max(dev["sv"], np.abs(generalized_squeezed_vacuum(s, z).amps
                                                  - sv_closed(s, r, phi)).max())
            for s in (2, 3):
                dev["tsv"] = max(dev["tsv"], np.abs(truncated_squeezed_vacuum(s, z).amps
                                                    - tsv_closed(s, r, phi)).max())
    worst = max(dev.values())
    record(1, worst <= 1e-12, "closed forms max dev " + ", ".join(f"{k} {v:.1e}" for k, v in dev.items()))


# ---------------------------------------------------------------- 2

def test_criterion_02_oracle_equivalence(rng):
    worst = {}
    for s in (4, 7, 18, 19):
        for fam in Family:
            for _ in range(20):
                p = random_complex(rng, 5.0)
                if fam is Family.PHASE_COHERENT:
                    aux = int(rng.integers(0, s + 1))
                elif fam is Family.DISPLACED_NUMBER:
                    aux = int(rng.integers(0, s + 1))
                elif fam is Family.CAT:
                    aux = int(rng.integers(0, 2))
                else:
                    aux = None
                spec = StateSpec(fam, Variant.GENERALIZED, s, p, aux)
                d = np.abs(build_state(spec).amps - oracle_state(spec).amps).max()
                worst[fam.value] = max(worst.get(fam.value, 0.0), d)
    m = max(worst.values())
    record(2, m <= 1e-9, "oracle max dev " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items()))


# ---------------------------------------------------------------- 3

def test_criterion_03_dcoefficients():
    worst = 0.0
    zeros_ok = True
    for s in range(1, 11):
        tab = d_coeff_recurrence(s, 25)
        for n in range(26):
            for k in range(s + 1):
                exact, closed = tab[n, k], d_coeff_closed(s, n, k)
                if exact == 0:
                    zeros_ok &= closed == 0
                else:
                    worst = max(worst, abs(closed / exact - 1))
    tab1 = d_coeff_recurrence(1, 25)
    ones = {tab1[n, k] for n in range(26) for k in range(2) if tab1[n, k] != 0}
    ok = worst <= 1e-9 and zeros_ok and ones == {1}
    record(3, ok, f"closed vs recurrence rel dev {worst:.1e}; s=1 nonzero values {sorted(ones)}")


# ---------------------------------------------------------------- 4

def test_criterion_04_quasiperiods():
    cs18 = quasiperiod_estimate(StateSpec("coherent", "generalized", 18, 1.0))
    cs17 = quasiperiod_estimate(StateSpec("coherent", "generalized", 17, 1.0), "seed-return-amplitude",
                                start=0.75 * sqrt(74))
    sv18 = quasiperiod_estimate(StateSpec("squeezed-vacuum", "generalized", 18, 1.0), "seed-return-amplitude")
    T = sqrt(78)
    trunc_max = 0.0
    no_return = True
    for fam in ("coherent", "squeezed-vacuum"):
        spec = StateSpec(fam, "truncated", 18, 1.0)
        res = sweep(spec, T / 2, 3 * T, 0.01)
        inside = res.observable[(res.param_values > T / 2) & (res.param_values < 3 * T)]
        trunc_max = max(trunc_max, inside.max())
        try:
            quasiperiod_estimate(spec)
            no_return = False
        except NoReturnError:
            pass
    checks = [
        abs(cs18 / 8.83 - 1) <= 0.05,
        abs(cs17 / (2 * sqrt(74)) - 1) <= 0.10,
        abs(sv18 / 12.8 - 1) <= 0.10,
        trunc_max < 0.5 and no_return,
    ]
    record(4, all(checks), f"CS s=18 {cs18:.3f} (8.83), CS s=17 {cs17:.2f} ({2 * sqrt(74):.2f}), "
                           f"SV s=18 {sv18:.2f} (12.8), truncated max return {trunc_max:.3f}")


# ---------------------------------------------------------------- 5

def test_criterion_05_overlap_series():
    cases = [
        ("coherent", "conventional", "generalized", s, c) for s, c in ((1, "1/4"), (2, "1/12"), (3, "1/48"))
    ] + [
        ("coherent", "conventional", "truncated", s, c) for s, c in ((1, "1/4"), (2, "1/12"), (3, "1/48"))
    ] + [
        ("coherent", "generalized", "truncated", s, c) for s, c in ((1, "1/18"), (2, "1/64"), (3, "1/300"))
    ] + [
        ("squeezed-vacuum", "conventional", "generalized", s, c)
        for s, c in ((2, "3/16"), (4, "5/32"), (6, "35/256"))
    ] + [
        ("squeezed-vacuum", "generalized", "truncated", s, c)
        for s, c in ((2, "1/16"), (4, "75/1024"), (6, "49/640"))
    ]
    worst, failures = 0.0, []
    for fam, va, vb, s, c in cases:
        p, _ = leading_term(fam, va, vb, s)
        fit = overlap_series_fit(fam, va, vb, s, p, Fraction(c))
        worst = max(worst, fit.rel_error)
        if fit.rel_error > 0.02:
            failures.append((fam, va, vb, s, fit.coefficient, c))
    # general forms at one more s each; the phase CS form is checked in its
    # printed version at s = 1, where it coincides with the gamma_s version
    general = [
        ("coherent", "conventional", "generalized", 5, None),
        ("coherent", "conventional", "truncated", 5, None),
        ("coherent", "generalized", "truncated", 5, None),
        ("phase-coherent", "generalized", "truncated", 2, None),
        ("phase-coherent", "generalized", "truncated", 1, pi**3 / 18),
        ("squeezed-vacuum", "conventional", "generalized", 8, None),
    ]
    for fam, va, vb, s, c in general:
        aux = 0 if fam == "phase-coherent" else None
        p, c_known = leading_term(fam, va, vb, s)
        fit = overlap_series_fit(fam, va, vb, s, p, c_known if c is None else c, aux=aux)
        worst = max(worst, fit.rel_error)
        if fit.rel_error > 0.02:
            failures.append((fam, va, vb, s, fit.coefficient, c))
    record(5, not failures, f"{len(cases) + len(general)} fits, worst rel err {worst:.2e}"
                            + (f"; failing {failures}" if failures else ""))


# ---------------------------------------------------------------- 6

def qubit_closed(r, phi):
    n = np.arange(2)[:, None]
    m = np.arange(2)[None, :]
    return 0.25 * (1 + (-1.0) ** n * np.cos(2 * r)
                   + (-1.0) ** m * sqrt(2) * np.sin(2 * r) * np.cos(phi - (-1.0) ** n * pi / 4))


def test_criterion_06_wigner(rng):
    dual = 0.0
    for s in (4, 7, 18):
        for _ in range(50):
            psi = random_state(rng, s)
            theta0 = rng.uniform(0, 2 * pi)
            dual = max(dual, np.abs(wigner_from_state(psi, theta0).values
                                    - wigner_pure_coeffs(psi, theta0).values).max())
    special = 0.0
    for s in (2, 4, 10, 18):
        for _ in range(5):
            a = random_complex(rng, 5.0)
            theta0 = rng.uniform(0, 2 * pi)
            ref = wigner_pure_coeffs(generalized_cs(s, a), theta0).values
            for form in ("complex", "real"):
                special = max(special, np.abs(wigner_generalized_cs(s, a, form, theta0).values - ref).max())
    for s in (2, 5, 7, 18):
        for _ in range(5):
            a = random_complex(rng, 5.0)
            ref = wigner_pure_coeffs(truncated_cs(s, a)).values
            special = max(special, np.abs(wigner_truncated_cs_factored(s, a).values - ref).max())
    # marginals: even s and s = 1 (odd s > 1 doubles the torus, see ledger)
    marg = 0.0
    for s in (1, 4, 18):
        for _ in range(20):
            psi = random_state(rng, s)
            theta0 = rng.uniform(0, 2 * pi)
            W = wigner_pure_coeffs(psi, theta0)
            marg = max(marg, np.abs(number_marginal(W) - psi.probabilities()).max(),
                       np.abs(phase_marginal(W) - np.abs(phase_amplitudes(psi, theta0)) ** 2).max())
    periodic = True
    for s in (4, 7):
        W = wigner_pure_coeffs(random_state(rng, s))
        N = s + 1
        for n in range(-N, 2 * N):
            for m in range(-N, 2 * N):
                periodic &= W(n, m) == W(n + N, m) == W(n, m + N) == W(n - 3 * N, m + 2 * N)
    qubit = 0.0
    for _ in range(20):
        r, phi = rng.uniform(0, 10), rng.uniform(-pi, pi)
        psi = generalized_cs(1, r * np.exp(1j * phi))
        for f in (wigner_from_state, wigner_pure_coeffs):
            qubit = max(qubit, np.abs(f(psi).values - qubit_closed(r, phi)).max())
    line_min = np.inf
    for s in (4, 6, 18):
        for _ in range(20):
            S = line_sums_all(wigner_pure_coeffs(random_state(rng, s)))
            line_min = min(line_min, S[1:].min(), S[0, 1:].min())
    ok = dual <= 1e-10 and special <= 1e-8 and marg <= 1e-10 and periodic and qubit <= 1e-12 and line_min >= -1e-10
    record(6, ok, f"dual {dual:.1e}, specialized {special:.1e}, marginals {marg:.1e}, "
                  f"periodic {periodic}, s=1 {qubit:.1e}, min line sum {line_min:.3e}")


# ---------------------------------------------------------------- 7

def test_criterion_07_operator_algebra():
    comm_a = comm_phi = phase_op = 0.0
    annihilates = True
    for s in range(1, 41):
        ref = np.eye(s + 1)
        ref[s, s] -= s + 1
        comm_a = max(comm_a, np.abs(number_phase_commutator_check(s) - ref).max())
        for theta0 in (0.0, 0.7):
            phi, phid = phase_ladder_ops(s, theta0)
            last = phase_state(s, theta0, s).amps
            ref = 2 * pi / (s + 1) * np.eye(s + 1) - 2 * pi * np.outer(last, last.conj())
            comm_phi = max(comm_phi, np.abs(commutator(phi, phid) - ref).max())
            phase_op = max(phase_op, np.abs(phid @ phi - phase_operator(s, theta0)).max())
        ad = annihilation_op(s).conj().T
        P = np.eye(s + 1, dtype=complex)
        for k in range(1, s + 2):
            P = ad @ P
            annihilates &= bool(np.all(P[:, s - k + 1:] == 0))
    ok = comm_a <= 1e-12 and comm_phi <= 1e-12 and phase_op <= 1e-12 and annihilates
    record(7, ok, f"[a,a+] {comm_a:.1e}, [phi,phi+] {comm_phi:.1e}, Phi=phi+phi {phase_op:.1e}, "
                  f"(a+)^k|n>=0 exact {annihilates}")


# ---------------------------------------------------------------- 8

def test_criterion_08_two_level(rng):
    stokes = stats = squeeze = squeeze_abs = poinc = 0.0
    sphere = 0.0
    for _ in range(100):
        r, phi = rng.uniform(0, 2 * pi), rng.uniform(-pi, pi)
        ab = rng.uniform(0, 5)
        for psi, ref in (
            (generalized_cs(1, r * np.exp(1j * phi)),
             [np.sin(2 * r) * np.cos(phi), -np.sin(2 * r) * np.sin(phi), np.cos(2 * r)]),
            (truncated_cs(1, ab * np.exp(1j * phi)),
             np.array([2 * ab * np.cos(phi), -2 * ab * np.sin(phi), 1 - ab * ab]) / (1 + ab * ab)),
        ):
            rho = np.outer(psi.amps, psi.amps.conj())
            extracted = [2 * rho[0, 1].real, 2 * rho[0, 1].imag, (rho[0, 0] - rho[1, 1]).real]
            st = stokes_from_state(psi)
            stokes = max(stokes, np.abs(np.array(extracted) - ref).max(), np.abs(st.as_array() - ref).max())
            sphere = max(sphere, abs(st.norm2() - 1))
            direct = number_phase_statistics(psi)
            formula = statistics_from_stokes(st)
            for f in ("mean_n", "var_n", "mean_phi", "var_phi", "commutator_mean"):
                stats = max(stats, abs(getattr(direct, f) - getattr(formula, f)))
            if st.sy != 0.0:
                direct_sq = squeezing_degrees(psi)
                formula_sq = squeezing_from_stokes(st)
                squeeze = max(squeeze, squeezing_discrepancy(direct_sq, formula_sq,
                                                             abs(direct.commutator_mean)))
                squeeze_abs = max(squeeze_abs, *(abs(x - y) for x, y in zip(direct_sq, formula_sq)))
        ref = np.array([2 * ab * np.cos(phi), -2 * ab * np.sin(phi), 1 - ab * ab]) / (1 + ab * ab)
        poinc = max(poinc, np.abs(poincare_from_alpha_bar(ab * np.exp(1j * phi)).as_array() - ref).max())
    ok = max(stokes, stats, squeeze, poinc, sphere) <= 1e-12
    record(8, ok, f"Stokes {stokes:.1e}, statistics {stats:.1e}, "
                  f"squeezing {squeeze:.1e} (condition-scaled; absolute {squeeze_abs:.1e}), "
                  f"Poincare {poinc:.1e}, |S|^2-1 {sphere:.1e}")


# ---------------------------------------------------------------- 9

def test_criterion_09_polynomials():
    a, b = sqrt(3 + sqrt(6)), sqrt(3 - sqrt(6))
    he4 = np.abs(hermite_he_roots(4) - np.array([-a, -b, b, a])).max()
    approx = 0.0
    for s in range(10, 41, 2):
        r = hermite_he_roots(s + 1)
        approx = max(approx, abs(r[r > 0].min() / (2 * pi / sqrt(4 * s + 6)) - 1))
    lag = 0.0
    for s in range(31):
        for y in np.linspace(0, 25, 101):
            direct = sum(y**n / factorial(n) for n in range(s + 1))
            lag = max(lag, abs((-1) ** s * laguerre_gen(s, -s - 1, y) - direct) / direct)
    g2, g3 = meixner_sheffer_roots(2), meixner_sheffer_roots(3)
    ms = max(np.abs(g2 - [-sqrt(2), sqrt(2)]).max(), np.abs(g3 - [-sqrt(14), 0, sqrt(14)]).max(),
             abs(meixner_sheffer(2, g2[-1])), abs(meixner_sheffer(3, g3[-1])) / 14,
             abs(0.5 * g2[-1] - 1 / sqrt(2)), abs(0.5 * g3[-1] - sqrt(3.5)))
    ok = he4 <= 1e-12 and approx <= 0.05 and lag <= 1e-10 and ms <= 1e-12
    record(9, ok, f"He4 roots {he4:.1e}, smallest-root approx {approx:.2%}, Laguerre identity {lag:.1e}, "
                  f"G2/G3 roots {ms:.1e}")


# ---------------------------------------------------------------- 10

def test_criterion_10_cli(tmp_path):
    script = ROOT / "scripts" / "regenerate_figures.py"
    t0 = time.perf_counter()
    codes = [subprocess.run([sys.executable, str(script), "--out", str(tmp_path / d)],
                            capture_output=True, text=True).returncode for d in ("a", "b")]
    elapsed = time.perf_counter() - t0
    files_a = sorted(p.name for p in (tmp_path / "a").iterdir())
    files_b = sorted(p.name for p in (tmp_path / "b").iterdir())
    identical = files_a == files_b and all(
        (tmp_path / "a" / f).read_bytes() == (tmp_path / "b" / f).read_bytes() for f in files_a)
    commands = {f.split("_")[0] for f in files_a if not f.startswith("fig")}
    has_figs = sum(f.startswith("fig1") and f.endswith(".pgm") for f in files_a) == 9 and \
        sum(f.startswith("fig4") and f.endswith(".pgm") for f in files_a) == 6
    ok = codes == [0, 0] and identical and has_figs and \
        commands == {"state", "sweep", "compare", "oracle"} and elapsed < 60
    record(10, ok, f"exit codes {codes}, {len(files_a)} files byte-identical {identical}, "
                   f"two runs in {elapsed:.1f} s")
