"""
Command-line front end.

    fdstates state   --family coherent --variant generalized --s 18 --param 2+1i
    fdstates wigner  --family coherent --variant generalized --s 18 --param 4.4
    fdstates sweep   --family coherent --variant generalized --s 18 --stop 30 --quasiperiod
    fdstates compare --family coherent --variant generalized --variant-b truncated --s 1
    fdstates oracle  --family squeezed-vacuum --variant generalized --s 19 --param 1
"""
import argparse
import os
import sys
from fractions import Fraction

import numpy as np

from . import analysis, io
from .errors import (
    ConfigError,
    ConsistencyError,
    DegenerateStateError,
    FDStatesError,
    NoReturnError,
    RegimeError,
    ToleranceError,
)
from .states import Family, StateSpec, Variant, build_state, oracle_state, overlap
from .wigner import number_marginal, phase_marginal, wigner_from_state, wigner_pure_coeffs

EXIT_OK, EXIT_CONFIG, EXIT_TOLERANCE = 0, 1, 2
NEGATIVE_EPS = 1e-14

EPILOG = """\
complex parameters: "a+bi" (e.g. 2-0.5i) or "r@phi" (modulus@phase in radians);
use --param=-1+2i when the value starts with a minus sign.

output: files go to --out, or $FDSTATES_OUT, or the current directory.
CSV floats are written with 17 significant digits and JSON floats in
shortest round-trip form, so identical invocations give identical bytes.
Every JSON sidecar carries "schema_version".

exit codes: 0 success, 1 configuration error, 2 numerical tolerance failure.
"""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def parse_complex(text):
    """Parse "a+bi", "a-bi", "bi", "a" or "r@phi"."""
    t = str(text).strip().replace(" ", "")
    try:
        if "@" in t:
            r, phi = t.split("@")
            return float(r) * complex(np.cos(float(phi)), np.sin(float(phi)))
        t = t.replace("I", "i").replace("i", "j")
        if t.endswith("j") and (len(t) == 1 or t[-2] in "+-"):
            t = t[:-1] + "1j"
        return complex(t)
    except ValueError:
        raise ConfigError(f"cannot parse complex parameter {text!r}") from None


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_spec_args(p, require_param=True):
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--variant", default="generalized", choices=[v.value for v in Variant])
    p.add_argument("--s", type=int, required=True, help="space is H_s, dimension s+1")
    p.add_argument("--param", type=_complex_arg, default=0j if not require_param else None,
                   required=require_param, help="alpha, beta or zeta")
    aux = p.add_mutually_exclusive_group()
    aux.add_argument("--aux", type=int, help="generic auxiliary integer")
    aux.add_argument("--nd", type=int, help="displaced number state index n_d")
    aux.add_argument("--delta", type=int, help="cat parity (0 even, 1 odd)")
    aux.add_argument("--m0", type=int, help="phase coherent reference index (theta0 = 2 pi m0/(s+1))")


def _add_output_args(p, default_formats):
    p.add_argument("--out", help="output directory (default $FDSTATES_OUT or .)")
    p.add_argument("--name", help="file stem (default: the command name)")
    p.add_argument("--formats", default=default_formats,
                   help=f"comma-separated subset of csv,json,pgm (default {default_formats})")


def build_parser():
    parser = _Parser(
        prog="fdstates",
        description="Finite-dimensional quantum-optical states and discrete Wigner functions.",
        epilog=EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("state", help="number-basis coefficients", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_spec_args(p)
    _add_output_args(p, "csv,json")

    p = sub.add_parser("wigner", help="discrete Wigner grid, heatmap and sidecar", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_spec_args(p)
    p.add_argument("--theta0", type=float, help="reference phase (default: the state's own)")
    p.add_argument("--pgm-scale", type=int, default=8, help="pixels per grid cell")
    p.add_argument("--tol", type=float, default=1e-8, help="tolerance of the dual-path check")
    _add_output_args(p, "csv,json,pgm")

    p = sub.add_parser("sweep", help="observable along the parameter modulus", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_spec_args(p, require_param=False)
    p.add_argument("--start", type=float, default=0.0)
    p.add_argument("--stop", type=float, help="default: three nominal quasiperiods")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--observable", default="seed-return-prob", choices=analysis.OBSERVABLES)
    p.add_argument("--index", type=int, default=0, help="coefficient index for coefficient-* observables")
    p.add_argument("--quasiperiod", action="store_true", help="report the first seed-return maximum")
    p.add_argument("--qp-start", type=float, help="ignore maxima below this value (default T/2)")
    p.add_argument("--min-height", type=float, default=0.5)
    _add_output_args(p, "csv,json")

    p = sub.add_parser("compare", help="overlap of two variants and leading series fit", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_spec_args(p, require_param=False)
    p.add_argument("--variant-b", required=True, choices=[v.value for v in Variant])
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--exponent", type=int, help="override the leading exponent")
    p.add_argument("--coeff", help="override the expected coefficient (e.g. 1/18)")
    _add_output_args(p, "csv,json")

    p = sub.add_parser("oracle", help="closed form vs matrix exponential", epilog=EPILOG,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    _add_spec_args(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=0, help="extra random parameters")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for --samples")
    p.add_argument("--max-modulus", type=float, default=5.0)
    _add_output_args(p, "json")
    return parser


# ---------------------------------------------------------------- helpers

def _spec_from_args(args, param=None):
    aux = next((v for v in (args.aux, args.nd, args.delta, args.m0) if v is not None), None)
    family = Family(args.family)
    if aux is None and family is Family.DISPLACED_NUMBER:
        raise ConfigError("displaced-number states need --nd")
    p = args.param if param is None else param
    return StateSpec(family, Variant(args.variant), args.s, 0j if p is None else p, aux)


def _formats(args, allowed):
    fmts = [f.strip() for f in args.formats.split(",") if f.strip()]
    if not fmts:
        raise ConfigError("--formats must name at least one format")
    bad = sorted(set(fmts) - set(allowed))
    if bad:
        raise ConfigError(f"format(s) {bad} not available for {args.command}; choose from {sorted(allowed)}")
    return set(fmts)


def _out_path(args, ext):
    out = args.out if args.out is not None else io.default_output_dir()
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, f"{args.name or args.command}.{ext}")


def _report(paths):
    for p in paths:
        print(p)


# ---------------------------------------------------------------- commands

def cmd_state(args):
    fmts = _formats(args, {"csv", "json"})
    spec = _spec_from_args(args)
    state = build_state(spec)
    written = []
    if "csv" in fmts:
        written.append(_out_path(args, "csv"))
        io.write_state_csv(written[-1], state)
    if "json" in fmts:
        written.append(_out_path(args, "json"))
        io.write_json(written[-1], {
            "command": "state",
            "spec": spec.to_dict(),
            "norm": state.norm(),
            "amplitudes": [[a.real, a.imag] for a in state.amps],
        })
    _report(written)
    return EXIT_OK


def cmd_wigner(args):
    fmts = _formats(args, {"csv", "json", "pgm"})
    spec = _spec_from_args(args)
    theta0 = spec.theta0 if args.theta0 is None else args.theta0
    if args.pgm_scale < 1:
        raise ConfigError("--pgm-scale must be >= 1")
    state = build_state(spec)
    grid = wigner_pure_coeffs(state, theta0)
    check = np.abs(grid.values - wigner_from_state(state, theta0).values).max()
    written = []
    if "csv" in fmts:
        written.append(_out_path(args, "csv"))
        io.write_grid_csv(written[-1], grid)
    bounds = None
    if "pgm" in fmts:
        written.append(_out_path(args, "pgm"))
        bounds = io.write_pgm(written[-1], grid.values, args.pgm_scale)
    if "json" in fmts:
        v = grid.values
        neg = [[int(n), int(m), float(v[n, m])] for n, m in zip(*np.nonzero(v < -NEGATIVE_EPS))]
        nm, pm = number_marginal(grid), phase_marginal(grid)
        written.append(_out_path(args, "json"))
        io.write_json(written[-1], {
            "command": "wigner",
            "spec": spec.to_dict(),
            "theta0": theta0,
            "thetas": grid.thetas,
            "min": float(v.min()),
            "max": float(v.max()),
            "total": float(v.sum()),
            "pgm": None if bounds is None else {
                "black": bounds[1], "white": bounds[0], "scale": args.pgm_scale,
                "rows": "n ascending from top", "columns": "m ascending from left",
            },
            "negative_threshold": -NEGATIVE_EPS,
            "negative_cells": neg,
            "number_marginal": nm,
            "phase_marginal": pm,
            "number_marginal_sum": float(nm.sum()),
            "phase_marginal_sum": float(pm.sum()),
            "dual_path_max_diff": float(check),
        })
    _report(written)
    if check > args.tol:
        raise ToleranceError(f"Wigner dual-path difference {check:.3g} exceeds {args.tol:g}")
    return EXIT_OK


def cmd_sweep(args):
    fmts = _formats(args, {"csv", "json"})
    spec = _spec_from_args(args, param=args.param if args.param is not None else 0j)
    T = analysis.natural_period(spec) if spec.s >= 1 else None
    stop = args.stop
    if stop is None:
        if T is None:
            raise ConfigError("--stop is required for s = 0")
        stop = 3.0 * T
    result = analysis.sweep(spec, args.start, stop, args.step, args.observable, args.index)
    meta = {
        "command": "sweep",
        "spec": spec.to_dict(),
        "observable": args.observable,
        "index": args.index,
        "start": args.start,
        "stop": stop,
        "step": args.step,
        "nominal_period": T,
    }
    if args.quasiperiod:
        qp_start = args.qp_start if args.qp_start is not None else (0.5 * T if T else args.start)
        meta["quasiperiod_start"] = qp_start
        meta["min_height"] = args.min_height
        try:
            meta["quasiperiod"] = analysis.quasiperiod_from_sweep(result, qp_start, args.min_height)
            meta["no_return"] = False
        except NoReturnError as exc:
            meta["quasiperiod"] = None
            meta["no_return"] = True
            meta["message"] = str(exc)
    written = []
    if "csv" in fmts:
        written.append(_out_path(args, "csv"))
        io.write_csv(written[-1], ["param", args.observable],
                     zip(result.param_values, result.observable))
    if "json" in fmts:
        written.append(_out_path(args, "json"))
        io.write_json(written[-1], meta)
    _report(written)
    return EXIT_OK


def cmd_compare(args):
    fmts = _formats(args, {"csv", "json"})
    spec_a = _spec_from_args(args)
    spec_b = StateSpec(spec_a.family, Variant(args.variant_b), spec_a.s, 0j, spec_a.aux)
    meta = {"command": "compare", "spec_a": spec_a.to_dict(), "spec_b": spec_b.to_dict()}
    exponent, coeff = args.exponent, None
    if args.coeff is not None:
        try:
            coeff = Fraction(args.coeff)
        except (ValueError, ZeroDivisionError):
            raise ConfigError(f"cannot parse --coeff {args.coeff!r}") from None
    identical = spec_a.variant is spec_b.variant
    if not identical and (exponent is None or coeff is None):
        try:
            p_known, c_known = analysis.leading_term(spec_a.family, spec_a.variant, spec_b.variant, spec_a.s)
            exponent = p_known if exponent is None else exponent
            coeff = c_known if coeff is None else coeff
        except ConfigError as exc:
            meta["warning"] = str(exc)
    ranged = (args.start, args.stop, args.step)
    if any(v is not None for v in ranged):
        if any(v is None for v in ranged):
            raise ConfigError("--start, --stop and --step go together")
        r = analysis.sweep_grid(*ranged)
    elif exponent is not None and coeff is not None:
        r = analysis.default_sample_points(exponent, coeff)
    else:
        r = analysis.sweep_grid(0.05, 1.0, 0.05)
    ov = np.array([overlap(build_state(spec_a.with_param(x)), build_state(spec_b.with_param(x)))
                   for x in r])
    meta["fit"] = None
    if identical:
        meta["warning"] = "identical specs: overlap is identically 1, no series to fit"
    elif exponent is not None and coeff is not None:
        try:
            fit = analysis.overlap_series_fit(spec_a.family, spec_a.variant, spec_b.variant, spec_a.s,
                                              exponent, coeff, r, spec_a.aux)
            meta["fit"] = {
                "exponent": fit.exponent,
                "coefficient": fit.coefficient,
                "expected": fit.expected,
                "expected_exact": str(coeff) if isinstance(coeff, Fraction) else None,
                "relative_error": fit.rel_error,
                "loglog_slope": fit.slope,
                "max_relative_residual": fit.max_residual,
            }
        except RegimeError as exc:
            meta["warning"] = f"regime violation: {exc}"
    written = []
    if "csv" in fmts:
        written.append(_out_path(args, "csv"))
        io.write_csv(written[-1], ["param", "overlap_re", "overlap_im", "deficit"],
                     [(x, o.real, o.imag, 1.0 - o.real) for x, o in zip(r, ov)])
    if "json" in fmts:
        written.append(_out_path(args, "json"))
        io.write_json(written[-1], meta)
    _report(written)
    return EXIT_OK


def cmd_oracle(args):
    fmts = _formats(args, {"json"})
    spec = _spec_from_args(args)
    if spec.variant is not Variant.GENERALIZED:
        raise ConfigError("oracle applies to generalized variants")
    if args.samples < 0 or args.max_modulus <= 0:
        raise ConfigError("--samples must be >= 0 and --max-modulus > 0")
    params = [spec.param]
    rng = np.random.default_rng(args.seed)
    for _ in range(args.samples):
        r = args.max_modulus * np.sqrt(rng.uniform())
        params.append(complex(r * np.exp(2j * np.pi * rng.uniform())))
    rows = []
    worst = (0.0, 0, spec.param)
    for p in params:
        sp = spec.with_param(p)
        diff = np.abs(build_state(sp).amps - oracle_state(sp).amps)
        n = int(np.argmax(diff))
        rows.append({"param": complex(p), "max_deviation": float(diff[n]), "worst_n": n})
        if diff[n] >= worst[0]:
            worst = (float(diff[n]), n, p)
    passed = worst[0] <= args.tol
    path = _out_path(args, "json")
    io.write_json(path, {
        "command": "oracle",
        "spec": spec.to_dict(),
        "tolerance": args.tol,
        "seed": args.seed,
        "samples": rows,
        "max_deviation": worst[0],
        "worst_n": worst[1],
        "worst_param": complex(worst[2]),
        "passed": passed,
    })
    _report([path])
    print(f"max deviation {worst[0]:.3e} at n={worst[1]} ({'pass' if passed else 'FAIL'})")
    if not passed:
        raise ToleranceError(
            f"oracle deviation {worst[0]:.3e} at n={worst[1]} (param {worst[2]}) exceeds {args.tol:g}")
    return EXIT_OK


COMMANDS = {
    "state": cmd_state,
    "wigner": cmd_wigner,
    "sweep": cmd_sweep,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ToleranceError, ConsistencyError) as exc:
        print(f"fdstates: tolerance failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except DegenerateStateError as exc:
        print(f"fdstates: error: degenerate state: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FDStatesError as exc:
        print(f"fdstates: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
