"""Regenerate the data behind the s = 18 torus Wigner panels through the CLI.

Set 1: vacuum, |1>, phase vacuum |theta_0>, and coherent, displaced number
and phase coherent states at parameter 0.5 (generalized and truncated).
Set 2: generalized coherent state at alpha = k T / 6, k = 1..6, T = sqrt(78).
A sweep, a variant comparison and an oracle run exercise the other commands.

    python scripts/regenerate_figures.py --out figures
"""
import argparse
import sys
from math import sqrt

from fdstates.cli import main

S = "18"


def command_list():
    cmds = [
        ["state", "--family", "coherent", "--s", S, "--param", "0.5", "--name", "state_cs"],
        ["wigner", "--family", "coherent", "--s", S, "--param", "0", "--name", "fig1a_vacuum"],
        ["wigner", "--family", "displaced-number", "--s", S, "--param", "0", "--nd", "1",
         "--name", "fig1b_number1"],
        ["wigner", "--family", "phase-coherent", "--s", S, "--param", "0", "--m0", "0",
         "--name", "fig1c_phase_vacuum"],
    ]
    for variant in ("generalized", "truncated"):
        v = variant[:3]
        cmds += [
            ["wigner", "--family", "coherent", "--variant", variant, "--s", S, "--param", "0.5",
             "--name", f"fig1d_cs_{v}"],
            ["wigner", "--family", "displaced-number", "--variant", variant, "--s", S,
             "--param", "0.5", "--nd", "1", "--name", f"fig1e_dns_{v}"],
            ["wigner", "--family", "phase-coherent", "--variant", variant, "--s", S,
             "--param", "0.5", "--m0", "0", "--name", f"fig1f_pcs_{v}"],
        ]
    T = sqrt(4 * 18 + 6)
    for k in range(1, 7):
        cmds.append(["wigner", "--family", "coherent", "--s", S, "--param", repr(k * T / 6),
                     "--name", f"fig4_cs_{k}of6"])
    cmds += [
        ["sweep", "--family", "coherent", "--s", S, "--step", "0.01", "--quasiperiod",
         "--name", "sweep_cs"],
        ["compare", "--family", "coherent", "--variant", "generalized", "--variant-b", "truncated",
         "--s", "2", "--name", "compare_cs"],
        ["oracle", "--family", "coherent", "--s", S, "--param", "2+1i", "--samples", "5",
         "--name", "oracle_cs"],
    ]
    return cmds


def run(out):
    for cmd in command_list():
        code = main(cmd + ["--out", out])
        if code != 0:
            print(f"failed ({code}): {' '.join(cmd)}", file=sys.stderr)
            return code
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True)
    sys.exit(run(ap.parse_args().out))
