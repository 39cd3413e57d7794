"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from fdstates import _kernels_py as py
from fdstates.poly import hermite_he_roots, hermite_offdiag

try:
    from fdstates import _kernels as cy
except ImportError:
    cy = None


def cases():
    rng = np.random.default_rng(0)
    for s in (18, 60, 150):
        v = rng.normal(size=s + 1) + 1j * rng.normal(size=s + 1)
        amps = np.ascontiguousarray(v / np.linalg.norm(v))
        yield f"wigner_grid s={s}", "wigner_grid", (amps, 0.3)
    for N in (19, 41, 61):
        grid = np.ascontiguousarray(rng.normal(size=(N, N)))
        yield f"line_sums N={N}", "line_sums", (grid,)
    for n in (40, 200):
        x = np.ascontiguousarray(hermite_he_roots(n + 1))
        yield f"orthonormal_table n={n}", "orthonormal_table", (x, hermite_offdiag(n), n)


def best(fn, args, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(*args), number=1), 1e-6)))
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'case':28s} {'python [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for label, name, call_args in cases():
        t_py = best(getattr(py, name), call_args, args.repeat)
        if cy is None:
            print(f"{label:28s} {1e3 * t_py:12.3f} {'n/a':>12s} {'':>8s}")
            continue
        t_cy = best(getattr(cy, name), call_args, args.repeat)
        print(f"{label:28s} {1e3 * t_py:12.3f} {1e3 * t_cy:12.3f} {t_py / t_cy:8.1f}x")


if __name__ == "__main__":
    main()
