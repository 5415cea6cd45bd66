"""Time the compiled and pure-Python kernels on the same inputs.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from noisyops.kernels import BACKENDS


def _inputs(rng):
    cases = {}
    for n in (2, 4, 8, 16):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        cases[f"jacobi_eigh n={n}"] = ("jacobi_eigh", ((a + a.conj().T) / 2,))
        cases[f"jacobi_svd_columns n={n}"] = ("jacobi_svd_columns", (a,))
    cases["bisect_alpha"] = ("bisect_alpha", (0.7, 0.5, 0.5, 0.3, np.pi))
    return cases


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if "cython" not in BACKENDS:
        print("compiled extension not built; only the python backend is available")
    cases = _inputs(np.random.default_rng(args.seed))
    names = sorted(BACKENDS)
    print(f"{'kernel':<26}" + "".join(f"{name + ' (us)':>16}" for name in names) + f"{'speedup':>10}")
    for label, (func, call_args) in cases.items():
        times = {}
        for name in names:
            fn = getattr(BACKENDS[name], func)
            timer = timeit.Timer(lambda: fn(*call_args))
            number, _ = timer.autorange()
            times[name] = min(timer.repeat(args.repeat, number)) / number * 1e6
        row = f"{label:<26}" + "".join(f"{times[name]:>16.1f}" for name in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>9.0f}x"
        print(row)


if __name__ == "__main__":
    main()
