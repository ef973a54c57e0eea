"""Time the compiled kernels against the pure-Python reference.

Usage: python benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from ripp import _pykernels

try:
    from ripp import _ckernels
except ImportError:
    _ckernels = None


def inputs(n, seed=0):
    rng = np.random.default_rng(seed)
    H = rng.uniform(0.01, 5, n)
    D = rng.uniform(0.01, 5, n)
    a = rng.uniform(1, 100, n)
    b = a * (1 + rng.uniform(0.01, 3, n))
    x = rng.uniform(10, 1e4, n)
    return H, D, a, b, x


def bench(mod, n, repeat):
    H, D, a, b, x = inputs(n)
    jobs = {
        "prefer_many": lambda: mod.prefer_many(mod.CASE_D, H, D, a, b, x, 0.03, 1e-12),
        "simulate_path": lambda: mod.simulate_path(
            mod.CASE_D, 0.03, 1000.0, H, D, a, b, False, mod.POLICY_GROWTH_OPTIMAL, 0.0, 1e-12
        ),
    }
    return {name: min(timeit.repeat(f, number=1, repeat=repeat)) for name, f in jobs.items()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    py = bench(_pykernels, args.n, args.repeat)
    cy = bench(_ckernels, args.n, args.repeat) if _ckernels else None
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<15}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name, t in py.items():
        if cy is None:
            print(f"{name:<15}{t:>12.4f}{'n/a':>12}{'':>10}")
        else:
            print(f"{name:<15}{t:>12.4f}{cy[name]:>12.4f}{t / cy[name]:>9.1f}x")


if __name__ == "__main__":
    main()
