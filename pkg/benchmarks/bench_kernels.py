"""Compare the compiled kernels with the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--n 200000] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from twoparabolic import _pykernels
from twoparabolic.criteria import GeneratorParams, build_generators

try:
    from twoparabolic import _ckernels
except ImportError:
    _ckernels = None


def make_inputs(n: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    zeta = rng.normal(size=n) + 1j * rng.normal(size=n)
    v = rng.normal(size=n)
    zeta2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    v2 = rng.normal(size=n)
    inf = np.zeros(n, dtype=bool)
    A, B = build_generators(GeneratorParams(1.3, 0.4, 0.2, 0.7, -1.1, 0.5))
    return zeta, v, zeta2, v2, inf, A @ B


def cases(mod, inputs):
    zeta, v, zeta2, v2, inf, M = inputs
    return {
        "cygan_to": lambda: mod.cygan_to(zeta, v, 0.3 + 0.1j, -0.2),
        "cygan_pairs": lambda: mod.cygan_pairs(zeta, v, zeta2, v2),
        "act": lambda: mod.act(M, zeta, v, inf, 1e-12),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=200_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    inputs = make_inputs(args.n)
    py = cases(_pykernels, inputs)
    c = cases(_ckernels, inputs) if _ckernels is not None else {}
    print(f"n = {args.n}, best of {args.repeat}")
    print(f"{'kernel':<12} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, fn in py.items():
        t_py = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
        if name in c:
            t_c = min(timeit.repeat(c[name], number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<12} {t_py:>10.2f} {t_c:>10.2f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<12} {t_py:>10.2f} {'n/a':>10}")


if __name__ == "__main__":
    main()
