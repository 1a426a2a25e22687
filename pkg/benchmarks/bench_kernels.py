"""Benchmark the compiled kernels against the pure-numpy fallback.

Run after building the extension in place:

    python setup.py build_ext --inplace
    python benchmarks/bench_kernels.py
"""
import time

import numpy as np

from pairwave import _kernels_py

try:
    from pairwave import _core
except ImportError:
    _core = None

WORKLOADS = [
    ("deviation_integrand, n=2e5, caustic point",
     "deviation_integrand", (195.36, 100.0, 0.1), 200_000),
    ("deviation_integrand, n=2e5, small r~",
     "deviation_integrand", (1.0, 50.0, 0.1), 200_000),
    ("mode_integrand, n=2e5, l=2",
     "mode_integrand", (2.0, 150.0, 50.0, 0.1), 200_000),
    ("steady_inversion_integrand, n=2e5",
     "steady_inversion_integrand", (1.0, 1.0, 0.785), 200_000),
]


def time_call(fn, s, args, repeats=7):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(s, *args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    rng = np.random.default_rng(7)
    print(f"{'workload':52s} {'numpy':>10s} {'cython':>10s} {'speedup':>8s}")
    for label, name, args, n in WORKLOADS:
        s = np.sort(rng.uniform(1e-4, 2.0, n))
        f_py = getattr(_kernels_py, name)
        t_py = time_call(f_py, s, args)
        if _core is None:
            print(f"{label:52s} {t_py*1e3:9.2f}ms {'absent':>10s}")
            continue
        f_cy = getattr(_core, name)
        # agreement guard before timing
        a, b = f_cy(s[:512], *args), f_py(s[:512], *args)
        assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(b)))
        t_cy = time_call(f_cy, s, args)
        print(f"{label:52s} {t_py*1e3:9.2f}ms {t_cy*1e3:9.2f}ms "
              f"{t_py/t_cy:7.2f}x")
    if _core is None:
        print("\ncompiled extension not built; "
              "run: python setup.py build_ext --inplace")


if __name__ == "__main__":
    main()
