#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback on the
three hot loops, with a cross-check that both backends agree.

Run:  python benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from dipolewell import _kernels_py

try:
    from dipolewell import _kernels_cy
except ImportError:
    _kernels_cy = None


def timed(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kummer(mod):
    def work ():
        acc = 0.0
        for i in range(400):
            x = 0.05 + 0.02 * i
            re, im, _ = mod.kummer_series(-1.5, 1.4, 1.0, 2.8, x, 500, 1e-16)
            acc += re + im
        return acc
    return work


def bench_whittaker_sweep(mod):
    def work():
        return mod.whittaker_sweep(0.5, 1.2, 60.0, 1.0, -0.52, 10.0, 25600)
    return work


def bench_radial_sweep(mod):
    n = 40000
    vals = np.empty(n + 1)
    exps = np.empty(n + 1)

    def work():
        return mod.radial_sweep(1.0, 4.0, 4.0, 13.5, 1.0, n, 1.0, -2.07, vals, exps)
    return work


def check_agreement():
    n = 12000
    v1 = np.empty(n + 1); e1 = np.empty(n + 1)
    v2 = np.empty(n + 1); e2 = np.empty(n + 1)
    a = _kernels_py.radial_sweep(1.0, 4.0, 4.0, 13.5, 1.0, n, 1.0, -2.07, v1, e1)
    b = _kernels_cy.radial_sweep(1.0, 4.0, 4.0, 13.5, 1.0, n, 1.0, -2.07, v2, e2)
    dev = abs(a[0] - b[0]) / abs(b[0])
    k_py = _kernels_py.kummer_series(-1.5, 1.4, 1.0, 2.8, 7.0, 500, 1e-16)
    k_cy = _kernels_cy.kummer_series(-1.5, 1.4, 1.0, 2.8, 7.0, 500, 1e-16)
    dev = max(dev, abs(complex(*k_py[:2]) - complex(*k_cy[:2])) / abs(complex(*k_cy[:2])))
    return dev


def main():
    benches = (
        ("kummer_series (400 evals)", bench_kummer),
        ("whittaker_sweep (25.6k RK4 steps)", bench_whittaker_sweep),
        ("radial_sweep (40k RK4 steps)", bench_radial_sweep),
    )
    print(f"{'kernel':<36} {'python':>10} {'compiled':>10} {'speedup':>9}")
    for name, make in benches:
        t_py = timed(make(_kernels_py), repeats=3)
        if _kernels_cy is None:
            print(f"{name:<36} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>9}")
            continue
        t_cy = timed(make(_kernels_cy), repeats=5)
        print(f"{name:<36} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>8.1f}x")
    if _kernels_cy is not None:
        print(f"backend agreement (rel deviation): {check_agreement():.3e}")
    else:
        print("compiled backend not built; showing fallback timings only")


if __name__ == "__main__":
    main()
