#!/usr/bin/env python3
"""Benchmark the compiled displacement kernels against the NumPy fallback.

Times the three hot operations (displacement application, overlap
contraction, phase-average quadrature) on squeezed-vacuum-like vectors of
growing truncation, and prints a speedup table.  Run after an editable
install:

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import time

import numpy as np

from oscdetect import _kernels_py

try:
    from oscdetect import _kernels
except ImportError:
    _kernels = None


def _squeezed_like(dim: int) -> np.ndarray:
    # realistic workload: slowly decaying even-component vector
    r = 1.2
    m = np.arange(dim // 2)
    c = np.zeros(dim, dtype=np.complex128)
    c[2 * m] = np.exp(m * math.log(math.tanh(r))) / np.sqrt(1.0 + m)
    return c / np.linalg.norm(c)


def _time(fn, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = []
    for dim in (128, 512, 2048):
        c = _squeezed_like(dim)
        z = 0.9 * np.exp(0.4j)
        cases.append((f"displace_apply    dim={dim:5d}",
                      lambda k, c=c, z=z: k.displace_apply(c, z)))
        cases.append((f"overlap_sum       dim={dim:5d}",
                      lambda k, c=c, z=z: k.overlap_sum(c, z)))
    for dim, nphi in ((256, 256), (1024, 256)):
        c = _squeezed_like(dim)
        cases.append((f"phase_average     dim={dim:5d} N={nphi}",
                      lambda k, c=c, n=nphi: k.phase_average(c, 0.9, n)))

    if _kernels is None:
        print("compiled extension not built; timing the NumPy fallback only")
    header = f"{'operation':34s} {'python':>10s}"
    if _kernels is not None:
        header += f" {'compiled':>10s} {'speedup':>8s}"
    print(header)
    print("-" * len(header))
    for name, fn in cases:
        t_py = _time(lambda: fn(_kernels_py), args.repeat)
        line = f"{name:34s} {1e3 * t_py:8.2f} ms"
        if _kernels is not None:
            t_c = _time(lambda: fn(_kernels), args.repeat)
            line += f" {1e3 * t_c:8.2f} ms {t_py / t_c:7.1f}x"
        print(line)

    # agreement spot check so the table cannot silently compare different math
    if _kernels is not None:
        c = _squeezed_like(512)
        d = abs(_kernels.overlap_sum(c, 0.8j) - _kernels_py.overlap_sum(c, 0.8j))
        print(f"\nbackend agreement |d overlap| = {d:.2e}")


if __name__ == "__main__":
    main()
