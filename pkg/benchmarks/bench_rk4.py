"""Throughput benchmark: compiled RK4 kernel vs pure-Python fallback.

Usage:
    python benchmarks/bench_rk4.py [--steps N] [--repeats R]
"""

import argparse
import time

from omitlab._rk4_py import integrate_rk4 as rk4_py

try:
    from omitlab._rk4_cy import integrate_rk4 as rk4_cy
except ImportError:
    rk4_cy = None

ARGS = (
    0.5,    # kappa1
    0.4,    # kappa2
    1.0,    # delta_c
    0.9,    # delta_d
    0.01,   # g0
    1.0,    # m
    1.0,    # hbar
    1.0,    # omega_m
    0.01,   # gamma_m
    0.8,    # eps_c
    0.3,    # eps_d
    0.008,  # eps_p
    1.02,   # delta
)
Y0 = (0.1, -0.2, 0.05, 0.0, 0.01, 0.0)


def bench(kernel, n_steps, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        status, *_ = kernel(*ARGS, Y0, 0.0, 0.01, n_steps, 1e12)
        best = min(best, time.perf_counter() - t0)
        assert status == -1
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    t_py = bench(rk4_py, args.steps, args.repeats)
    print(f"python kernel:   {args.steps / t_py:12.0f} steps/s  ({t_py:.3f} s)")
    if rk4_cy is None:
        print("compiled kernel: not built")
        return
    t_cy = bench(rk4_cy, args.steps, args.repeats)
    print(f"compiled kernel: {args.steps / t_cy:12.0f} steps/s  ({t_cy:.3f} s)")
    print(f"speedup:         {t_py / t_cy:.1f}x")


if __name__ == "__main__":
    main()
