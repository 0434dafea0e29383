"""Wall-time comparison of the compiled and pure-Python integration kernels.

Usage: python benchmarks/bench_core.py [--repeat N] [--x-max X]
"""
import argparse
import time

import numpy as np

from toda_connect import ode
from toda_connect.connection import AsymptoticZero

POINTS = [(0.5, 0.0), (0.2, 0.1), (-0.3, 0.5), (0.7, -1.0)]


def bench(backend, x_max, repeat):
    cfg = ode.IntegratorConfig(x_max=x_max)
    times, steps, last = [], 0, {}
    for g, r in POINTS:
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            traj = ode.integrate_radial_toda(AsymptoticZero(g, r), cfg, backend=backend)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
        steps += traj.steps_taken
        last[g, r] = traj
    return sum(times), steps, last


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--x-max", type=float, default=200.0)
    args = ap.parse_args()

    results = {}
    for name in ode.BACKENDS:
        total, steps, trajs = bench(name, args.x_max, args.repeat)
        results[name] = (total, trajs)
        print(f"{name:>9}: {total:8.4f} s for {len(POINTS)} trajectories, {steps} steps "
              f"({1e6 * total / steps:.2f} us/step)")
    if "compiled" in results:
        py, cc = results["python"], results["compiled"]
        diff = max(np.abs(py[1][k].w0 - cc[1][k].w0).max() for k in py[1])
        print(f"  speedup: {py[0] / cc[0]:.1f}x, max |w0 difference| = {diff:.1e}")
    else:
        print("  compiled extension not built; only the Python kernel is available")


if __name__ == "__main__":
    main()
