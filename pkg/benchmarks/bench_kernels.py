"""Compare the compiled and numpy kernels.

    python benchmarks/bench_kernels.py [--repeat 5]

Times a full theta grid at a single alpha for both systems, then the whole
alpha-union extension scan with each backend forced in turn.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from entropic_lg import kernels
from entropic_lg.lg import default_alpha_grid, theta_grid
from entropic_lg.quantum import gibbs_distribution
from entropic_lg.systems import LEVELS, family_transitions

SCAN = ("import time; from entropic_lg import kernels; from entropic_lg.lg import domain_extension;"
        "t=time.perf_counter(); e=domain_extension('qutrit', 5.0, threads=1);"
        "print(kernels.BACKEND, round(time.perf_counter()-t, 3), round(e.percent, 6))")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--points", type=int, default=2001)
    args = ap.parse_args()

    impls = kernels.backends()
    print(f"active backend: {kernels.BACKEND}; available: {', '.join(impls)}")
    th = theta_grid(args.points)
    for system in ("qubit", "qutrit"):
        p0 = gibbs_distribution(LEVELS[system], 1.0)
        T, T2 = family_transitions(system, th)
        results = {}
        for name, fn in impls.items():
            t = min(timeit.repeat(lambda: fn(p0, T, T, T2, 2.0), number=20, repeat=args.repeat)) / 20
            results[name] = fn(p0, T, T, T2, 2.0)
            print(f"  {system:6s} {name:7s} {args.points} angles: {1e3 * t:8.3f} ms")
        vals = list(results.values())
        print(f"  {system:6s} max backend difference: {np.abs(vals[0] - vals[-1]).max():.1e}")

    print(f"extension scan, qutrit beta=5, {len(default_alpha_grid())} orders x {args.points} angles:")
    for backend in impls:
        env = dict(os.environ, ENTROPIC_LG_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", SCAN], env=env, capture_output=True, text=True, check=True)
        name, secs, pct = out.stdout.split()
        print(f"  {name:7s} {float(secs):6.2f} s  extension {pct} %")


if __name__ == "__main__":
    main()
