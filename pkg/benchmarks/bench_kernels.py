#!/usr/bin/env python3
"""Time the hot kernels on the numba fast path vs the pure-numpy fallback.

The env flag QUTRIT_DEPHASING_NO_NUMBA picks the path at import time, so the
fallback is timed in a subprocess.  Usage:

    python benchmarks/bench_kernels.py [--paths N] [--grid M] [--repeat K]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

_WORKER = """
import json, sys, time
import numpy as np
from qutrit_dephasing._kernels import (
    USING_NUMBA, average_propagated, phases_trapezoid,
)

n, m, repeat = json.loads(sys.argv[1])
rng = np.random.default_rng(0)
phis = rng.normal(scale=1.2, size=n)
rho0 = np.full((3, 3), 1/3, dtype=complex)
paths = rng.normal(size=(n, m))
grid = np.linspace(0.0, 1.0, m)

# warm-up (numba compilation / numpy allocation)
average_propagated(phis[:256], rho0)
phases_trapezoid(paths[:256], grid, 1.0)

timings = {"using_numba": USING_NUMBA}
for name, fn in [
    ("average_propagated", lambda: average_propagated(phis, rho0)),
    ("phases_trapezoid", lambda: phases_trapezoid(paths, grid, 1.0)),
]:
    best = min(
        (lambda t0=time.perf_counter(): (fn(), time.perf_counter() - t0)[1])()
        for _ in range(repeat)
    )
    timings[name] = best
print(json.dumps(timings))
"""


def run_variant(disable_numba: bool, n: int, m: int, repeat: int) -> dict:
    env = dict(os.environ)
    if disable_numba:
        env["QUTRIT_DEPHASING_NO_NUMBA"] = "1"
    else:
        env.pop("QUTRIT_DEPHASING_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", _WORKER, json.dumps([n, m, repeat])],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--paths", type=int, default=200000)
    parser.add_argument("--grid", type=int, default=201)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    t0 = time.perf_counter()
    numba_times = run_variant(False, args.paths, args.grid, args.repeat)
    numpy_times = run_variant(True, args.paths, args.grid, args.repeat)
    elapsed = time.perf_counter() - t0

    assert numba_times["using_numba"], "numba path did not activate"
    assert not numpy_times["using_numba"], "fallback flag ignored"

    print(f"paths={args.paths} grid={args.grid} best-of-{args.repeat} "
          f"(total wall {elapsed:.1f}s incl. compile)")
    print(f"{'kernel':<22} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}")
    for name in ("average_propagated", "phases_trapezoid"):
        tn = numba_times[name] * 1e3
        tp = numpy_times[name] * 1e3
        print(f"{name:<22} {tn:>12.2f} {tp:>12.2f} {tp / tn:>8.2f}x")


if __name__ == "__main__":
    main()
