"""Benchmark the compiled rational backend against the pure-Python fallback.

The hot kernels are exact rational geometry (hull construction, predicate
evaluation) and potential comparison.  Both backends expose the same API and
are selected at import time, so the comparison runs this script twice in
subprocesses, once per backend.

Usage: python benchmarks/bench_rational.py [runs]
"""

import os
import subprocess
import sys
import time


def workload(runs):
    from lumigather.fuzz import fuzz
    from lumigather.rational import BACKEND, Rat

    t0 = time.perf_counter()
    s1 = fuzz(
        "elect-one-lds",
        "ssync-unfair",
        runs=runs,
        seed=12345,
        n_range=(4, 8),
        bound=100,
        deltas=(Rat(1, 4),),
        step_budget=10000,
    )
    t1 = time.perf_counter()
    s2 = fuzz(
        "three-color",
        "async",
        runs=max(runs // 2, 1),
        seed=54321,
        n_range=(3, 6),
        bound=8,
        step_budget=50000,
    )
    t2 = time.perf_counter()
    assert s1.ok and s2.ok, "benchmark workload must pass its checks"
    print(f"backend={BACKEND}")
    print(f"  unfair-ssync line election + monotone check: {t1 - t0:8.3f}s ({runs} runs)")
    print(f"  async three-color gathering + full checks:   {t2 - t1:8.3f}s ({max(runs // 2, 1)} runs)")
    print(f"  total: {t2 - t0:8.3f}s")
    return t2 - t0


def main():
    runs = int(sys.argv[1]) if len(sys.argv) > 1 else 30
    if os.environ.get("_BENCH_CHILD"):
        workload(runs)
        return
    here = os.path.abspath(__file__)
    for pure in ("0", "1"):
        env = dict(os.environ, _BENCH_CHILD="1", LUMIGATHER_PURE_RATIONAL=pure)
        subprocess.run([sys.executable, here, str(runs)], env=env, check=True)


if __name__ == "__main__":
    main()
