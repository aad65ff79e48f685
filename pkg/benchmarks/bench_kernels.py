"""Time the numba and numpy kernel backends on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call per kernel includes compilation (or a cache load) and
is reported separately from the steady-state timings.
"""
import argparse
import time

import numpy as np

from k3vw import _accel

CASES = [
    ("sigma1_sieve", lambda be: be.sigma1_sieve(200_000)),
    ("phase_table", lambda be: be.phase_table(1_000)),
]


def _residue_case(be, K=1_000, n=10_000):
    ks, hs, ts = be.phase_table(K)
    offsets = _accel.block_offsets(K)
    return lambda: be.residue_counts(n, ks, hs, ts, offsets, K * (K + 1) // 2)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = [_accel.backend("numpy")]
    try:
        backends.append(_accel.backend("numba"))
    except RuntimeError:
        print("numba unavailable, timing numpy only")

    results = {}
    for be in backends:
        first = {}
        for name, case in CASES:
            t0 = time.perf_counter()
            out = case(be)
            first[name] = time.perf_counter() - t0
            results.setdefault(name, {})[be.name] = (first[name], best_of(lambda: case(be), args.repeat), out)
        run = _residue_case(be)
        t0 = time.perf_counter()
        out = run()
        first_res = time.perf_counter() - t0
        results.setdefault("residue_counts", {})[be.name] = (first_res, best_of(run, args.repeat), out)

    print(f"{'kernel':<16}{'backend':<9}{'first (s)':>11}{'best (s)':>11}")
    for name, per in results.items():
        for be_name, (first, best, _) in per.items():
            print(f"{name:<16}{be_name:<9}{first:>11.4f}{best:>11.4f}")
        if len(per) == 2:
            a, b = (per[k][2] for k in ("numpy", "numba"))
            same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
            speedup = per["numpy"][1] / per["numba"][1]
            print(f"{'':<16}outputs equal: {same}, numba speedup x{speedup:.1f}")


if __name__ == "__main__":
    main()
