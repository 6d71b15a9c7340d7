"""Benchmark the compiled kernel backend against the pure-Python twin.

The hot loop of a verification campaign is the insertion-profile / rank
kernel evaluated over every (matching, isolated point) pair, so that is
what is timed here, over the same instance mix the default campaign uses.

Run:  python benchmarks/bench_kernels.py [--n 7] [--seeds 10] [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from matchbound._kernels import METHOD_CLIP, pure
from matchbound.geom import generate_point_set
from matchbound.matchings import enumerate_matchings, isolated_vertices

try:
    from matchbound._kernels import _native as native
except ImportError:
    native = None


def _workload(n: int, seeds: int):
    """All (xs, ys, edges, p) insertion-kernel calls for the instance mix."""
    calls = []
    for seed in range(seeds):
        ps = generate_point_set(n, seed)
        for M in enumerate_matchings(ps):
            edges = list(M.edges)
            for p in isolated_vertices(ps, M):
                calls.append((ps.xs, ps.ys, edges, p))
    return calls


def _time_backend(backend, calls, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        for xs, ys, edges, p in calls:
            backend.insertion_vectors(xs, ys, edges, p, METHOD_CLIP)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=7)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    calls = _workload(args.n, args.seeds)
    print(f"workload: n={args.n} seeds={args.seeds} kernel_calls={len(calls)}")

    t_pure = _time_backend(pure, calls, args.repeat)
    print(f"pure:   {t_pure:8.3f} s  ({len(calls) / t_pure:10.0f} calls/s)")
    if native is None:
        print("native: not built (pip install -e . --no-build-isolation)")
        return
    t_native = _time_backend(native, calls, args.repeat)
    print(f"native: {t_native:8.3f} s  ({len(calls) / t_native:10.0f} calls/s)")
    print(f"speedup: {t_pure / t_native:.1f}x")


if __name__ == "__main__":
    main()
