"""Benchmark the compiled assignment kernel against the pure-Python one.

Usage: python benchmarks/bench_assignment.py [--sizes 4,8,16,32,64] [--repeat 5]

Times ``min_assignment_cost`` on random dense matrices for each available
backend, then an end-to-end ``partial_wasserstein`` solve, and prints a small
table with the speedup of the compiled kernel when it is present.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from padot import assignment
from padot.domains import OpenBox
from padot.sampling import sample_tuple
from padot.transport import partial_wasserstein


def time_backend(name: str, matrices) -> float:
    assignment.use_backend(name)
    start = time.perf_counter()
    for m in matrices:
        assignment.min_assignment_cost(m)
    return time.perf_counter() - start


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", default="4,8,16,32,64")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    backends = assignment.available_backends()
    default = assignment.BACKEND_NAME
    rng = np.random.default_rng(0)

    print(f"backends: {', '.join(backends)} (default: {default})")
    header = f"{'n':>6}" + "".join(f"{b:>14}" for b in backends)
    if "compiled" in backends:
        header += f"{'speedup':>10}"
    print(header)
    for n in sizes:
        matrices = [rng.random((n, n)) for _ in range(args.repeat)]
        row = f"{n:>6}"
        timings = {}
        for backend in backends:
            timings[backend] = time_backend(backend, matrices) / args.repeat
            row += f"{timings[backend] * 1e3:>12.3f}ms"
        if "compiled" in timings:
            row += f"{timings['python'] / timings['compiled']:>9.1f}x"
        print(row)

    # end to end: exact distances between sampled tuples on the unit square
    domain = OpenBox((0.0, 0.0), (1.0, 1.0))
    pairs = []
    for _ in range(200):
        pairs.append(
            (sample_tuple(domain, rng, 6), sample_tuple(domain, rng, 6))
        )
    print(f"\npartial_wasserstein, {len(pairs)} sampled pairs (sizes <= 6):")
    for backend in backends:
        assignment.use_backend(backend)
        start = time.perf_counter()
        for p, q in pairs:
            partial_wasserstein(p, q, 2.0)
        elapsed = time.perf_counter() - start
        print(f"  {backend:>9}: {elapsed * 1e3:8.1f}ms total")
    assignment.use_backend(default)


if __name__ == "__main__":
    main()
