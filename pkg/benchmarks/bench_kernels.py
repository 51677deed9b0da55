"""Time the numba and numpy implementations of the hot kernels.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import time

import numpy as np

from bvlcone import _kernels
from bvlcone.oracle import enumerate_cycles
from bvlcone.tsp_scaling import GraphFamily


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
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])
    rng = np.random.default_rng(0)

    print("kernel,size,backend,seconds")
    for size in (28, 66, 120, 231):
        a = rng.standard_normal((size, size))
        a = a + a.T
        for b in backends:
            _kernels.eigh(a, backend=b)  # warm up / compile
            t = best_of(lambda: _kernels.eigh(a, backend=b), args.repeat)
            print(f"eigh,{size},{b},{t:.6f}")

    cs = enumerate_cycles(GraphFamily.complete(10))
    queries = rng.integers(0, 2**45, size=2000, dtype=np.uint64) & rng.integers(0, 2**45, size=2000, dtype=np.uint64)
    queries &= rng.integers(0, 2**45, size=2000, dtype=np.uint64)
    for b in backends:
        _kernels.count_supersets(cs.masks, queries[:2], backend=b)
        t = best_of(lambda: _kernels.count_supersets(cs.masks, queries, backend=b), args.repeat)
        print(f"count_supersets,{len(cs.masks)}x{len(queries)},{b},{t:.6f}")


if __name__ == "__main__":
    main()
