"""Compare the compiled and pure-Python row-reduction kernels.

Run: python3 benchmarks/bench_rref.py
"""

import time

import numpy as np

from gglab import _purerref

try:
    from gglab import _fastrref
except ImportError:
    _fastrref = None

P = 10007
RNG = np.random.default_rng(7)


def bench(kernel, sizes, reps=5):
    rows = []
    for n in sizes:
        mat = RNG.integers(0, P, size=(n, n), dtype=np.int64)
        best = float("inf")
        for _ in range(reps):
            work = np.ascontiguousarray(mat.copy())
            t0 = time.perf_counter()
            kernel(work, P)
            best = min(best, time.perf_counter() - t0)
        rows.append((n, best))
    return rows


def main():
    sizes = [50, 100, 200, 400]
    pure = dict(bench(_purerref.rref_mod, sizes))
    print(f"{'n':>5}  {'pure (s)':>10}  {'compiled (s)':>12}  {'speedup':>8}")
    if _fastrref is None:
        for n in sizes:
            print(f"{n:>5}  {pure[n]:>10.4f}  {'n/a':>12}  {'n/a':>8}")
        print("compiled kernel not built")
        return
    fast = dict(bench(_fastrref.rref_mod, sizes))
    for n in sizes:
        print(f"{n:>5}  {pure[n]:>10.4f}  {fast[n]:>12.4f}  {pure[n] / fast[n]:>7.1f}x")


if __name__ == "__main__":
    main()
