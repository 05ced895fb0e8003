"""Compare the compiled kernels with the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

import numpy as np

from weakeff import _backend, _kernels_py

try:
    from weakeff import _kernels as compiled
except ImportError:
    compiled = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"active backend: {_backend.BACKEND}")
    if compiled is None:
        print("compiled extension not built; only the fallback is timed")
    print(f"{'kernel':<16}{'n':>7}{'m':>4}{'numpy s':>12}{'cython s':>12}{'speedup':>10}")
    cases = [("dominance", n, m) for n, m in ((500, 2), (2000, 3), (4000, 3), (2000, 6))]
    cases += [("fdh_member", n, m) for n, m in ((5000, 2), (10000, 3))]
    for kind, n, m in cases:
        if kind == "dominance":
            # integer grid keeps plenty of ties, like the acceptance corpus
            P = np.ascontiguousarray(rng.integers(0, 50, size=(n, m)).astype(np.float64))
            py = lambda: _kernels_py.dominance_masks(P)  # noqa: E731
            cy = (lambda: compiled.dominance_masks(P)) if compiled else None  # noqa: E731
        else:
            F = np.ascontiguousarray(rng.standard_normal((n, m)))
            Q = np.ascontiguousarray(rng.standard_normal((2000, m)) + 1.0)
            py = lambda: _kernels_py.fdh_member(F, Q, 1e-6)  # noqa: E731
            cy = (lambda: compiled.fdh_member(F, Q, 1e-6)) if compiled else None  # noqa: E731
        t_py = best_of(py, args.repeat)
        if cy is None:
            print(f"{kind:<16}{n:>7}{m:>4}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        t_cy = best_of(cy, args.repeat)
        print(f"{kind:<16}{n:>7}{m:>4}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>9.1f}x")


if __name__ == "__main__":
    main()
