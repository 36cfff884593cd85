"""Time each hot kernel under the compiled and pure-Python backends.

    python3 perf/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

import numpy as np

from fdo import kernels


def workloads(rng):
    n = 500
    weights = rng.uniform(1, 60, n)
    perm = rng.permutation(n)
    a, b = rng.permutation(n), rng.permutation(n)
    swaps = np.array([[i, (i * 7) % n] for i in range(n)], dtype=np.int64)
    ranks = rng.integers(2, 49, 24)
    pts = rng.random((256, 4))
    return {
        "first_fit": lambda k: k.first_fit(weights, perm, 100.0),
        "perm_diff": lambda k: k.perm_diff(a, b),
        "apply_swaps": lambda k: k.apply_swaps(perm, swaps),
        "subset_sum_counts": lambda k: k.subset_sum_counts(ranks, 12),
        "star_discrepancy_grid": lambda k: k.star_discrepancy_grid(pts, 16),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = {"python": kernels.load_backend("python")}
    try:
        backends["cython"] = kernels.load_backend("cython")
    except ImportError:
        print("compiled backend not built; timing python only")
    jobs = workloads(np.random.default_rng(0))
    print(f"{'kernel':<24}" + "".join(f"{name:>14}" for name in backends) + f"{'speedup':>10}")
    for name, job in jobs.items():
        times = {}
        for bname, mod in backends.items():
            number = 3
            times[bname] = min(timeit.repeat(lambda: job(mod), number=number, repeat=args.repeat)) / number
        row = f"{name:<24}" + "".join(f"{times[b] * 1e3:>12.3f}ms" for b in backends)
        if "cython" in times:
            row += f"{times['python'] / times['cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
