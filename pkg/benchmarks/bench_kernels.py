"""Time each kernel under the numba and numpy backends.

    python benchmarks/bench_kernels.py [--repeat 5]

Numba timings exclude the first (compiling) call. Results of the two
backends are compared before timing.
"""

import argparse
import time

import numpy as np

from divsol import _kernels


def cases(rng):
    ind = (rng.random((400, 200)) < 0.3).astype(np.uint8)
    w = rng.integers(0, 1000, 200).astype(np.int64)
    dist = _kernels.distance_matrix(ind, w)
    in_set = np.zeros(400, dtype=bool)
    in_set[rng.choice(400, 20, replace=False)] = True
    rowsum = dist[:, in_set].sum(axis=1)
    small = dist[:28, :28].copy()

    n, k, r = 9, 3, 2
    lefts = np.sort(rng.integers(0, 20, n))
    ivs = sorted(((int(a), int(a + rng.integers(0, 4)), int(rng.integers(1, 9))) for a in lefts),
                 key=lambda t: (t[1], t[0]))
    left = np.array([0] + [a for a, _, _ in ivs], dtype=np.int64)
    right = np.array([0] + [b for _, b, _ in ivs], dtype=np.int64)
    wt = np.array([0] + [c for _, _, c in ivs], dtype=np.int64)
    return {
        "distance_matrix 400x200": (_kernels.distance_matrix, (ind, w)),
        "best_swap 400 pts, k=20": (_kernels.best_swap, (dist, in_set, rowsum)),
        "best_k_subset C(28,4)": (_kernels.best_k_subset, (small, 4)),
        "tuple_dp n=9 k=3 r=2": (_kernels.tuple_dp, (left, right, wt, k, r)),
    }


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    if not _kernels.HAS_NUMBA:
        print("numba is not installed; nothing to compare")
        return
    print(f"{'kernel':<28}{'numba ms':>12}{'numpy ms':>12}{'speedup':>10}")
    for name, (fn, fargs) in cases(rng).items():
        _kernels.set_backend("numba")
        ref = fn(*fargs)  # compile
        t_nb = timed(fn, fargs, args.repeat)
        _kernels.set_backend("numpy")
        out = fn(*fargs)
        t_np = timed(fn, fargs, args.repeat)
        assert same(ref, out), f"{name}: backends disagree"
        print(f"{name:<28}{t_nb * 1e3:>12.2f}{t_np * 1e3:>12.2f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
