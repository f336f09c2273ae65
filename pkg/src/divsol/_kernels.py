"""Numeric inner loops, each with a numba kernel and a pure-numpy twin.

The numba path is used when numba imports and ``DIVSOL_DISABLE_NUMBA`` is
unset (or ``0``). Both paths return identical results, tie-breaks
included; ``tests/test_kernels.py`` runs them side by side. Inputs with
object dtype (Python ints too large for int64) always take the numpy path.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

try:
    import numba
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


USE_NUMBA = HAS_NUMBA and os.environ.get("DIVSOL_DISABLE_NUMBA", "0") not in ("1", "true", "yes")

NEG = np.iinfo(np.int64).min // 4


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def set_backend(name: str) -> None:
    """Switch kernels between ``"numba"`` and ``"numpy"`` at runtime."""
    global USE_NUMBA
    if name == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba is not installed")
        USE_NUMBA = True
    elif name == "numpy":
        USE_NUMBA = False
    else:
        raise ValueError(f"unknown backend {name!r}")


def _fast(*arrays) -> bool:
    return USE_NUMBA and all(a.dtype != object for a in arrays)


# --- pairwise weighted Hamming distances -----------------------------------

@njit(cache=True)
def _distance_matrix_nb(ind, w):
    p, n = ind.shape
    out = np.zeros((p, p), dtype=np.int64)
    for i in range(p):
        for j in range(i + 1, p):
            acc = 0
            for e in range(n):
                if ind[i, e] != ind[j, e]:
                    acc += w[e]
            out[i, j] = acc
            out[j, i] = acc
    return out


def _distance_matrix_np(ind, w):
    x = ind.astype(w.dtype)
    s = x @ w
    return s[:, None] + s[None, :] - 2 * ((x * w) @ x.T)


def distance_matrix(ind: np.ndarray, w: np.ndarray) -> np.ndarray:
    """``D[i, j] = sum_e w[e] * [ind[i, e] != ind[j, e]]`` for 0/1 rows."""
    if _fast(w):
        return _distance_matrix_nb(ind.astype(np.uint8), w)
    return _distance_matrix_np(ind, w)


# --- best single swap for local search -------------------------------------

@njit(cache=True)
def _best_swap_nb(dist, in_set, rowsum):
    p = dist.shape[0]
    best = 0
    by = -1
    bx = -1
    first = True
    for y in range(p):
        if not in_set[y]:
            continue
        for x in range(p):
            if in_set[x]:
                continue
            g = rowsum[x] - dist[x, y] - rowsum[y]
            if first or g > best:
                best = g
                by = y
                bx = x
                first = False
    return best, by, bx


def _best_swap_np(dist, in_set, rowsum):
    ys = np.flatnonzero(in_set)
    xs = np.flatnonzero(~in_set)
    if len(xs) == 0:
        return 0, -1, -1
    gains = rowsum[xs][None, :] - dist[np.ix_(ys, xs)] - rowsum[ys][:, None]
    flat = int(np.argmax(gains))  # row-major: smallest y, then smallest x
    yi, xi = divmod(flat, len(xs))
    return gains[yi, xi], int(ys[yi]), int(xs[xi])


def best_swap(dist: np.ndarray, in_set: np.ndarray, rowsum: np.ndarray) -> tuple[int, int, int]:
    """Best ``(gain, y, x)`` exchange of a selected ``y`` for an unselected ``x``.

    ``gain`` is the change in the pairwise-distance sum; ties go to the
    smallest ``y`` and then the smallest ``x``. Returns ``(0, -1, -1)`` when
    every point is selected.
    """
    if _fast(dist, rowsum):
        g, y, x = _best_swap_nb(dist, in_set, rowsum)
    else:
        g, y, x = _best_swap_np(dist, in_set, rowsum)
    return int(g), int(y), int(x)


# --- exhaustive best k-subset ----------------------------------------------

@njit(cache=True)
def _best_k_subset_nb(dist, k):
    p = dist.shape[0]
    idx = np.zeros(k, dtype=np.int64)
    partial = np.zeros(k + 1, dtype=np.int64)
    best_idx = np.zeros(k, dtype=np.int64)
    best = -1
    depth = 0
    idx[0] = 0
    while True:
        if idx[depth] > p - (k - depth):
            if depth == 0:
                break
            depth -= 1
            idx[depth] += 1
            continue
        v = partial[depth]
        c = idx[depth]
        for t in range(depth):
            v += dist[idx[t], c]
        if depth == k - 1:
            if v > best:
                best = v
                for t in range(k):
                    best_idx[t] = idx[t]
            idx[depth] += 1
        else:
            partial[depth + 1] = v
            depth += 1
            idx[depth] = idx[depth - 1] + 1
    return best, best_idx


def _best_k_subset_np(dist, k, chunk=65536):
    p = dist.shape[0]
    pairs = list(itertools.combinations(range(k), 2))
    best = None
    best_combo = None
    it = itertools.combinations(range(p), k)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        arr = np.array(block, dtype=np.int64)
        vals = np.zeros(len(arr), dtype=dist.dtype)
        for a, b in pairs:
            vals = vals + dist[arr[:, a], arr[:, b]]
        j = int(np.argmax(vals))  # first maximum: lexicographically smallest tuple
        if best is None or vals[j] > best:
            best = vals[j]
            best_combo = arr[j]
    return best, best_combo


def best_k_subset(dist: np.ndarray, k: int) -> tuple[int, tuple[int, ...]]:
    """Exhaustively maximise the pairwise-distance sum over k-subsets.

    Ties resolve to the lexicographically smallest index tuple.
    """
    if k == 1:
        return 0, (0,)
    if _fast(dist):
        v, combo = _best_k_subset_nb(dist, k)
    else:
        v, combo = _best_k_subset_np(dist, k)
    return int(v), tuple(int(c) for c in combo)


# --- tuple DP over k interval schedulings ----------------------------------

def tuple_dp_layout(n: int, k: int, r: int):
    """Strides of the mixed-radix state index ``(L, R, Gamma)``."""
    npairs = k * (k - 1) // 2
    ngamma = 1 << npairs
    stride_r = np.zeros(k, dtype=np.int64)
    stride_l = np.zeros(k, dtype=np.int64)
    s = ngamma
    for i in range(k - 1, -1, -1):
        stride_r[i] = s
        s *= r + 1
    for i in range(k - 1, -1, -1):
        stride_l[i] = s
        s *= n + 1
    return stride_l, stride_r, ngamma, s


def pair_masks(k: int) -> np.ndarray:
    """``out[C]`` = bitmask of pairs {i, j} with exactly one of i, j in C."""
    bit = {}
    for b, (i, j) in enumerate(itertools.combinations(range(k), 2)):
        bit[i, j] = b
    out = np.zeros(1 << k, dtype=np.int64)
    for c in range(1 << k):
        m = 0
        for (i, j), b in bit.items():
            if ((c >> i) & 1) != ((c >> j) & 1):
                m |= 1 << b
        out[c] = m
    return out


@njit(cache=True)
def _tuple_dp_nb(left, right, w, k, r, stride_l, stride_r, ngamma, nstates, pmask):
    n = left.shape[0] - 1
    neg = np.iinfo(np.int64).min // 4
    dp = np.full(nstates, neg, dtype=np.int64)
    dp[0] = 0
    ell = np.zeros(k, dtype=np.int64)
    rr = np.zeros(k, dtype=np.int64)
    for p in range(1, n + 1):
        for s in range(nstates):
            v = dp[s]
            if v == neg:
                continue
            rem = s
            ok = True
            for i in range(k):
                ell[i] = (rem // stride_l[i]) % (n + 1)
                rr[i] = (rem // stride_r[i]) % (r + 1)
                if ell[i] >= p:
                    ok = False
            if not ok:
                continue
            gam = s % ngamma
            for c in range(1, 1 << k):
                t = s
                cnt = 0
                good = True
                for i in range(k):
                    if (c >> i) & 1:
                        if rr[i] >= r:
                            good = False
                            break
                        if ell[i] > 0 and right[ell[i]] >= left[p]:
                            good = False
                            break
                        t += (p - ell[i]) * stride_l[i] + stride_r[i]
                        cnt += 1
                if not good:
                    continue
                t += (gam | pmask[c]) - gam
                val = v + w[p] * cnt * (k - cnt)
                if val > dp[t]:
                    dp[t] = val
    return dp


def _tuple_dp_np(left, right, w, k, r, stride_l, stride_r, ngamma, nstates, pmask):
    n = left.shape[0] - 1
    dtype = w.dtype
    neg = NEG if dtype != object else None
    states = np.arange(nstates, dtype=np.int64)
    ells = [(states // stride_l[i]) % (n + 1) for i in range(k)]
    rrs = [(states // stride_r[i]) % (r + 1) for i in range(k)]
    gam = states % ngamma
    maxl = np.max(np.stack(ells), axis=0) if k else np.zeros(nstates, dtype=np.int64)
    if dtype == object:
        dp = np.full(nstates, None, dtype=object)
        alive = np.zeros(nstates, dtype=bool)
        alive[0] = True
        dp[0] = 0
    else:
        dp = np.full(nstates, neg, dtype=np.int64)
        dp[0] = 0
    for p in range(1, n + 1):
        src_ok = maxl < p
        src_ok &= alive if dtype == object else dp != neg
        for c in range(1, 1 << k):
            cond = src_ok.copy()
            shift = np.zeros(nstates, dtype=np.int64)
            cnt = 0
            for i in range(k):
                if (c >> i) & 1:
                    cond &= rrs[i] < r
                    cond &= (ells[i] == 0) | (right[ells[i]] < left[p])
                    shift += (p - ells[i]) * stride_l[i] + stride_r[i]
                    cnt += 1
            src = np.flatnonzero(cond)
            if len(src) == 0:
                continue
            tgt = src + shift[src] + ((gam[src] | pmask[c]) - gam[src])
            vals = dp[src] + w[p] * cnt * (k - cnt)
            if dtype == object:
                for t, v in zip(tgt.tolist(), vals.tolist()):
                    if not alive[t] or v > dp[t]:
                        dp[t] = v
                        alive[t] = True
            else:
                np.maximum.at(dp, tgt, vals)
    if dtype == object:
        dp = np.where(alive, dp, None)
    return dp


def tuple_dp(left: np.ndarray, right: np.ndarray, w: np.ndarray, k: int, r: int) -> np.ndarray:
    """Best diversity for every state of k partial schedulings.

    ``left``/``right``/``w`` are 1-based (index 0 unused) over intervals
    sorted by right endpoint. Entry ``dp[s]`` is the best sum of pairwise
    distances among families whose state is ``s``; unreachable states hold
    ``NEG`` (or ``None`` for object weights).
    """
    n = left.shape[0] - 1
    stride_l, stride_r, ngamma, nstates = tuple_dp_layout(n, k, r)
    pmask = pair_masks(k)
    args = (left, right, w, k, r, stride_l, stride_r, ngamma, nstates, pmask)
    if _fast(w, left, right):
        return _tuple_dp_nb(*args)
    return _tuple_dp_np(*args)
