"""Diverse interval schedulings.

Intervals are closed: ``[1, 3]`` and ``[3, 5]`` overlap. Solutions are sets
of original interval indices (input order); internally intervals are
processed sorted by right endpoint, then left endpoint, then index.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .diversify import ptas_branch
from .errors import InfeasibleError, InvalidInputError, ResourceError
from .framework import FEWER_THAN_K, DiverseResult, ExtensionOracle, ExtensionQuery, solve_diverse
from .ground import INT64_MAX, GroundSet, Solution, SolutionFamily, sum_diversity

DEFAULT_STATE_BUDGET = 10**8


def overlaps(a: tuple, b: tuple) -> bool:
    """Closed-interval intersection test on ``(left, right, ...)`` tuples."""
    return max(a[0], b[0]) <= min(a[1], b[1])


class IntervalSet:
    def __init__(self, intervals: Sequence[tuple[int, int, int]], scale_digits: int = 0):
        ivs = []
        for i, (a, b, w) in enumerate(intervals):
            a, b, w = int(a), int(b), int(w)
            if a > b:
                raise InvalidInputError(f"interval {i} has left {a} > right {b}")
            ivs.append((a, b, w))
        self.intervals: tuple[tuple[int, int, int], ...] = tuple(ivs)
        self.scale_digits = scale_digits
        # sorted position -> original index
        self.order: tuple[int, ...] = tuple(
            sorted(range(len(ivs)), key=lambda i: (ivs[i][1], ivs[i][0], i))
        )

    def __len__(self) -> int:
        return len(self.intervals)

    def ground(self) -> GroundSet:
        return GroundSet([w for _, _, w in self.intervals], self.scale_digits)

    def is_scheduling(self, members) -> bool:
        ms = sorted(members, key=lambda i: self.intervals[i][1])
        return all(self.intervals[a][1] < self.intervals[b][0] for a, b in zip(ms, ms[1:]))


def _better(a, b) -> bool:
    """``a`` beats ``b``: larger value, then lexicographically smaller set."""
    if b is None:
        return True
    return a[0] > b[0] or (a[0] == b[0] and a[1] < b[1])


def _r_scheduling(iv: IntervalSet, positions: Sequence[int], objective: Sequence[int], r: int):
    """Best r-scheduling among the intervals at the given original indices.

    ``positions`` must be sorted by right endpoint. Returns ``(value, members)``
    or ``None``.
    """
    if r == 0:
        return 0, ()
    ivs = iv.intervals
    n = len(positions)
    rights = [ivs[i][1] for i in positions]
    # best[q][j]: best q-scheduling using some of the first j intervals
    # whose last interval is among them
    ending: list[list] = [[None] * n for _ in range(r + 1)]
    prefix: list[list] = [[None] * (n + 1) for _ in range(r + 1)]
    for p in range(n):
        orig = positions[p]
        a = ivs[orig][0]
        # predecessors are exactly those with right endpoint strictly below a
        c = _count_below(rights, a, p)
        wp = objective[orig]
        ending[1][p] = (wp, (orig,))
        for q in range(2, r + 1):
            prev = prefix[q - 1][c]
            if prev is not None:
                ending[q][p] = (prev[0] + wp, tuple(sorted(prev[1] + (orig,))))
        for q in range(1, r + 1):
            cur = prefix[q][p]
            e = ending[q][p]
            prefix[q][p + 1] = e if e is not None and _better(e, cur) else cur
    return prefix[r][n]


def _count_below(rights: list[int], a: int, hi: int) -> int:
    lo = 0
    while lo < hi:
        mid = (lo + hi) // 2
        if rights[mid] < a:
            lo = mid + 1
        else:
            hi = mid
    return lo


def max_weight_r_scheduling(iv: IntervalSet, objective: Sequence[int], r: int) -> Solution | None:
    """Maximum-weight set of exactly ``r`` pairwise disjoint intervals.

    Ties resolve to the lexicographically smallest set of original indices.
    Runs in O(n r) after sorting.
    """
    if r < 0:
        raise InvalidInputError(f"r must be nonnegative, got {r}")
    if len(objective) != len(iv):
        raise InvalidInputError("objective length differs from interval count")
    best = _r_scheduling(iv, iv.order, objective, r)
    return None if best is None else Solution(best[1])


def scheduling_extension(iv: IntervalSet, r: int, q: ExtensionQuery) -> Solution | None:
    """Best r-scheduling containing ``q.forced_in`` and avoiding ``q.forced_out``."""
    fin = q.forced_in
    if fin.members and fin.members[-1] >= len(iv) or q.forced_out.members and q.forced_out.members[-1] >= len(iv):
        raise InvalidInputError("query refers to an interval outside the set")
    if len(fin) > r or not iv.is_scheduling(fin.members):
        return None
    ivs = iv.intervals
    keep = [
        i for i in iv.order
        if i not in fin and i not in q.forced_out
        and not any(overlaps(ivs[i], ivs[j]) for j in fin.members)
    ]
    best = _r_scheduling(iv, keep, q.objective, r - len(fin))
    return None if best is None else fin.union(best[1])


class IntervalOracle(ExtensionOracle):
    antichain = True
    concurrent_safe = True

    def __init__(self, iv: IntervalSet, r: int):
        super().__init__(len(iv))
        self.iv = iv
        self.r = r

    def solve(self, q: ExtensionQuery) -> Solution | None:
        return scheduling_extension(self.iv, self.r, q)


def solve_diverse_schedulings(iv: IntervalSet, r: int, k: int, ground: GroundSet | None = None,
                              parallel: bool = False) -> DiverseResult:
    """k distinct r-schedulings via local search (factor max(1 - 2/k, 1/2))."""
    ground = ground if ground is not None else iv.ground()
    return solve_diverse(IntervalOracle(iv, r), ground, k, parallel=parallel)


def state_count(n: int, r: int, k: int) -> int:
    return n * (n + 1) ** k * (r + 1) ** k * 2 ** (k * (k - 1) // 2)


def exact_diverse_schedulings(iv: IntervalSet, r: int, k: int, ground: GroundSet | None = None,
                              budget: int = DEFAULT_STATE_BUDGET) -> DiverseResult:
    """Optimal k distinct r-schedulings by dynamic programming over tuple states.

    A state records, for each of the k schedules, its last interval and its
    size, plus which pairs of schedules already differ. Interval p may be
    added to any subset C of schedules whose last interval ends before p
    starts; it contributes ``w(p) * |C| * (k - |C|)`` to the diversity and
    marks every pair split by C as distinct. Accepting states have all
    sizes equal to r and every pair distinct.
    """
    if k < 1 or r < 0:
        raise InvalidInputError("need k >= 1 and r >= 0")
    ground = ground if ground is not None else iv.ground()
    n = len(iv)
    if state_count(n, r, k) > budget:
        raise ResourceError(f"tuple DP needs {state_count(n, r, k)} state visits, budget is {budget}")
    order = iv.order
    wt = [ground.weights[i] for i in order]
    dtype = np.int64 if sum(wt) * k * k <= INT64_MAX // 4 else object
    left = np.array([0] + [iv.intervals[i][0] for i in order], dtype=np.int64)
    right = np.array([0] + [iv.intervals[i][1] for i in order], dtype=np.int64)
    w = np.array([0] + wt, dtype=dtype)
    dp = _kernels.tuple_dp(left, right, w, k, r)
    stride_l, stride_r, ngamma, _ = _kernels.tuple_dp_layout(n, k, r)
    pmask = _kernels.pair_masks(k)

    def alive(s):
        v = dp[s]
        return v is not None and (dtype == object or v != _kernels.NEG)

    full = ngamma - 1
    tail = int(sum(r * stride_r[i] for i in range(k))) + full
    best_s = None
    for ell in itertools.product(range(n + 1), repeat=k):
        s = tail + sum(ell[i] * int(stride_l[i]) for i in range(k))
        if alive(s) and (best_s is None or dp[s] > dp[best_s]):
            best_s = s
    if best_s is None:
        raise InfeasibleError(f"{FEWER_THAN_K}: no {k} distinct {r}-schedulings exist")

    schedules: list[list[int]] = [[] for _ in range(k)]
    s = best_s
    while s != 0:
        ell = [(s // int(stride_l[i])) % (n + 1) for i in range(k)]
        gam = s % ngamma
        p = max(ell)
        cmask = sum(1 << i for i in range(k) if ell[i] == p)
        cnt = bin(cmask).count("1")
        gain = int(w[p]) * cnt * (k - cnt)
        pm = int(pmask[cmask])
        choices = []
        for i in range(k):
            if cmask >> i & 1:
                choices.append([0] + [q for q in range(1, p) if right[q] < left[p]])
            else:
                choices.append([ell[i]])
        base = s - gam + (gam & ~pm)
        for i in range(k):
            if cmask >> i & 1:
                base -= p * int(stride_l[i]) + int(stride_r[i])
        prev = None
        # the split pairs must be marked; before p each may or may not have been
        assert (gam & pm) == pm, "tuple DP state misses a split pair"
        for lp in itertools.product(*choices):
            t0 = base + sum((lp[i] - (0 if cmask >> i & 1 else ell[i])) * int(stride_l[i])
                            for i in range(k))
            sub = pm
            while True:
                if alive(t0 + sub) and dp[t0 + sub] + gain == dp[s]:
                    prev = t0 + sub
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & pm
            if prev is not None:
                break
        assert prev is not None, "tuple DP backtrack lost its predecessor"
        for i in range(k):
            if cmask >> i & 1:
                schedules[i].append(order[p - 1])
        s = prev
    fam = SolutionFamily(ground.size, [Solution(sch) for sch in schedules])
    value = sum_diversity(ground, fam)
    assert value == int(dp[best_s])
    return DiverseResult(fam, value, "exact", Fraction(1))


def ptas_diverse_schedulings(iv: IntervalSet, r: int, k: int, epsilon, ground: GroundSet | None = None,
                             budget: int = DEFAULT_STATE_BUDGET, parallel: bool = False) -> DiverseResult:
    """Within ``1 - epsilon`` of optimal: exact DP when ``k < 2/epsilon``, else local search."""
    if ptas_branch(k, epsilon) == "exact":
        return exact_diverse_schedulings(iv, r, k, ground, budget)
    return solve_diverse_schedulings(iv, r, k, ground, parallel=parallel)
