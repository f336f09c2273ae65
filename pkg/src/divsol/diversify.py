"""Max-sum diversification over an explicit list of solutions.

All routines work on the weighted Hamming metric between the listed
solutions: swap-based local search with a fixed iteration budget, the
greedy farthest-addition heuristic, exhaustive search, and the
brute-force-or-local-search scheme keyed on ``epsilon``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .errors import InfeasibleError, InvalidInputError, ResourceError
from .ground import INT64_MAX, GroundSet, Solution

DEFAULT_BRUTEFORCE_BUDGET = 10**7


class ExplicitPointSet:
    """Pairwise-distinct solutions over one ground set, with their distance matrix."""

    def __init__(self, points: Sequence[Solution], ground: GroundSet):
        pts = list(points)
        if not pts:
            raise InvalidInputError("point set must be nonempty")
        if len(set(pts)) != len(pts):
            raise InvalidInputError("points must be pairwise distinct")
        for p in pts:
            ground.check(p)
        self.points = pts
        self.ground = ground
        self._dist = None

    def __len__(self) -> int:
        return len(self.points)

    @property
    def dist(self) -> np.ndarray:
        if self._dist is None:
            ind = np.zeros((len(self.points), self.ground.size), dtype=np.uint8)
            for i, p in enumerate(self.points):
                ind[i, list(p.members)] = 1
            w = self.ground.array()
            # row sums of D can reach k * total weight; keep int64 only with headroom
            if w.dtype != object and self.ground.total_weight * len(self.points) > INT64_MAX:
                w = w.astype(object)
            self._dist = _kernels.distance_matrix(ind, w)
        return self._dist

    def value(self, indices: Sequence[int]) -> int:
        d = self.dist
        idx = list(indices)
        return int(sum(d[idx[i], idx[j]] for i in range(len(idx)) for j in range(i + 1, len(idx))))


def _point_set(points, g: GroundSet) -> ExplicitPointSet:
    if isinstance(points, ExplicitPointSet):
        return points
    return ExplicitPointSet(points, g)


def _check_k(ps: ExplicitPointSet, k: int, minimum: int = 1) -> None:
    if k < minimum:
        raise InvalidInputError(f"k must be at least {minimum}, got {k}")
    if len(ps) < k:
        raise InfeasibleError(f"fewer than k feasible solutions ({len(ps)} < {k})")


def iteration_budget(k: int) -> int:
    """Number of swap rounds the local search is allowed for family size ``k``."""
    if k < 2:
        raise InvalidInputError(f"iteration budget needs k >= 2, got {k}")
    return math.ceil(k * (k - 1) / (k + 1) * math.log((k + 2) * (k - 1) ** 2 / 4))


def guarantee(k: int) -> Fraction:
    """Approximation factor of local search combined with greedy: max(1 - 2/k, 1/2)."""
    return max(1 - Fraction(2, k), Fraction(1, 2))


@dataclass
class LocalSearchReport:
    iterations_run: int
    improvements_made: int
    final_value: int
    selected: list[int]
    budget: int
    trace: list[int] = field(default_factory=list)


def local_search(points, g: GroundSet, k: int, init: Sequence[int] | None = None) -> LocalSearchReport:
    """Best-improvement swap local search.

    Starts from the first ``k`` points (or ``init``). Each round applies the
    single exchange with the largest strict gain, ties going to the smallest
    removed index and then the smallest inserted index; a round with no
    improving exchange ends the search.
    """
    ps = _point_set(points, g)
    _check_k(ps, k, minimum=2)
    budget = iteration_budget(k)
    sel = list(init) if init is not None else list(range(k))
    if len(set(sel)) != k:
        raise InvalidInputError("initial selection must hold k distinct indices")
    dist = ps.dist
    in_set = np.zeros(len(ps), dtype=bool)
    in_set[sel] = True
    rowsum = dist[:, sel].sum(axis=1)
    value = ps.value(sel)
    trace = [value]
    iterations = improvements = 0
    for _ in range(budget):
        iterations += 1
        gain, y, x = _kernels.best_swap(dist, in_set, rowsum)
        if y < 0 or gain <= 0:
            break
        in_set[y] = False
        in_set[x] = True
        rowsum = rowsum + dist[:, x] - dist[:, y]
        value += gain
        improvements += 1
        trace.append(value)
    assert iterations <= budget
    selected = [int(i) for i in np.flatnonzero(in_set)]
    return LocalSearchReport(iterations, improvements, value, selected, budget, trace)


def greedy(points, g: GroundSet, k: int, start: int = 0) -> list[int]:
    """Start from ``start`` and repeatedly add the point farthest (in summed
    distance) from those already chosen; ties go to the smallest index."""
    ps = _point_set(points, g)
    _check_k(ps, k)
    dist = ps.dist
    chosen = [start]
    taken = np.zeros(len(ps), dtype=bool)
    taken[start] = True
    score = dist[start].copy()
    while len(chosen) < k:
        cand = np.flatnonzero(~taken)
        j = int(cand[int(np.argmax(score[cand]))])
        chosen.append(j)
        taken[j] = True
        score = score + dist[j]
    return sorted(chosen)


def exact_bruteforce(points, g: GroundSet, k: int, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> list[int]:
    """Optimal k-subset by enumeration; ties go to the lexicographically smallest tuple."""
    ps = _point_set(points, g)
    _check_k(ps, k)
    if math.comb(len(ps), k) > budget:
        raise ResourceError(f"C({len(ps)}, {k}) combinations exceed the budget of {budget}")
    _, combo = _kernels.best_k_subset(ps.dist, k)
    return list(combo)


def approx_select(points, g: GroundSet, k: int) -> tuple[list[int], int, LocalSearchReport]:
    """Local search, plus greedy when ``k <= 4``; the better family wins.

    Guarantees a factor of ``max(1 - 2/k, 1/2)``. Equal values keep the
    local-search answer.
    """
    ps = _point_set(points, g)
    rep = local_search(ps, g, k)
    best, value = rep.selected, rep.final_value
    if k <= 4:
        gsel = greedy(ps, g, k)
        gval = ps.value(gsel)
        if gval > value:
            best, value = gsel, gval
    return best, value, rep


def _epsilon(epsilon) -> Fraction:
    eps = Fraction(str(epsilon)) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise InvalidInputError(f"epsilon must lie in (0, 1), got {epsilon}")
    return eps


def ptas_branch(k: int, epsilon) -> str:
    """``"exact"`` when ``k < 2/epsilon``, else ``"local-search"``."""
    return "exact" if k * _epsilon(epsilon) < 2 else "local-search"


def ptas_select(points, g: GroundSet, k: int, epsilon, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> list[int]:
    """A k-subset within factor ``1 - epsilon`` of optimal.

    Small ``k`` is solved exactly; otherwise ``k >= 2/epsilon`` and the local
    search factor ``1 - 2/k`` already reaches ``1 - epsilon``.
    """
    ps = _point_set(points, g)
    if ptas_branch(k, epsilon) == "exact":
        return exact_bruteforce(ps, g, k, budget)
    return local_search(ps, g, k).selected
