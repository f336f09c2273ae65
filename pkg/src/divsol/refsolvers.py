"""Brute-force reference solvers.

Everything here is written from the problem definitions and deliberately
avoids the optimised solvers and their helpers: feasibility is checked
subset by subset, and diversity is summed pair by pair.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InfeasibleError, InvalidInputError, ResourceError
from .ground import GroundSet, Solution
from .problems import IntervalProblem, MatchingProblem, MatroidProblem, MinCutProblem, ProblemInstance

DEFAULT_ENUM_BUDGET = 2**20
DEFAULT_DIVERSITY_BUDGET = 10**7


@dataclass(frozen=True)
class ExhaustiveCatalog:
    size: int
    solutions: tuple[Solution, ...]

    def __len__(self) -> int:
        return len(self.solutions)

    def __contains__(self, sol: Solution) -> bool:
        return sol in set(self.solutions)


def _guard(count: int, budget: int, what: str) -> None:
    if count > budget:
        raise ResourceError(f"{what}: {count} candidates exceed the budget of {budget}")


def _matchings(p: MatchingProblem, budget: int) -> list[tuple[int, ...]]:
    edges = p.graph.edges
    _guard(math.comb(len(edges), p.r), budget, "matching enumeration")
    out = []
    for combo in itertools.combinations(range(len(edges)), p.r):
        ends = [x for i in combo for x in edges[i][:2]]
        if len(ends) == len(set(ends)):
            out.append(combo)
    return out


def _common_bases(p: MatroidProblem, budget: int) -> list[tuple[int, ...]]:
    n = p.m1.size
    if p.m2.size != n:
        raise InvalidInputError("matroids must share the ground set")
    _guard(2**n, budget, "common base enumeration")
    subsets = [c for size in range(n + 1) for c in itertools.combinations(range(n), size)]
    ind1 = {c for c in subsets if p.m1.is_independent(c)}
    ind2 = {c for c in subsets if p.m2.is_independent(c)}
    r1 = max(len(c) for c in ind1)
    r2 = max(len(c) for c in ind2)
    if r1 != r2:
        return []
    return [c for c in ind1 & ind2 if len(c) == r1]


def _min_cuts(p: MinCutProblem, budget: int) -> list[tuple[int, ...]]:
    n = p.graph.n
    if n < 2:
        raise InvalidInputError("a cut needs at least two vertices")
    _guard(2 ** (n - 1), budget, "bipartition enumeration")
    cuts = set()
    best = None
    # vertex 0 stays on the left; the right side is any nonempty subset of the rest
    for bits in range(1, 2 ** (n - 1)):
        right = {v for v in range(1, n) if bits >> (v - 1) & 1}
        crossing = tuple(i for i, (u, v, _) in enumerate(p.graph.edges) if (u in right) != (v in right))
        if best is None or len(crossing) < best:
            best = len(crossing)
            cuts = {crossing}
        elif len(crossing) == best:
            cuts.add(crossing)
    return list(cuts)


def _schedulings(p: IntervalProblem, budget: int) -> list[tuple[int, ...]]:
    ivs = p.intervals.intervals
    _guard(math.comb(len(ivs), p.r), budget, "scheduling enumeration")
    out = []
    for combo in itertools.combinations(range(len(ivs)), p.r):
        if all(max(ivs[a][0], ivs[b][0]) > min(ivs[a][1], ivs[b][1])
               for a, b in itertools.combinations(combo, 2)):
            out.append(combo)
    return out


def enumerate_all(inst: ProblemInstance, budget: int = DEFAULT_ENUM_BUDGET) -> ExhaustiveCatalog:
    """Every feasible solution of ``inst``, sorted lexicographically."""
    if isinstance(inst, MatchingProblem):
        found = _matchings(inst, budget)
    elif isinstance(inst, MatroidProblem):
        found = _common_bases(inst, budget)
    elif isinstance(inst, MinCutProblem):
        found = _min_cuts(inst, budget)
    elif isinstance(inst, IntervalProblem):
        found = _schedulings(inst, budget)
    else:
        raise InvalidInputError(f"unknown problem instance {type(inst).__name__}")
    sols = sorted(Solution(c) for c in set(found))
    return ExhaustiveCatalog(inst.size, tuple(sols))


def ranked(catalog: ExhaustiveCatalog, objective: Sequence[int]) -> list[Solution]:
    """Catalog sorted by decreasing objective.

    Ties: compare indicator vectors from element 0 upward; the solution
    containing the first differing element comes first.
    """
    def key(s: Solution):
        members = set(s.members)
        return (-sum(objective[e] for e in members), [0 if e in members else 1 for e in range(catalog.size)])
    return sorted(catalog.solutions, key=key)


def _distance(weights: Sequence[int], a: Solution, b: Solution) -> int:
    return sum(weights[e] for e in set(a.members) ^ set(b.members))


def exact_diversity(catalog: ExhaustiveCatalog, g: GroundSet, k: int,
                    budget: int = DEFAULT_DIVERSITY_BUDGET) -> tuple[int, tuple[Solution, ...]]:
    """Optimal sum diversity over all k-subsets of the catalog, with a witness.

    Among optimal k-subsets the first in combination order is returned.
    """
    if k < 1:
        raise InvalidInputError(f"k must be positive, got {k}")
    sols = catalog.solutions
    if len(sols) < k:
        raise InfeasibleError(f"fewer than k feasible solutions ({len(sols)} < {k})")
    _guard(math.comb(len(sols), k), budget, "diversity search")
    w = g.weights
    n = len(sols)
    dist = [[_distance(w, sols[i], sols[j]) for j in range(n)] for i in range(n)]
    best_val, best = -1, None
    for combo in itertools.combinations(range(n), k):
        val = sum(dist[i][j] for i, j in itertools.combinations(combo, 2))
        if val > best_val:
            best_val, best = val, combo
    return best_val, tuple(sols[i] for i in best)
