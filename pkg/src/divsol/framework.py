"""Diverse solutions over an implicit feasible family.

The family is never materialised. Everything goes through an
:class:`ExtensionOracle`, which answers "best feasible solution that
contains ``forced_in``, avoids ``forced_out`` and maximises a signed
weight". Lawler's partition scheme turns that into lazy top-k
enumeration, which in turn drives swap local search and greedy
construction on the weighted Hamming metric.
"""

from __future__ import annotations

import heapq
import itertools
import threading
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .diversify import guarantee, iteration_budget
from .errors import ContractViolation, InfeasibleError, InvalidInputError
from .ground import (
    GroundSet,
    SignedWeights,
    Solution,
    SolutionFamily,
    objective_value,
    reweight,
    sum_diversity,
)

FEWER_THAN_K = "fewer than k feasible solutions"


@dataclass(frozen=True)
class ExtensionQuery:
    forced_in: Solution
    forced_out: Solution
    objective: SignedWeights

    def __post_init__(self):
        if not self.forced_in.isdisjoint(self.forced_out):
            raise InvalidInputError("forced_in and forced_out overlap")


class ExtensionOracle(ABC):
    """Plugin interface for a feasible family over ``range(size)``.

    Subclasses implement :meth:`solve`. It must return a feasible solution
    that contains ``q.forced_in``, avoids ``q.forced_out`` and has maximum
    ``q.objective`` value among all such solutions, or ``None`` when no
    feasible solution satisfies the constraints.

    ``antichain`` declares that no feasible solution strictly contains
    another (true for every fixed-cardinality family). Enumeration then
    branches only on members of each found solution. ``concurrent_safe``
    allows :func:`solve_diverse` to issue queries from several threads.
    """

    antichain: bool = False
    concurrent_safe: bool = False

    def __init__(self, size: int):
        self.size = size
        self.calls = 0
        self._lock = threading.Lock()

    @abstractmethod
    def solve(self, q: ExtensionQuery) -> Solution | None:
        ...

    def query(self, q: ExtensionQuery) -> Solution | None:
        with self._lock:
            self.calls += 1
        sol = self.solve(q)
        if sol is not None:
            if not q.forced_in.issubset(sol) or not sol.isdisjoint(q.forced_out):
                raise ContractViolation(
                    f"oracle returned {sol!r}, which violates forced_in/forced_out"
                )
        return sol


@dataclass(order=True)
class LawlerNode:
    key: tuple
    forced_in: Solution = field(compare=False)
    forced_out: Solution = field(compare=False)
    best: Solution = field(compare=False)
    score: int = field(compare=False)


def tiebreak_objective(objective: Sequence[int], size: int) -> SignedWeights:
    """Scale ``objective`` by ``2**size`` and add a distinct power of two per element.

    Element ``e`` gets ``2**(size-1-e)``. The bonus total is below ``2**size``,
    so the order by original value is kept. Equal-value solutions are ordered
    by the smallest element of their symmetric difference: the set holding it
    wins. For equal-size sets this is lexicographic order of the sorted members.
    """
    return tuple((w << size) + (1 << (size - 1 - e)) for e, w in enumerate(objective))


def _children(node: LawlerNode, size: int, antichain: bool):
    fin, fout, best = node.forced_in, node.forced_out, node.best
    if antichain:
        free = [e for e in best.members if e not in fin]
        for j, e in enumerate(free):
            yield fin.union(free[:j]), fout.union([e])
        return
    agree_in: list[int] = []
    agree_out: list[int] = []
    for e in range(size):
        if e in fin or e in fout:
            continue
        if e in best:
            yield fin.union(agree_in), fout.union(agree_out + [e])
            agree_in.append(e)
        else:
            yield fin.union(agree_in + [e]), fout.union(agree_out)
            agree_out.append(e)


def iter_topk(oracle: ExtensionOracle, objective: Sequence[int]) -> Iterator[tuple[Solution, int]]:
    """Lazily yield ``(solution, objective value)`` in nonincreasing value order.

    Ties follow :func:`tiebreak_objective`. Children of a node are only
    queried when the next solution is requested, so pulling one solution
    costs one oracle call.
    """
    n = oracle.size
    if len(objective) != n:
        raise InvalidInputError(f"objective has length {len(objective)}, expected {n}")
    pert = tiebreak_objective(objective, n)
    order = itertools.count()
    heap: list[LawlerNode] = []

    def push(fin: Solution, fout: Solution) -> None:
        sol = oracle.query(ExtensionQuery(fin, fout, pert))
        if sol is not None:
            heapq.heappush(
                heap,
                LawlerNode((-objective_value(pert, sol), next(order)), fin, fout, sol,
                           objective_value(objective, sol)),
            )

    push(Solution(), Solution())
    while heap:
        node = heapq.heappop(heap)
        yield node.best, node.score
        for fin, fout in _children(node, n, oracle.antichain):
            push(fin, fout)


def topk_enumerate(oracle: ExtensionOracle, g: GroundSet, objective: Sequence[int], k: int) -> list[Solution]:
    """The ``min(k, |X|)`` best feasible solutions under ``objective``."""
    if k < 1:
        raise InvalidInputError(f"k must be positive, got {k}")
    if oracle.size != g.size:
        raise InvalidInputError("oracle and ground set sizes differ")
    return [s for s, _ in itertools.islice(iter_topk(oracle, objective), k)]


@dataclass
class DiverseResult:
    family: SolutionFamily
    value: int
    algorithm: str
    factor: Fraction
    oracle_calls: int = 0
    iterations: int = 0
    improvements: int = 0

    @property
    def solutions(self) -> tuple[Solution, ...]:
        return self.family.solutions


def _best_outside(oracle: ExtensionOracle, objective: SignedWeights, exclude: Sequence[Solution]):
    """Highest-scoring feasible solution not in ``exclude``; at most
    ``len(exclude) + 1`` solutions are pulled from the enumerator."""
    banned = set(exclude)
    for sol, score in iter_topk(oracle, objective):
        if sol not in banned:
            return sol, score
    return None, None


def _initial_family(oracle: ExtensionOracle, g: GroundSet, k: int) -> list[Solution]:
    init = topk_enumerate(oracle, g, (0,) * g.size, k)
    if len(init) < k:
        raise InfeasibleError(f"{FEWER_THAN_K} ({len(init)} < {k})")
    return init


def solve_diverse_greedy(oracle: ExtensionOracle, g: GroundSet, k: int) -> DiverseResult:
    """Greedy construction: seed with one feasible solution, then repeatedly add
    the feasible solution with the largest summed distance to those chosen."""
    if k < 1:
        raise InvalidInputError(f"k must be positive, got {k}")
    if oracle.size != g.size:
        raise InvalidInputError("oracle and ground set sizes differ")
    calls0 = oracle.calls
    seed = topk_enumerate(oracle, g, (0,) * g.size, 1)
    if not seed:
        raise InfeasibleError(f"{FEWER_THAN_K} (0 < {k})")
    fam = SolutionFamily(g.size, seed)
    while len(fam) < k:
        w2, _ = reweight(g, fam)
        sol, _ = _best_outside(oracle, w2, fam.solutions)
        if sol is None:
            raise InfeasibleError(f"{FEWER_THAN_K} ({len(fam)} < {k})")
        fam.append(sol)
    return DiverseResult(fam, sum_diversity(g, fam), "greedy", Fraction(1, 2),
                         oracle_calls=oracle.calls - calls0)


def _swap_candidate(oracle: ExtensionOracle, g: GroundSet, fam: SolutionFamily, i: int):
    rest = fam.without(i)
    w2, _ = reweight(g, rest)
    sol, score = _best_outside(oracle, w2, rest.solutions)
    gain = score - objective_value(w2, fam[i])
    return gain, sol


def solve_diverse(oracle: ExtensionOracle, g: GroundSet, k: int, parallel: bool = False,
                  with_greedy: bool | None = None) -> DiverseResult:
    """Local search over the implicit family, guaranteed factor max(1 - 2/k, 1/2).

    The starting family is the first ``k`` solutions under the all-zero
    objective. Each round considers every member ``Y``: the best feasible
    ``X`` outside the other members is found by maximising the reweighted
    objective, and the best strictly improving exchange over all ``Y`` is
    applied (ties: lowest position of ``Y``). For ``k <= 4`` the greedy
    construction also runs and the better family is returned.
    """
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")
    if oracle.size != g.size:
        raise InvalidInputError("oracle and ground set sizes differ")
    calls0 = oracle.calls
    fam = SolutionFamily(g.size, _initial_family(oracle, g, k))
    value = sum_diversity(g, fam)
    budget = iteration_budget(k)
    pool = ThreadPoolExecutor(max_workers=k) if parallel and oracle.concurrent_safe else None
    iterations = improvements = 0
    try:
        for _ in range(budget):
            iterations += 1
            if pool is not None:
                cands = list(pool.map(lambda i: _swap_candidate(oracle, g, fam, i), range(k)))
            else:
                cands = [_swap_candidate(oracle, g, fam, i) for i in range(k)]
            best_i = max(range(k), key=lambda i: (cands[i][0], -i))
            gain, sol = cands[best_i]
            if gain <= 0:
                break
            fam.replace(best_i, sol)
            new_value = sum_diversity(g, fam)
            assert new_value - value == gain, "reweighted gain disagrees with recomputation"
            assert len(set(fam.solutions)) == k
            value = new_value
            improvements += 1
    finally:
        if pool is not None:
            pool.shutdown()
    assert iterations <= budget
    if with_greedy is None:
        with_greedy = k <= 4
    factor = guarantee(k) if with_greedy else 1 - Fraction(2, k)
    result = DiverseResult(fam, value, "local-search", factor, iterations=iterations,
                           improvements=improvements)
    if with_greedy:
        gres = solve_diverse_greedy(oracle, g, k)
        if gres.value > value:
            result = DiverseResult(gres.family, gres.value, "greedy", guarantee(k),
                                   iterations=iterations, improvements=improvements)
    result.oracle_calls = oracle.calls - calls0
    return result
