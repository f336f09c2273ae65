"""Diverse minimum cuts (minimality by edge count; weights only enter diversity)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import diversify
from .errors import InfeasibleError, InvalidInputError
from .framework import FEWER_THAN_K, DiverseResult, ExtensionOracle, ExtensionQuery
from .graph import UGraph
from .ground import GroundSet, Solution, SolutionFamily, objective_value, sum_diversity


@dataclass(frozen=True)
class Cut:
    """A cut given by the vertex side ``side`` that excludes vertex 0."""

    side: frozenset[int]
    edges: Solution


@dataclass(frozen=True)
class MinCutList:
    lambda_: int
    cuts: tuple[Cut, ...]

    def edge_sets(self) -> list[Solution]:
        return [c.edges for c in self.cuts]


class _UnitFlow:
    """Augmenting-path max flow on an undirected graph with unit edge capacities."""

    def __init__(self, g: UGraph):
        self.g = g
        self.adj = [[] for _ in range(g.n)]
        for i, (u, v, _) in enumerate(g.edges):
            self.adj[u].append((v, 2 * i))
            self.adj[v].append((u, 2 * i + 1))

    def value(self, sources: set[int], sinks: set[int], limit: int) -> int:
        """Flow value between the vertex sets, capped at ``limit``."""
        res = [1] * (2 * self.g.m)
        flow = 0
        while flow < limit:
            prev: dict[int, tuple[int, int]] = {}
            frontier = list(sources)
            seen = set(sources)
            hit = -1
            while frontier and hit < 0:
                nxt = []
                for u in frontier:
                    for v, a in self.adj[u]:
                        if res[a] and v not in seen:
                            seen.add(v)
                            prev[v] = (u, a)
                            if v in sinks:
                                hit = v
                                break
                            nxt.append(v)
                    if hit >= 0:
                        break
                frontier = nxt
            if hit < 0:
                break
            v = hit
            while v not in sources:
                u, a = prev[v]
                res[a] -= 1
                res[a ^ 1] += 1
                v = u
            flow += 1
        return flow


def _require_cuttable(g: UGraph) -> None:
    if g.n < 2:
        raise InvalidInputError("a cut needs at least two vertices")
    if not g.is_connected():
        raise InvalidInputError("graph is disconnected; every bipartition along components is an empty cut")


def global_min_cut(g: UGraph) -> int:
    """Size (edge count) of a minimum cut of a connected graph."""
    _require_cuttable(g)
    flow = _UnitFlow(g)
    degrees = [0] * g.n
    for u, v, _ in g.edges:
        degrees[u] += 1
        degrees[v] += 1
    best = min(degrees)
    for t in range(1, g.n):
        best = min(best, flow.value({0}, {t}, best))
    return best


def crossing_edges(g: UGraph, side: frozenset[int] | set[int]) -> Solution:
    return Solution(i for i, (u, v, _) in enumerate(g.edges) if (u in side) != (v in side))


def enumerate_min_cuts(g: UGraph) -> MinCutList:
    """All minimum cuts, each once, sorted by crossing edge set.

    Vertices are decided in index order: each is either contracted into
    vertex 0's side or separated onto the other side. A branch is kept only
    if a minimum cut consistent with the decisions so far still exists,
    which is checked exactly with a bounded max flow, so every kept branch
    yields at least one cut.
    """
    lam = global_min_cut(g)
    flow = _UnitFlow(g)
    n = g.n
    found: list[Cut] = []

    def feasible(s_side: set[int], t_side: set[int], nxt: int) -> bool:
        if t_side:
            return flow.value(s_side, t_side, lam + 1) == lam
        return any(flow.value(s_side, {u}, lam + 1) == lam for u in range(nxt, n))

    def rec(s_side: set[int], t_side: set[int], v: int) -> None:
        if v == n:
            side = frozenset(t_side)
            found.append(Cut(side, crossing_edges(g, side)))
            return
        for s2, t2 in ((s_side | {v}, t_side), (s_side, t_side | {v})):
            if feasible(s2, t2, v + 1):
                rec(s2, t2, v + 1)

    rec({0}, set(), 1)
    found.sort(key=lambda c: c.edges.members)
    assert len(found) <= math.comb(n, 2), "more minimum cuts than the n-choose-2 bound"
    assert all(len(c.edges) == lam for c in found)
    return MinCutList(lam, tuple(found))


class MinCutOracle(ExtensionOracle):
    """Weighted extension over the (polynomially many) minimum cuts by scanning them."""

    antichain = True
    concurrent_safe = True

    def __init__(self, g: UGraph, cuts: MinCutList | None = None):
        super().__init__(g.m)
        self.cuts = cuts if cuts is not None else enumerate_min_cuts(g)

    def solve(self, q: ExtensionQuery) -> Solution | None:
        best = None
        best_val = None
        for c in self.cuts.cuts:
            e = c.edges
            if q.forced_in.issubset(e) and e.isdisjoint(q.forced_out):
                val = objective_value(q.objective, e)
                if best is None or val > best_val:
                    best, best_val = e, val
        return best


def solve_diverse_min_cuts(g: UGraph, k: int, epsilon=None, ground: GroundSet | None = None,
                           budget: int = diversify.DEFAULT_BRUTEFORCE_BUDGET, exact: bool = False) -> DiverseResult:
    """k distinct minimum cuts maximising the sum diversity of their edge sets.

    With ``epsilon`` the result is within ``1 - epsilon`` of optimal (exact
    when ``k < 2/epsilon``). Without it, exhaustive search is used if the
    number of k-subsets fits ``budget`` and local search plus greedy otherwise.
    ``exact=True`` always searches exhaustively (ResourceError over budget).
    """
    if k < 2:
        raise InvalidInputError(f"k must be at least 2, got {k}")
    ground = ground if ground is not None else GroundSet(g.weights())
    cuts = enumerate_min_cuts(g)
    points = cuts.edge_sets()
    if len(points) < k:
        raise InfeasibleError(f"{FEWER_THAN_K} ({len(points)} minimum cuts < {k})")
    ps = diversify.ExplicitPointSet(points, ground)
    if exact:
        branch = "exact"
    elif epsilon is not None:
        branch = diversify.ptas_branch(k, epsilon)
    else:
        branch = "exact" if math.comb(len(points), k) <= budget else "local-search"
    iterations = 0
    if branch == "exact":
        sel = diversify.exact_bruteforce(ps, ground, k, budget)
        factor = Fraction(1)
    elif epsilon is not None:
        rep = diversify.local_search(ps, ground, k)
        sel, iterations = rep.selected, rep.iterations_run
        factor = 1 - Fraction(2, k)
    else:
        sel, _, rep = diversify.approx_select(ps, ground, k)
        iterations = rep.iterations_run
        factor = diversify.guarantee(k)
    fam = SolutionFamily(ground.size, [points[i] for i in sel])
    return DiverseResult(fam, sum_diversity(ground, fam), branch, factor, iterations=iterations)
