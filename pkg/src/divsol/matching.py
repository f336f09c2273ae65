"""Diverse matchings of a fixed size r."""

from __future__ import annotations

from dataclasses import dataclass

from .blossom import max_weight_perfect_matching
from .errors import InvalidInputError
from .framework import DiverseResult, ExtensionOracle, ExtensionQuery, solve_diverse
from .graph import UGraph
from .ground import GroundSet, Solution


@dataclass(frozen=True)
class MatchingInstance:
    graph: UGraph
    r: int
    k: int = 2

    def __post_init__(self):
        if not 1 <= self.r <= self.graph.n // 2:
            raise InvalidInputError(f"r must lie in 1..{self.graph.n // 2}, got {self.r}")

    def ground(self, scale_digits: int = 0) -> GroundSet:
        return GroundSet(self.graph.weights(), scale_digits)


def is_matching(g: UGraph, edges) -> bool:
    seen = set()
    for i in edges:
        u, v, _ = g.edges[i]
        if u in seen or v in seen:
            return False
        seen.add(u)
        seen.add(v)
    return True


def matching_extension(inst: MatchingInstance, q: ExtensionQuery) -> Solution | None:
    """Best size-r matching containing ``q.forced_in`` and avoiding ``q.forced_out``.

    Reduces to a perfect matching problem: drop the forced-out edges and
    every endpoint of a forced-in edge, then add ``|V'| - 2r'`` dummy
    vertices joined to every remaining vertex by zero-weight edges.
    """
    g = inst.graph
    fin = q.forced_in
    if fin.members and fin.members[-1] >= g.m or q.forced_out.members and q.forced_out.members[-1] >= g.m:
        raise InvalidInputError("query refers to an edge outside the graph")
    if len(fin) > inst.r or not is_matching(g, fin):
        return None
    rr = inst.r - len(fin)
    if rr == 0:
        return fin
    covered = set()
    for i in fin:
        u, v, _ = g.edges[i]
        covered.add(u)
        covered.add(v)
    keep = [v for v in range(g.n) if v not in covered]
    ndummy = len(keep) - 2 * rr
    if ndummy < 0:
        return None
    relabel = {v: j for j, v in enumerate(keep)}
    h_edges = []
    origin = []
    for i, (u, v, _) in enumerate(g.edges):
        if i in q.forced_out or u in covered or v in covered:
            continue
        h_edges.append((relabel[u], relabel[v], q.objective[i]))
        origin.append(i)
    nreal = len(keep)
    for d in range(ndummy):
        for j in range(nreal):
            h_edges.append((j, nreal + d, 0))
    h = UGraph(nreal + ndummy, h_edges)
    pm = max_weight_perfect_matching(h)
    if pm is None:
        return None
    return fin.union(origin[i] for i in pm if i < len(origin))


class MatchingOracle(ExtensionOracle):
    antichain = True
    concurrent_safe = True

    def __init__(self, inst: MatchingInstance):
        super().__init__(inst.graph.m)
        self.inst = inst

    def solve(self, q: ExtensionQuery) -> Solution | None:
        return matching_extension(self.inst, q)


def solve_diverse_matchings(inst: MatchingInstance, g: GroundSet | None = None,
                            parallel: bool = False) -> DiverseResult:
    """k distinct size-r matchings with large sum diversity (edge weights as ``w``)."""
    ground = g if g is not None else inst.ground()
    return solve_diverse(MatchingOracle(inst), ground, inst.k, parallel=parallel)
