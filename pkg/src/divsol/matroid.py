"""Diverse common bases of two matroids given by independence oracles."""

from __future__ import annotations

import random
import threading
from abc import ABC, abstractmethod
from typing import Iterable, Sequence

from .errors import ContractViolation, InvalidInputError
from .framework import DiverseResult, ExtensionOracle, ExtensionQuery, solve_diverse, tiebreak_objective
from .graph import UGraph
from .ground import GroundSet, Solution


class MatroidOracle(ABC):
    """Independence oracle over elements ``0..size-1``.

    Subclasses implement :meth:`_independent`; callers use
    :meth:`is_independent`, which counts queries.
    """

    concurrent_safe = True

    def __init__(self, size: int):
        if size < 0:
            raise InvalidInputError(f"ground size must be nonnegative, got {size}")
        self.size = size
        self.queries = 0
        self._lock = threading.Lock()

    @abstractmethod
    def _independent(self, members: frozenset[int]) -> bool:
        ...

    def is_independent(self, members: Iterable[int]) -> bool:
        with self._lock:
            self.queries += 1
        return self._independent(frozenset(members))


class Uniform(MatroidOracle):
    def __init__(self, size: int, rank: int):
        super().__init__(size)
        if not 0 <= rank <= size:
            raise InvalidInputError(f"uniform rank {rank} outside 0..{size}")
        self.rank = rank

    def _independent(self, members):
        return len(members) <= self.rank

    def __repr__(self):
        return f"Uniform({self.size}, rank={self.rank})"


class Partition(MatroidOracle):
    """Partition matroid. Elements outside every block are loops."""

    def __init__(self, size: int, blocks: Sequence[Sequence[int]], capacities: Sequence[int]):
        super().__init__(size)
        if len(blocks) != len(capacities):
            raise InvalidInputError("partition matroid needs one capacity per block")
        self.block_of: dict[int, int] = {}
        for b, block in enumerate(blocks):
            for e in block:
                if not 0 <= e < size:
                    raise InvalidInputError(f"block element {e} outside 0..{size - 1}")
                if e in self.block_of:
                    raise InvalidInputError(f"element {e} appears in two blocks")
                self.block_of[e] = b
        if any(c < 0 for c in capacities):
            raise InvalidInputError("capacities must be nonnegative")
        self.blocks = [tuple(b) for b in blocks]
        self.capacities = list(capacities)

    def _independent(self, members):
        used = [0] * len(self.capacities)
        for e in members:
            b = self.block_of.get(e)
            if b is None:
                return False
            used[b] += 1
            if used[b] > self.capacities[b]:
                return False
        return True

    def __repr__(self):
        return f"Partition({self.size}, blocks={self.blocks}, capacities={self.capacities})"


class Graphic(MatroidOracle):
    """Cycle matroid of a graph; elements are edge indices."""

    def __init__(self, graph: UGraph):
        super().__init__(graph.m)
        self.graph = graph

    def _independent(self, members):
        parent = list(range(self.graph.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in members:
            if not 0 <= e < self.size:
                return False
            u, v, _ = self.graph.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        return True

    def __repr__(self):
        return f"Graphic({self.graph!r})"


class MinorView(MatroidOracle):
    """``(base \\ deleted) / contracted`` on the same index range.

    Deleted and contracted elements behave as loops of the view.
    """

    def __init__(self, base: MatroidOracle, deleted: Iterable[int] = (), contracted: Iterable[int] = ()):
        super().__init__(base.size)
        self.base = base
        self.deleted = frozenset(deleted)
        self.contracted = frozenset(contracted)
        if self.deleted & self.contracted:
            raise InvalidInputError("deleted and contracted sets overlap")
        if not base.is_independent(self.contracted):
            raise InvalidInputError("contracted set is dependent in the base matroid")
        self.concurrent_safe = base.concurrent_safe

    def _independent(self, members):
        if members & self.deleted or members & self.contracted:
            return False
        return self.base.is_independent(members | self.contracted)


def rank(m: MatroidOracle, within: Iterable[int] | None = None) -> int:
    """Rank of ``within`` (default: the whole ground set), by greedy growth."""
    basis: list[int] = []
    for e in (range(m.size) if within is None else within):
        if m.is_independent(basis + [e]):
            basis.append(e)
    return len(basis)


def spot_check_axioms(m: MatroidOracle, trials: int = 200, seed: int = 0) -> list[str]:
    """Randomised checks of the empty set, downward closure and exchange.

    Returns human-readable problems; an empty list means nothing was found.
    """
    rng = random.Random(seed)
    problems = []
    if not m.is_independent(()):
        problems.append("empty set is not independent")
    n = m.size
    if n == 0:
        return problems

    def random_independent():
        order = list(range(n))
        rng.shuffle(order)
        out = []
        limit = rng.randint(0, n)
        for e in order[:limit]:
            if m.is_independent(out + [e]):
                out.append(e)
        return out

    for _ in range(trials):
        # direct sampling catches independent sets no greedy chain reaches
        probe = [e for e in range(n) if rng.random() < 0.5]
        if probe and m.is_independent(probe):
            for e in probe:
                if not m.is_independent([x for x in probe if x != e]):
                    problems.append(f"{sorted(probe)} is independent but drops to a dependent set")
                    return problems
        a = random_independent()
        if a:
            sub = rng.sample(a, rng.randint(0, len(a)))
            if not m.is_independent(sub):
                problems.append(f"subset {sorted(sub)} of independent {sorted(a)} is dependent")
                break
        b = random_independent()
        small, big = (a, b) if len(a) < len(b) else (b, a)
        if len(small) < len(big):
            if not any(m.is_independent(small + [e]) for e in big if e not in small):
                problems.append(f"exchange fails for {sorted(small)} and {sorted(big)}")
                break
    return problems


def _intersect(m1: MatroidOracle, m2: MatroidOracle, weights: Sequence[int]) -> list[int]:
    """Max-weight common independent set of maximum cardinality.

    Successive shortest augmenting paths in the exchange graph. Element
    lengths are ``-w`` outside the current set and ``+w`` inside; paths are
    compared by (length, number of arcs), which rules out negative cycles.
    """
    n = m1.size
    cur: set[int] = set()
    while True:
        inside = sorted(cur)
        outside = [x for x in range(n) if x not in cur]
        sources = {x for x in outside if m1.is_independent(inside + [x])}
        sinks = {x for x in outside if m2.is_independent(inside + [x])}
        if not sources or not sinks:
            break
        arcs: dict[int, list[int]] = {v: [] for v in range(n)}
        for y in inside:
            minus_y = [e for e in inside if e != y]
            for x in outside:
                if m1.is_independent(minus_y + [x]):
                    arcs[y].append(x)
                if m2.is_independent(minus_y + [x]):
                    arcs[x].append(y)
        length = [(weights[v] if v in cur else -weights[v]) for v in range(n)]
        dist: dict[int, tuple[int, int]] = {x: (length[x], 0) for x in sources}
        pred: dict[int, int] = {}
        for rnd in range(n + 1):
            changed = False
            for u in sorted(dist):
                du = dist[u]
                for v in arcs[u]:
                    cand = (du[0] + length[v], du[1] + 1)
                    if v not in dist or cand < dist[v]:
                        dist[v] = cand
                        pred[v] = u
                        changed = True
            if not changed:
                break
            if rnd == n:
                raise ContractViolation("negative cycle in exchange graph: oracles are not matroids")
        reach = [x for x in sinks if x in dist]
        if not reach:
            break
        end = min(reach, key=lambda x: (dist[x], x))
        path = [end]
        while dist[path[-1]][1] > 0:
            path.append(pred[path[-1]])
        cur.symmetric_difference_update(path)
        members = sorted(cur)
        if not (m1.is_independent(members) and m2.is_independent(members)):
            raise ContractViolation(f"augmented set {members} is dependent: oracles are not matroids")
    return sorted(cur)


def common_base_problem(m1: MatroidOracle, m2: MatroidOracle) -> str | None:
    """Why the two matroids cannot share a base, or ``None`` if they might."""
    if m1.size != m2.size:
        return f"ground sizes differ ({m1.size} vs {m2.size})"
    r1, r2 = rank(m1), rank(m2)
    if r1 != r2:
        return f"ranks differ ({r1} vs {r2})"
    return None


def weighted_common_base(m1: MatroidOracle, m2: MatroidOracle, objective: Sequence[int]) -> Solution | None:
    """Maximum-weight common base, or ``None`` if there is none.

    Equal-weight common bases are resolved toward the lexicographically
    smallest member list.
    """
    if m1.size != m2.size:
        raise InvalidInputError("matroids must share the ground set")
    if len(objective) != m1.size:
        raise InvalidInputError("objective length differs from ground size")
    if not (m1.is_independent(()) and m2.is_independent(())):
        raise ContractViolation("empty set must be independent")
    if m1.size == 0:
        return Solution()
    r1, r2 = rank(m1), rank(m2)
    if r1 != r2:
        return None
    best = _intersect(m1, m2, tiebreak_objective(objective, m1.size))
    if len(best) < r1:
        return None
    return Solution(best)


def common_base_extension(m1: MatroidOracle, m2: MatroidOracle, q: ExtensionQuery,
                          ranks: tuple[int, int] | None = None) -> Solution | None:
    """Best common base containing ``q.forced_in`` and avoiding ``q.forced_out``.

    Solved as a common base of ``(M \\ forced_out) / forced_in`` for both
    matroids; the union with ``forced_in`` must still have full rank in the
    original matroids. ``ranks`` may pass in the precomputed ranks of m1, m2.
    """
    r1, r2 = ranks if ranks is not None else (rank(m1), rank(m2))
    if r1 != r2:
        return None
    fin = q.forced_in.members
    if not (m1.is_independent(fin) and m2.is_independent(fin)):
        return None
    v1 = MinorView(m1, q.forced_out.members, fin)
    v2 = MinorView(m2, q.forced_out.members, fin)
    part = weighted_common_base(v1, v2, q.objective)
    if part is None:
        return None
    out = part.union(fin)
    return out if len(out) == r1 else None


class CommonBaseOracle(ExtensionOracle):
    antichain = True

    def __init__(self, m1: MatroidOracle, m2: MatroidOracle):
        if m1.size != m2.size:
            raise InvalidInputError("matroids must share the ground set")
        super().__init__(m1.size)
        self.m1, self.m2 = m1, m2
        self.concurrent_safe = m1.concurrent_safe and m2.concurrent_safe
        # ranks of the original matroids are fixed; cache them per oracle
        self._r1, self._r2 = rank(m1), rank(m2)

    def solve(self, q: ExtensionQuery) -> Solution | None:
        return common_base_extension(self.m1, self.m2, q, (self._r1, self._r2))

    @property
    def membership_queries(self) -> int:
        return self.m1.queries + self.m2.queries


def solve_diverse_common_bases(m1: MatroidOracle, m2: MatroidOracle, g: GroundSet, k: int,
                               parallel: bool = False) -> DiverseResult:
    """k distinct common bases with large sum diversity."""
    return solve_diverse(CommonBaseOracle(m1, m2), g, k, parallel=parallel)
