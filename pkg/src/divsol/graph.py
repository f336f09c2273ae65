"""Simple undirected graphs with integer edge weights."""

from __future__ import annotations

from typing import Iterable

from .errors import InvalidInputError


class UGraph:
    """Undirected simple graph on vertices ``0..n-1``.

    Edges are indexed in input order; ``edges[i] = (u, v, weight)``. Weights
    are signed integers.
    """

    __slots__ = ("n", "edges", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]] = ()):
        if n < 0:
            raise InvalidInputError(f"vertex count must be nonnegative, got {n}")
        self.n = n
        es = []
        index = {}
        for i, (u, v, w) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge {i} ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise InvalidInputError(f"edge {i} is a self-loop at {u}")
            key = (min(u, v), max(u, v))
            if key in index:
                raise InvalidInputError(f"edge {i} duplicates edge {index[key]} ({u}, {v})")
            index[key] = i
            es.append((u, v, int(w)))
        self.edges: tuple[tuple[int, int, int], ...] = tuple(es)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int | None:
        return self._index.get((min(u, v), max(u, v)))

    def weights(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """``adj[u]`` lists ``(neighbour, edge index)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    def __repr__(self) -> str:
        return f"UGraph(n={self.n}, m={self.m})"
