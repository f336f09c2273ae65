"""Problem instances for the four backends, as one tagged union."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import UGraph
from .interval import IntervalSet
from .matroid import MatroidOracle

PROBLEM_KINDS = ("matching", "matroid", "mincut", "interval")


@dataclass(frozen=True)
class MatchingProblem:
    graph: UGraph
    r: int
    kind = "matching"

    @property
    def size(self) -> int:
        return self.graph.m


@dataclass(frozen=True)
class MatroidProblem:
    m1: MatroidOracle
    m2: MatroidOracle
    kind = "matroid"

    @property
    def size(self) -> int:
        return self.m1.size


@dataclass(frozen=True)
class MinCutProblem:
    graph: UGraph
    kind = "mincut"

    @property
    def size(self) -> int:
        return self.graph.m


@dataclass(frozen=True)
class IntervalProblem:
    intervals: IntervalSet
    r: int
    kind = "interval"

    @property
    def size(self) -> int:
        return len(self.intervals)


ProblemInstance = Union[MatchingProblem, MatroidProblem, MinCutProblem, IntervalProblem]
