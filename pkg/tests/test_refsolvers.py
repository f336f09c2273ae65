import itertools

import pytest

from divsol import diversify
from divsol.errors import InfeasibleError, ResourceError
from divsol.graph import UGraph
from divsol.ground import GroundSet, Solution, sum_diversity
from divsol.interval import IntervalSet
from divsol.matroid import Uniform
from divsol.problems import IntervalProblem, MatchingProblem, MatroidProblem, MinCutProblem
from divsol.refsolvers import ExhaustiveCatalog, enumerate_all, exact_diversity, ranked

TRIANGLE = UGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def test_catalog_examples():
    assert len(enumerate_all(MatchingProblem(TRIANGLE, 1))) == 3
    assert len(enumerate_all(MatroidProblem(Uniform(3, 2), Uniform(3, 2)))) == 3
    p3 = enumerate_all(MinCutProblem(UGraph(3, [(0, 1, 1), (1, 2, 1)])))
    assert p3.solutions == (Solution([0]), Solution([1]))
    iv = IntervalSet([(0, 1, 1), (2, 3, 1), (1, 2, 1)])
    assert enumerate_all(IntervalProblem(iv, 2)).solutions == (Solution([0, 1]),)


def test_catalog_sorted_and_unique(rng):
    for _ in range(20):
        n = rng.randint(2, 7)
        g = UGraph(n, [(u, v, 1) for u, v in itertools.combinations(range(n), 2) if rng.random() < 0.6])
        cat = enumerate_all(MatchingProblem(g, 1))
        assert list(cat.solutions) == sorted(set(cat.solutions))


def test_budgets():
    big = UGraph(16, [(i, i + 1, 1) for i in range(15)])
    with pytest.raises(ResourceError):
        enumerate_all(MinCutProblem(big), budget=2**14)
    cat = ExhaustiveCatalog(4, tuple(Solution([i]) for i in range(4)))
    with pytest.raises(ResourceError):
        exact_diversity(cat, GroundSet.unit(4), 2, budget=3)
    with pytest.raises(InfeasibleError):
        exact_diversity(cat, GroundSet.unit(4), 5)


def test_exact_diversity_examples():
    cat = ExhaustiveCatalog(3, (Solution([0]), Solution([0, 1]), Solution([1, 2])))
    g = GroundSet([1, 2, 3])
    val, wit = exact_diversity(cat, g, 3)
    assert val == sum_diversity(g, cat.solutions)
    val, wit = exact_diversity(cat, g, 2)
    assert val == 6 and wit == (Solution([0]), Solution([1, 2]))


def test_agrees_with_diversify_bruteforce(rng):
    for _ in range(30):
        pts = sorted({Solution(e for e in range(6) if rng.random() < 0.5) for _ in range(8)})
        g = GroundSet([rng.randint(0, 5) for _ in range(6)])
        k = rng.randint(1, min(4, len(pts)))
        val, _ = exact_diversity(ExhaustiveCatalog(6, tuple(pts)), g, k)
        sel = diversify.exact_bruteforce(pts, g, k)
        assert val == diversify.ExplicitPointSet(pts, g).value(sel)


def test_ranked_tie_break():
    cat = ExhaustiveCatalog(3, (Solution([0]), Solution([0, 1, 2]), Solution([0, 2])))
    assert ranked(cat, (3, -1, 2)) == [Solution([0, 2]), Solution([0, 1, 2]), Solution([0])]
