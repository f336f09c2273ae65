import itertools
import math
from fractions import Fraction

import pytest

from divsol.errors import InfeasibleError, InvalidInputError
from divsol.graph import UGraph
from divsol.ground import GroundSet, Solution
from divsol.mincut import enumerate_min_cuts, global_min_cut, solve_diverse_min_cuts
from divsol.problems import MinCutProblem
from divsol.refsolvers import enumerate_all, exact_diversity

from conftest import rand_graph


def cycle(n):
    return UGraph(n, [(i, (i + 1) % n, 1) for i in range(n)])


def path(n):
    return UGraph(n, [(i, i + 1, 1) for i in range(n - 1)])


def complete(n):
    return UGraph(n, [(u, v, 1) for u, v in itertools.combinations(range(n), 2)])


def test_lambda_examples():
    assert global_min_cut(path(5)) == 1
    assert global_min_cut(cycle(6)) == 2
    assert global_min_cut(complete(4)) == 3


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8])
def test_cycle_has_all_pairs(n):
    cuts = enumerate_min_cuts(cycle(n))
    assert cuts.lambda_ == 2
    assert len(cuts.cuts) == math.comb(n, 2)


def test_path_and_barbell():
    assert len(enumerate_min_cuts(path(6)).cuts) == 5
    barbell = UGraph(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (2, 3, 1)])
    cuts = enumerate_min_cuts(barbell)
    assert [c.edges for c in cuts.cuts] == [Solution([6])]


def test_disconnected_rejected():
    with pytest.raises(InvalidInputError):
        global_min_cut(UGraph(4, [(0, 1, 1), (2, 3, 1)]))
    with pytest.raises(InvalidInputError):
        global_min_cut(UGraph(1))


def test_enumeration_matches_bipartitions(rng):
    for _ in range(60):
        g = rand_graph(rng, rng.randint(2, 10), 0.45, connected=True)
        cuts = enumerate_min_cuts(g)
        ref = enumerate_all(MinCutProblem(g))
        assert sorted(c.edges for c in cuts.cuts) == list(ref.solutions)
        assert len(cuts.cuts) <= math.comb(g.n, 2)
        for c in cuts.cuts:
            assert 0 not in c.side


def test_c4_diverse_pair():
    res = solve_diverse_min_cuts(cycle(4), 2)
    assert res.value == 4
    a, b = res.solutions
    assert a.isdisjoint(b)


def test_exactly_k_cuts_returns_all():
    res = solve_diverse_min_cuts(path(4), 3)
    assert set(res.solutions) == {Solution([0]), Solution([1]), Solution([2])}


def test_too_few_cuts():
    with pytest.raises(InfeasibleError):
        solve_diverse_min_cuts(path(3), 3)


def test_ptas_bound(rng):
    for _ in range(30):
        g = rand_graph(rng, rng.randint(3, 9), 0.5, connected=True)
        ground = GroundSet(g.weights())
        cat = enumerate_all(MinCutProblem(g))
        for eps in (Fraction(1, 2), Fraction(1, 5)):
            for k in (2, 3, 5):
                if len(cat) < k:
                    continue
                opt, _ = exact_diversity(cat, ground, k)
                res = solve_diverse_min_cuts(g, k, epsilon=eps, ground=ground)
                assert res.value >= (1 - eps) * opt
                if k * eps < 2:
                    assert res.value == opt and res.algorithm == "exact"
