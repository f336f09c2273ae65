import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divsol.errors import ContractViolation, InfeasibleError, InvalidInputError
from divsol.framework import (
    ExtensionOracle,
    ExtensionQuery,
    iter_topk,
    solve_diverse,
    solve_diverse_greedy,
    tiebreak_objective,
    topk_enumerate,
)
from divsol.ground import GroundSet, Solution, objective_value, sum_diversity
from divsol.matching import MatchingInstance, MatchingOracle
from divsol.graph import UGraph


class AllSubsets(ExtensionOracle):
    def solve(self, q):
        return q.forced_in.union(e for e in range(self.size)
                                 if e not in q.forced_out and e not in q.forced_in and q.objective[e] > 0)


class ListOracle(ExtensionOracle):
    """Scans an explicit family; ties go to the first listed."""

    def __init__(self, size, family, antichain=False):
        super().__init__(size)
        self.family = list(family)
        self.antichain = antichain

    def solve(self, q):
        best = None
        for s in self.family:
            if q.forced_in.issubset(s) and s.isdisjoint(q.forced_out):
                if best is None or objective_value(q.objective, s) > objective_value(q.objective, best):
                    best = s
        return best


class Liar(ExtensionOracle):
    def solve(self, q):
        return Solution(range(self.size))


def reference_order(family, objective, n):
    def key(s):
        return (-objective_value(objective, s), [0 if e in s else 1 for e in range(n)])
    return sorted(set(family), key=key)


def test_topk_all_subsets_example():
    o = AllSubsets(3)
    out = list(itertools.islice(iter_topk(o, (3, -1, 2)), 2))
    assert out == [(Solution([0, 2]), 5), (Solution([0, 1, 2]), 4)]


def test_topk_single_call_for_k1():
    o = AllSubsets(3)
    topk_enumerate(o, GroundSet.unit(3), (1, 1, 1), 1)
    assert o.calls == 1


def test_topk_single_solution_family():
    o = ListOracle(3, [Solution([1])])
    assert topk_enumerate(o, GroundSet.unit(3), (0, 0, 0), 5) == [Solution([1])]


def test_tiebreak_objective_preserves_order():
    pert = tiebreak_objective((2, 0, 1), 3)
    assert pert == (2 * 8 + 4, 0 + 2, 8 + 1)


def test_query_validates_contract():
    o = Liar(3)
    with pytest.raises(ContractViolation):
        o.query(ExtensionQuery(Solution(), Solution([1]), (0, 0, 0)))
    with pytest.raises(InvalidInputError):
        ExtensionQuery(Solution([1]), Solution([1]), (0, 0, 0))


families = st.lists(st.lists(st.integers(0, 5), max_size=6).map(Solution), min_size=1, max_size=25)


@settings(max_examples=150, deadline=None)
@given(families, st.lists(st.integers(-4, 4), min_size=6, max_size=6), st.integers(1, 30))
def test_topk_matches_sorted_catalog(fam, obj, k):
    o = ListOracle(6, fam)
    got = topk_enumerate(o, GroundSet.unit(6), obj, k)
    assert got == reference_order(fam, obj, 6)[:k]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sets(st.integers(0, 6), min_size=3, max_size=3), min_size=1, max_size=20),
       st.lists(st.integers(-4, 4), min_size=7, max_size=7), st.integers(1, 25))
def test_topk_antichain_branching(sets, obj, k):
    fam = [Solution(s) for s in sets]
    o = ListOracle(7, fam, antichain=True)
    assert topk_enumerate(o, GroundSet.unit(7), obj, k) == reference_order(fam, obj, 7)[:k]


def two_edges():
    inst = MatchingInstance(UGraph(4, [(0, 1, 1), (2, 3, 1)]), 1)
    return MatchingOracle(inst), GroundSet.unit(2)


def test_solve_diverse_two_disjoint_edges():
    o, g = two_edges()
    res = solve_diverse(o, g, 2)
    assert set(res.solutions) == {Solution([0]), Solution([1])}
    assert res.value == 2
    assert res.oracle_calls == o.calls


def test_greedy_two_disjoint_edges_and_k1():
    o, g = two_edges()
    assert solve_diverse_greedy(o, g, 2).value == 2
    o, g = two_edges()
    res = solve_diverse_greedy(o, g, 1)
    assert res.value == 0 and o.calls == 1


def test_solve_diverse_infeasible():
    o, g = two_edges()
    with pytest.raises(InfeasibleError, match="fewer than k feasible solutions"):
        solve_diverse(o, g, 3)


@settings(max_examples=80, deadline=None)
@given(families, st.lists(st.integers(0, 5), min_size=6, max_size=6), st.integers(2, 5))
def test_solve_diverse_factor_on_explicit_families(fam, ws, k):
    distinct = sorted(set(fam))
    if len(distinct) < k or sum(ws) == 0:
        return
    g = GroundSet(ws)
    opt = max(sum_diversity(g, c) for c in itertools.combinations(distinct, k))
    res = solve_diverse(ListOracle(6, fam), g, k)
    assert len(set(res.solutions)) == k
    assert all(s in distinct for s in res.solutions)
    assert res.value == sum_diversity(g, res.family)
    assert res.value * res.factor.denominator >= res.factor.numerator * opt
    if len(distinct) == k:
        assert res.value == opt


def test_parallel_gives_identical_result():
    fam = [Solution(c) for c in itertools.combinations(range(6), 3)]
    g = GroundSet([1, 2, 3, 4, 5, 6])
    a = solve_diverse(ListOracle(6, fam, antichain=True), g, 6)
    o = ListOracle(6, fam, antichain=True)
    o.concurrent_safe = True
    b = solve_diverse(o, g, 6, parallel=True)
    assert a.solutions == b.solutions and a.value == b.value
