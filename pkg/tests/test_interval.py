from fractions import Fraction

import pytest

from divsol.diversify import guarantee
from divsol.errors import InfeasibleError, InvalidInputError, ResourceError
from divsol.framework import ExtensionQuery
from divsol.ground import Solution
from divsol.interval import (
    IntervalSet,
    exact_diverse_schedulings,
    max_weight_r_scheduling,
    overlaps,
    ptas_diverse_schedulings,
    scheduling_extension,
    solve_diverse_schedulings,
    state_count,
)
from divsol.problems import IntervalProblem
from divsol.refsolvers import enumerate_all, exact_diversity, ranked

from conftest import rand_intervals


def test_overlaps():
    assert overlaps((1, 3), (3, 5))
    assert not overlaps((1, 2), (3, 4))
    assert overlaps((1, 10), (4, 5))


def test_interval_validation():
    with pytest.raises(InvalidInputError):
        IntervalSet([(3, 1, 1)])


def test_r_scheduling_examples():
    iv = IntervalSet([(1, 2, 1), (2, 3, 1), (4, 5, 1)])
    assert max_weight_r_scheduling(iv, (1, 1, 1), 0) == Solution()
    assert max_weight_r_scheduling(iv, (1, 1, 1), 2) == Solution([0, 2])
    two = IntervalSet([(1, 3, 1), (2, 4, 1)])
    assert max_weight_r_scheduling(two, (1, 1), 2) is None


def test_r_scheduling_matches_exhaustive(rng):
    for _ in range(200):
        iv = rand_intervals(rng, rng.randint(1, 12))
        r = rng.randint(0, 4)
        obj = tuple(rng.randint(-4, 6) for _ in range(len(iv)))
        cat = enumerate_all(IntervalProblem(iv, r))
        got = max_weight_r_scheduling(iv, obj, r)
        if not len(cat):
            assert got is None
        else:
            assert got == ranked(cat, obj)[0]


def test_extension_examples():
    iv = IntervalSet([(1, 2, 1), (2, 3, 1), (4, 5, 1)])
    e = Solution()
    assert scheduling_extension(iv, 2, ExtensionQuery(Solution([1, 2]), e, (0, 0, 0))) == Solution([1, 2])
    assert scheduling_extension(iv, 2, ExtensionQuery(Solution([0, 1]), e, (0, 0, 0))) is None
    assert scheduling_extension(iv, 1, ExtensionQuery(e, Solution([0, 1, 2]), (1, 1, 1))) is None


def test_extension_matches_exhaustive(rng):
    for _ in range(150):
        iv = rand_intervals(rng, rng.randint(1, 10))
        n, r = len(iv), rng.randint(1, 3)
        fin = Solution(e for e in range(n) if rng.random() < 0.15)
        fout = Solution(e for e in range(n) if e not in fin and rng.random() < 0.2)
        obj = tuple(rng.randint(-4, 6) for _ in range(n))
        got = scheduling_extension(iv, r, ExtensionQuery(fin, fout, obj))
        ok = [s for s in enumerate_all(IntervalProblem(iv, r)).solutions if fin.issubset(s) and s.isdisjoint(fout)]
        if not ok:
            assert got is None
        else:
            assert got in ok
            assert sum(obj[e] for e in got) == max(sum(obj[e] for e in s) for s in ok)


def columns(k, r):
    """k disjoint columns of r disjoint unit intervals."""
    return IntervalSet([(10 * c + 3 * j, 10 * c + 3 * j + 1, 1) for c in range(k) for j in range(r)])


@pytest.mark.parametrize("k,r", [(2, 1), (3, 2), (4, 2)])
def test_disjoint_columns_reach_bound(k, r):
    iv = columns(k, r)
    res = solve_diverse_schedulings(iv, r, k)
    assert res.value == k * r * (k - 1)


def test_exact_examples():
    iv = IntervalSet([(1, 2, 1), (3, 4, 1)])
    res = exact_diverse_schedulings(iv, 1, 2)
    assert res.value == 2
    assert set(res.solutions) == {Solution([0]), Solution([1])}
    with pytest.raises(InfeasibleError):
        exact_diverse_schedulings(IntervalSet([(1, 2, 1)]), 1, 2)
    with pytest.raises(ResourceError):
        exact_diverse_schedulings(iv, 1, 2, budget=10)
    assert state_count(2, 1, 2) == 2 * 9 * 4 * 2


def test_exact_k1_is_best_single_schedule():
    iv = IntervalSet([(1, 2, 1), (3, 4, 1)])
    res = exact_diverse_schedulings(iv, 1, 1)
    assert res.value == 0 and len(res.solutions) == 1


def test_exact_matches_exhaustive(rng):
    for _ in range(80):
        iv = rand_intervals(rng, rng.randint(1, 7), span=8)
        r, k = rng.randint(0, 3), rng.randint(2, 3)
        cat = enumerate_all(IntervalProblem(iv, r))
        if len(cat) < k:
            with pytest.raises(InfeasibleError):
                exact_diverse_schedulings(iv, r, k)
            continue
        opt, _ = exact_diversity(cat, iv.ground(), k)
        res = exact_diverse_schedulings(iv, r, k)
        assert res.value == opt
        assert len(set(res.solutions)) == k and all(s in cat for s in res.solutions)


def test_local_search_factor(rng):
    for _ in range(40):
        iv = rand_intervals(rng, rng.randint(2, 9))
        r, k = rng.randint(1, 3), rng.randint(2, 5)
        cat = enumerate_all(IntervalProblem(iv, r))
        if len(cat) < k:
            continue
        opt, _ = exact_diversity(cat, iv.ground(), k)
        res = solve_diverse_schedulings(iv, r, k)
        assert res.value >= guarantee(k) * opt


def test_ptas_branches(rng):
    iv = rand_intervals(rng, 7)
    assert ptas_diverse_schedulings(iv, 1, 3, Fraction(1, 2)).algorithm == "exact"
    long = columns(30, 1)
    res = ptas_diverse_schedulings(long, 1, 30, Fraction(1, 10))
    assert res.algorithm in ("local-search", "greedy")
    assert res.factor >= Fraction(9, 10)
