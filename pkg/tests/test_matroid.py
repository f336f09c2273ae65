import pytest

from divsol.diversify import guarantee
from divsol.errors import InfeasibleError, InvalidInputError
from divsol.framework import ExtensionQuery, solve_diverse
from divsol.graph import UGraph
from divsol.ground import GroundSet, Solution
from divsol.matroid import (
    CommonBaseOracle,
    Graphic,
    MatroidOracle,
    MinorView,
    Partition,
    Uniform,
    common_base_extension,
    rank,
    solve_diverse_common_bases,
    spot_check_axioms,
    weighted_common_base,
)
from divsol.problems import MatroidProblem
from divsol.refsolvers import enumerate_all, exact_diversity, ranked

from conftest import rand_matroid

TRIANGLE = UGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])


def test_oracle_kinds():
    assert Uniform(3, 2).is_independent([0, 2])
    assert not Uniform(3, 2).is_independent([0, 1, 2])
    p = Partition(4, [[0, 1], [2]], [1, 1])
    assert p.is_independent([0, 2]) and not p.is_independent([0, 1])
    assert not p.is_independent([3])  # uncovered elements are loops
    g = Graphic(TRIANGLE)
    assert g.is_independent([0, 1]) and not g.is_independent([0, 1, 2])
    assert rank(g) == 2 and rank(p) == 2


def test_oracle_validation():
    with pytest.raises(InvalidInputError):
        Uniform(3, 4)
    with pytest.raises(InvalidInputError):
        Partition(3, [[0], [0]], [1, 1])
    with pytest.raises(InvalidInputError):
        MinorView(Uniform(3, 1), contracted=[0, 1])


def test_minor_view():
    v = MinorView(Graphic(TRIANGLE), deleted=[2], contracted=[0])
    assert v.is_independent([1])
    assert not v.is_independent([2]) and not v.is_independent([0])
    assert rank(v) == 1


def test_spot_checks_accept_matroids_and_flag_nonmatroid():
    for m in (Uniform(5, 2), Partition(5, [[0, 1], [2, 3, 4]], [1, 2]), Graphic(TRIANGLE)):
        assert spot_check_axioms(m) == []

    class NotMatroid(MatroidOracle):
        def _independent(self, members):
            return members in (frozenset(), frozenset({0, 1}), frozenset({2}))

    assert spot_check_axioms(NotMatroid(3))


def test_weighted_common_base_examples():
    assert weighted_common_base(Uniform(3, 2), Uniform(3, 2), (5, 1, 3)) == Solution([0, 2])
    part = Partition(3, [[0, 1], [2]], [1, 1])
    assert weighted_common_base(part, Uniform(3, 2), (1, 1, 1)) == Solution([0, 2])
    singles = Partition(3, [[0], [1], [2]], [1, 1, 1])
    # spanning trees have 2 edges, the free matroid's base has 3: no common base
    assert weighted_common_base(Graphic(TRIANGLE), singles, (1, 1, 1)) is None
    assert len(weighted_common_base(Graphic(TRIANGLE), Uniform(3, 2), (1, 1, 1))) == 2


def test_rank_mismatch_has_no_common_base():
    assert weighted_common_base(Uniform(3, 1), Uniform(3, 2), (1, 1, 1)) is None


def test_weighted_common_base_matches_exhaustive(rng):
    for _ in range(150):
        n = rng.randint(1, 8)
        m1, m2 = rand_matroid(rng, n), rand_matroid(rng, n)
        obj = tuple(rng.randint(-5, 5) for _ in range(n))
        cat = enumerate_all(MatroidProblem(m1, m2))
        got = weighted_common_base(m1, m2, obj)
        if not len(cat):
            assert got is None
        else:
            assert got == ranked(cat, obj)[0]


def test_extension_examples():
    u = Uniform(3, 2)
    base = Solution([0, 1])
    assert common_base_extension(u, u, ExtensionQuery(base, Solution(), (0, 0, 0))) == base
    part = Partition(3, [[0, 1], [2]], [1, 1])
    # every common base uses element 2
    assert common_base_extension(part, u, ExtensionQuery(Solution(), Solution([2]), (1, 1, 1))) is None


def test_extension_matches_exhaustive(rng):
    for _ in range(120):
        n = rng.randint(1, 8)
        m1, m2 = rand_matroid(rng, n), rand_matroid(rng, n)
        fin = Solution(e for e in range(n) if rng.random() < 0.2)
        fout = Solution(e for e in range(n) if e not in fin and rng.random() < 0.2)
        obj = tuple(rng.randint(-5, 5) for _ in range(n))
        got = common_base_extension(m1, m2, ExtensionQuery(fin, fout, obj))
        ok = [s for s in enumerate_all(MatroidProblem(m1, m2)).solutions if fin.issubset(s) and s.isdisjoint(fout)]
        if not ok:
            assert got is None
        else:
            assert got in ok
            assert sum(obj[e] for e in got) == max(sum(obj[e] for e in s) for s in ok)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_singletons_reach_bound(k):
    u = Uniform(k, 1)
    res = solve_diverse_common_bases(u, u, GroundSet.unit(k), k)
    assert res.value == k * (k - 1)


def test_single_common_base_infeasible():
    p = Partition(2, [[0], [1]], [1, 1])
    with pytest.raises(InfeasibleError):
        solve_diverse_common_bases(p, p, GroundSet.unit(2), 2)


def test_factor_and_query_counts(rng):
    for _ in range(30):
        n = rng.randint(2, 8)
        m1, m2 = rand_matroid(rng, n), rand_matroid(rng, n)
        k = rng.randint(2, 4)
        cat = enumerate_all(MatroidProblem(m1, m2))
        if len(cat) < k:
            continue
        g = GroundSet([rng.randint(1, 5) for _ in range(n)])
        opt, _ = exact_diversity(cat, g, k)
        oracle = CommonBaseOracle(m1, m2)
        res = solve_diverse(oracle, g, k)
        assert res.value >= guarantee(k) * opt
        assert all(s in cat for s in res.solutions)
        # polynomial query bound: extension calls per swap round are O(k^2)
        assert oracle.calls <= 4 * k * k * (res.iterations + 1) + k * k + 2 * k
        assert oracle.membership_queries > 0
