import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divsol.errors import InvalidInputError
from divsol.ground import (
    GroundSet,
    Solution,
    SolutionFamily,
    format_scaled,
    hamming_distance,
    reweight,
    scale_decimal,
    sum_diversity,
    sum_diversity_pairwise,
)


def test_scale_decimal_round_trip():
    assert scale_decimal("1.5") == 1_500_000
    assert scale_decimal("0.000001") == 1
    assert scale_decimal("-2", 3) == -2000
    assert format_scaled(1_500_000, 6) == "1.5"
    assert format_scaled(2_000_000, 6) == "2"
    assert format_scaled(-1, 6) == "-0.000001"
    assert format_scaled(7, 0) == "7"


@pytest.mark.parametrize("bad", ["1.0000001", "abc", "nan", "inf", str(2**63)])
def test_scale_decimal_rejects(bad):
    with pytest.raises(InvalidInputError):
        scale_decimal(bad)


def test_ground_set_validation():
    with pytest.raises(InvalidInputError):
        GroundSet([])
    with pytest.raises(InvalidInputError):
        GroundSet([1, -1])
    with pytest.raises(InvalidInputError):
        GroundSet([1.5])
    g = GroundSet.from_decimals(["1", "0.25"])
    assert g.weights == (1_000_000, 250_000)
    assert g.scale_digits == 6
    with pytest.raises(InvalidInputError):
        g.check(Solution([2]))


def test_solution_basics():
    a = Solution([3, 1, 1])
    assert a.members == (1, 3)
    assert a == Solution.from_mask(0b1010)
    assert 3 in a and 2 not in a
    assert Solution([0, 5]) < Solution([1])
    assert a.union([2]).members == (1, 2, 3)
    assert Solution([1]).issubset(a)
    assert a.isdisjoint(Solution([0, 2]))


def test_hamming_examples():
    g = GroundSet([1, 2, 3])
    assert hamming_distance(g, Solution([0, 1]), Solution([1, 2])) == 4
    assert hamming_distance(g, Solution(), Solution([0, 1, 2])) == 6
    assert hamming_distance(g, Solution([1]), Solution([1])) == 0


def test_sum_diversity_example():
    g = GroundSet.unit(4)
    fam = [Solution([0, 1]), Solution([2, 3]), Solution([0, 2])]
    assert sum_diversity(g, fam) == 4 + 2 + 2
    with pytest.raises(InvalidInputError):
        sum_diversity(g, [])


def test_family_multiplicity_tracking():
    fam = SolutionFamily(3, [Solution([0]), Solution([0, 1])])
    assert fam.multiplicity == [2, 1, 0]
    old = fam.replace(0, Solution([2]))
    assert old == Solution([0])
    assert fam.multiplicity == [1, 1, 1]
    fam.pop()
    assert fam.multiplicity == [0, 0, 1]
    assert fam.without(0).multiplicity == [0, 0, 0]


subsets = st.lists(st.integers(0, 9), max_size=10).map(Solution)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=10, max_size=10), st.lists(subsets, min_size=1, max_size=6))
def test_multiplicity_formula_matches_pairwise(ws, sols):
    g = GroundSet(ws)
    assert sum_diversity(g, sols) == sum_diversity_pairwise(g, sols)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=10, max_size=10), subsets, subsets, subsets)
def test_triangle_inequality(ws, a, b, c):
    g = GroundSet(ws)
    assert hamming_distance(g, a, c) <= hamming_distance(g, a, b) + hamming_distance(g, b, c)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=6, max_size=6), st.lists(subsets.map(lambda s: Solution(e for e in s if e < 6)), max_size=5))
def test_reweight_identity_all_subsets(ws, partial):
    g = GroundSet(ws)
    w2, const = reweight(g, partial)
    for r in range(7):
        for x in itertools.combinations(range(6), r):
            sx = Solution(x)
            lhs = sum(hamming_distance(g, sx, y) for y in partial)
            assert lhs == sum(w2[e] for e in x) + const
