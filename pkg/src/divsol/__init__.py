"""Max-sum diverse solutions: k distinct feasible solutions that are far apart
in weighted Hamming distance, for matchings, matroid common bases, minimum
cuts and interval schedulings."""

from .errors import ContractViolation, DivsolError, InfeasibleError, InvalidInputError, ResourceError
from .framework import (
    DiverseResult,
    ExtensionOracle,
    ExtensionQuery,
    iter_topk,
    solve_diverse,
    solve_diverse_greedy,
    topk_enumerate,
)
from .graph import UGraph
from .ground import (
    GroundSet,
    Solution,
    SolutionFamily,
    hamming_distance,
    reweight,
    sum_diversity,
)
from .interval import (
    IntervalSet,
    exact_diverse_schedulings,
    max_weight_r_scheduling,
    ptas_diverse_schedulings,
    solve_diverse_schedulings,
)
from .matching import MatchingInstance, solve_diverse_matchings
from .matroid import Graphic, MinorView, Partition, Uniform, solve_diverse_common_bases, weighted_common_base
from .mincut import enumerate_min_cuts, global_min_cut, solve_diverse_min_cuts

__version__ = "0.1.0"
