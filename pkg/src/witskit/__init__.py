"""Toolkit for the discrete Witsenhausen problem.

Exact rational evaluation and optimization of two-stage strategies, greedy
order-4 Sidon set construction, the graph-to-instance reduction with its
coloring oracles, a polynomial-time approximate solver with a proven cost
ratio, and a brute-force exact solver with certified search windows.
"""

from .core import (
    CostBreakdown,
    Instance,
    ProbMass,
    SecondStageMap,
    TransportMap,
    colliding_pairs,
    evaluate_cost,
    has_collision,
    identity_transport,
    make_instance,
    make_prob_mass,
    nearest_int,
    optimal_second_stage,
    reachable_observations,
)
from .approx import ApproxResult, collision_free_transport, cost_ratio_bound, rank_atoms
from .exact import ExactResult
from .errors import (
    BudgetExceeded,
    CostTooHigh,
    DomainMismatch,
    EmptyEdgeSet,
    EmptySupport,
    ImproperColoring,
    InputFormatError,
    NotNormalized,
    TooLarge,
    WitskitError,
)
from .reduction import (
    Coloring,
    Graph,
    ReductionOutput,
    check_chromatic_sandwich,
    chromatic_bruteforce,
    coloring_to_strategy,
    graph_to_instance,
    l2_chromatic_bruteforce,
    strategy_to_coloring,
)
from .sidon import SidonSet, construct_sidon, is_sidon

__version__ = "0.1.0"
