"""Forest-index robustness of weighted graphs and greedy k-edge attacks.

The forest index of a graph sums a spanning-forest-based distance over all
node pairs; it stays finite and strictly monotone under edge deletion even
for disconnected graphs. This package computes it exactly, estimates it at
scale with random projections and an SDD solver, and selects worst-case
edge deletions with exact and nearly-linear greedy attacks plus baselines
and a brute-force oracle.
"""

from .bounds import GuaranteeBounds, compute_bounds, empirical_submodularity_scan
from .centrality import (
    EdgeScoreTable,
    degree_scores,
    edge_betweenness,
    fegc,
    random_attack,
    rank_attack,
    top_k_fegc,
)
from .errors import (
    BudgetExceededError,
    CapacityError,
    DegeneracyError,
    ForestAttackError,
    GraphParseError,
    SolverConvergenceError,
    ValidationError,
)
from .fastgreedy import fast_greedy_attack
from .forest import (
    ForestState,
    all_edge_gains,
    compute_forest_state,
    delete_edge_update,
    forest_distance,
    forest_index,
    single_edge_gain,
)
from .graph import (
    Graph,
    build_laplacian,
    connected_components,
    load_edge_list,
    parse_edge_list,
    serialize_edge_list,
)
from .greedy import AttackResult, AttackStep, evaluate_picks, greedy_attack
from .oracle import naive_forest_index, naive_single_edge_gains, optimum_attack
from .sketch import (
    SketchState,
    SolverConfig,
    approx_gain,
    approx_gains,
    build_sketches,
    sddm_solve,
    sketch_dimension,
    theoretical_deltas,
)

__version__ = "0.1.0"

__all__ = [
    "AttackResult",
    "AttackStep",
    "BudgetExceededError",
    "CapacityError",
    "DegeneracyError",
    "EdgeScoreTable",
    "ForestAttackError",
    "ForestState",
    "Graph",
    "GraphParseError",
    "GuaranteeBounds",
    "SketchState",
    "SolverConfig",
    "SolverConvergenceError",
    "ValidationError",
    "all_edge_gains",
    "approx_gain",
    "approx_gains",
    "build_laplacian",
    "build_sketches",
    "compute_bounds",
    "compute_forest_state",
    "connected_components",
    "degree_scores",
    "delete_edge_update",
    "edge_betweenness",
    "empirical_submodularity_scan",
    "evaluate_picks",
    "fast_greedy_attack",
    "fegc",
    "forest_distance",
    "forest_index",
    "greedy_attack",
    "load_edge_list",
    "naive_forest_index",
    "naive_single_edge_gains",
    "optimum_attack",
    "parse_edge_list",
    "random_attack",
    "rank_attack",
    "sddm_solve",
    "serialize_edge_list",
    "single_edge_gain",
    "sketch_dimension",
    "theoretical_deltas",
    "top_k_fegc",
]
