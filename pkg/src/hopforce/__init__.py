"""Hopping forcing on random d-regular graphs.

A blue vertex whose whole neighbourhood is blue and which has not yet
forced may colour one white vertex at distance exactly two blue; the
hopping number of a graph is the least number of initially blue vertices
from which some hop sequence colours everything. This package provides the
game engine, an exact small-graph solver, random-graph samplers, the two
constructive strategies, spectral and entropy-based bound computations, and
the mean-field ODE system of the degree-greedy process.
"""

from .bounds import (BoundReport, EntropyPoint, bound_report, config_fraction,
                     eml_fraction, friedman_lambda, upper_fraction,
                     upper_fraction_integral)
from .desolver import OdeSolution, beta_tau, drift, mixture_rhs, solve
from .engine import (Hop, HopIllegal, HopState, VertexStatus, active_set,
                     apply_hop, count_replay_failures, legal_moves,
                     replay_trace, run_policy, status, trace_from_json,
                     trace_to_json)
from .exact import (ExactSolver, InstanceTooLarge, feasible_trace, hopping_number,
                    is_feasible, optimal_set, partition_witness)
from .experiments import (ConfigError, ExperimentConfig, TrialStats,
                          figure_data, run_experiment, run_trials, table1_report)
from .graph import (RegularGraph, complete_graph, cycle_graph, is_regular,
                    neighbors, path_graph, read_edge_list, second_neighborhood,
                    write_edge_list)
from .models import (ContiguousGraph, LazyPairing, Pairing, count_cycles_2regular,
                     expected_cycles, pairing_to_graph, sample_contiguous,
                     sample_pairing, sample_simple_regular, trial_rng)
from .spectral import SpectrumSummary, edges_between, lambda_of, mixing_residual
from .strategies import (GreedyTrajectory, StrategyResult,
                         degree_greedy_strategy, hamilton_hop_strategy)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "EntropyPoint", "bound_report", "config_fraction",
    "eml_fraction", "friedman_lambda", "upper_fraction",
    "upper_fraction_integral",
    "OdeSolution", "beta_tau", "drift", "mixture_rhs", "solve",
    "Hop", "HopIllegal", "HopState", "VertexStatus", "active_set",
    "apply_hop", "count_replay_failures", "legal_moves", "replay_trace",
    "run_policy", "status", "trace_from_json", "trace_to_json",
    "ExactSolver", "InstanceTooLarge", "feasible_trace", "hopping_number",
    "is_feasible", "optimal_set", "partition_witness",
    "ConfigError", "ExperimentConfig", "TrialStats", "figure_data",
    "run_experiment", "run_trials", "table1_report",
    "RegularGraph", "complete_graph", "cycle_graph", "is_regular",
    "neighbors", "path_graph", "read_edge_list", "second_neighborhood",
    "write_edge_list",
    "ContiguousGraph", "LazyPairing", "Pairing", "count_cycles_2regular",
    "expected_cycles", "pairing_to_graph", "sample_contiguous",
    "sample_pairing", "sample_simple_regular", "trial_rng",
    "SpectrumSummary", "edges_between", "lambda_of", "mixing_residual",
    "GreedyTrajectory", "StrategyResult", "degree_greedy_strategy",
    "hamilton_hop_strategy",
]
