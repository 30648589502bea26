"""Local search for minimum vertex cover: two-stage exchange with edge
weighting and forgetting, ablation variants, an exact oracle, and a benchmark
harness."""

from .graph import (Graph, VertexSet, DimacsParseError, parse_dimacs,
                    load_dimacs, write_dimacs, dimacs_str, complement,
                    is_vertex_cover, is_independent_set, is_clique,
                    write_solution, solution_str)
from .solver import (SolverConfig, SolverState, RunRecord, StepOutcome,
                     init_state, compute_dscore, reference_scores,
                     greedy_construct, select_remove_vertex, select_add_vertex,
                     remove_from_C, add_to_C, bump_uncovered_weights,
                     forget_weights, step, solve)
from .variants import VariantKind, pair_benefit, select_pair, step_pair, forget_pd
from .oracle import ExactResult, InstanceTooLargeError, exact_mvc, brute_force_mvc
from .stats import RtdSummary, iqr, nearest_rank, fit_exponential_rtd, summarize, exp_cdf
from .bench import run_batch, sweep, throughput, load_targets, target_for
from .kernels import BACKEND

__all__ = [
    "Graph", "VertexSet", "DimacsParseError", "parse_dimacs", "load_dimacs",
    "write_dimacs", "dimacs_str", "complement", "is_vertex_cover",
    "is_independent_set", "is_clique", "write_solution", "solution_str",
    "SolverConfig", "SolverState", "RunRecord", "StepOutcome", "init_state",
    "compute_dscore", "reference_scores", "greedy_construct",
    "select_remove_vertex", "select_add_vertex", "remove_from_C", "add_to_C",
    "bump_uncovered_weights", "forget_weights", "step", "solve",
    "VariantKind", "pair_benefit", "select_pair", "step_pair", "forget_pd",
    "ExactResult", "InstanceTooLargeError", "exact_mvc", "brute_force_mvc",
    "RtdSummary", "iqr", "nearest_rank", "fit_exponential_rtd", "summarize",
    "exp_cdf", "run_batch", "sweep", "throughput", "load_targets",
    "target_for", "BACKEND",
]

__version__ = "0.1.0"
