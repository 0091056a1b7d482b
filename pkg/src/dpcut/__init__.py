"""Exact and differentially private minimum cuts on undirected graphs.

The package releases minimum s-t and multiway terminal cuts under edge
weight privacy: Exp-distributed synthetic edges hide any bounded change
to a single weight, random low-order tie-breaking makes the released
partition unique with high probability, and a Monte-Carlo auditor checks
the distinguishing bound empirically.
"""

from .audit import (
    AuditReport,
    lower_bound_error_sweep,
    lower_bound_family,
    privacy_ratio_audit,
    wilson_bounds,
)
from .dpnoise import NoiseSpec, RngStream, sample_exp, sample_exp_block, sample_lap
from .dpstcut import PerturbedGraph, dp_min_st_cut, perturb, unique_min_probability
from .experiment import (
    CSV_FIELDS,
    EPSILON_SWEEP,
    build_instance,
    run_experiment,
    synthetic_standin,
    terminal_cut_baseline,
    write_csv,
)
from .graphcore import (
    CutSolution,
    Graph,
    Scale,
    build_graph,
    connected_components,
    contract,
    crossing_edges,
    cut_weight,
    fx_decimal,
    fx_float,
    fx_from_value,
    fx_value,
    graph_from_json,
    graph_to_json,
    graphs_weight_equal,
    induced_subgraph,
    load_edge_list,
    parse_edge_list,
    random_graph,
    to_edge_list,
)
from .maxflow import brute_force_min_st_cut, min_st_cut_exact
from .multiway import (
    DpMultiwayResult,
    MultiwayCut,
    dp_multiway,
    multiway_batched,
    multiway_brute_force,
    multiway_isolation_baseline,
    multiway_recursive,
    num_levels,
)

__version__ = "0.1.0"
