"""Perception-weighted network strength: metrics, weight fitting and exact dismantling."""

from ._core import (
    ConstraintViolation,
    EmptyGraphError,
    Graph,
    InstanceTooLarge,
    InvalidArgument,
    NetstrengthError,
    ParseError,
    WeightRangeError,
    assignment_for_removal,
    best_removal,
    ccsd,
    cole1,
    cole2,
    component_sizes,
    default_weights,
    design_matrix,
    emit_ilp,
    fit_weights,
    generate,
    gfp_score,
    ilp_arrays,
    load_edge_list,
    match_stats,
    parse_edge_list,
    remove_nodes,
    rmse,
    save_edge_list,
    sigma,
    verify_ilp_solution,
)

__all__ = [name for name in dir() if not name.startswith("_")]
