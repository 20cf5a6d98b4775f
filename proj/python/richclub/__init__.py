"""Maximal-entropy rich-club null models, degree-correlation diagnostics and
soft community detection."""

from ._richclub import (
    DomainError,
    Graph,
    InfeasibleConstraints,
    InfeasibleNG,
    LinkProbabilityModel,
    NumericalFailure,
    ParseError,
    Ranking,
    SingularWeights,
    __version__,
    aggregate_deviation,
    communities,
    compute_weights,
    consensus,
    coefficient_of_variation,
    cutoff_degree,
    cv_curve,
    detect_cutoff,
    greedy_search,
    inverse_participation,
    ipr_curve,
    knn_data,
    knn_ensemble,
    knn_ng,
    kplus,
    maxent_model,
    ng_expected_links,
    rank_nodes,
    ranked_degrees,
    rich_club_coefficient,
    rr_randomize,
    uncorrelated_knn,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
