"""Planted-subgraph detection laboratory.

Samplers for the union planted-subgraph model, the count/degree/scan tests
and the exact likelihood-ratio oracle, likelihood second moments and
low-degree norms, the vertex-cover/degree balanced decomposition, and
regime-threshold classifiers, with a Monte-Carlo risk harness and CLI.
"""

from .counting import (
    connected_sets_count,
    containment_probability,
    copies_in_complete,
    count_copies,
    spanning_tree_count,
)
from .detectors import (
    DetectorConfig,
    Verdict,
    count_test,
    degree_condition_satisfied,
    degree_condition_value,
    degree_test,
    likelihood_ratio_test,
    scan_test,
    scan_test_over_pattern,
)
from .errors import (
    AlphaOutOfRangeError,
    BudgetExceededError,
    DegenerateQError,
    DisconnectedError,
    DuplicateEdgeError,
    EmptyGraphError,
    FormatError,
    GraphConstructionError,
    InvalidMomentError,
    InvalidSpecError,
    MissingSigmaError,
    PatternTooLargeError,
    PlantedLabError,
    ScanBudgetExceededError,
    SelfLoopError,
    TooFewEdgesError,
    VertexOutOfRangeError,
)
from .graphs import (
    FamilySpec,
    Graph,
    canonical_copy_edges,
    complete_graph,
    format_edge_list,
    from_edge_list,
    is_pattern,
    make_family,
    parse_edge_list,
    read_edge_list,
    unbalanced_stars_degrees,
    unbalanced_stars_profile,
    write_edge_list,
)
from .invariants import (
    GraphStats,
    automorphism_count,
    densest_subgraph,
    densest_vertex_set,
    graph_stats,
    isomorphic,
    matching_cover_bound,
    max_subgraph_density,
    vertex_cover_number,
)
from .moments import (
    IntersectionHistogram,
    LdpConfig,
    MomentParams,
    MomentResult,
    chi_square_bernoulli,
    intersection_distribution,
    ldp_norm_sq,
    risk_lower_bounds,
    second_moment_exact,
    second_moment_mc,
    second_moment_pair_enum,
)
from .regimes import (
    Decomposition,
    DenseConstants,
    PolyFamilyExponents,
    Regime,
    RegimeVerdict,
    balance_ratio_from_counts,
    classify_dense,
    critical_classify,
    g_mu,
    sparse_thresholds,
    superdense_threshold,
    vcd_balance_ratio,
    vcd_decompose,
)
from .risklab import (
    DETECTORS,
    RiskEstimate,
    SweepRow,
    SweepSpec,
    estimate_risk,
    resolve_detector,
    sweep,
    write_csv,
)
from .sampling import (
    EmbeddedCopy,
    ModelParams,
    Observation,
    batched_copy_images,
    sample_null,
    sample_planted,
    sample_uniform_copy,
    stream,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRangeError",
    "BudgetExceededError",
    "DETECTORS",
    "Decomposition",
    "DegenerateQError",
    "DenseConstants",
    "DetectorConfig",
    "DisconnectedError",
    "DuplicateEdgeError",
    "EmbeddedCopy",
    "EmptyGraphError",
    "FamilySpec",
    "FormatError",
    "Graph",
    "GraphConstructionError",
    "GraphStats",
    "IntersectionHistogram",
    "InvalidMomentError",
    "InvalidSpecError",
    "LdpConfig",
    "MissingSigmaError",
    "ModelParams",
    "MomentParams",
    "MomentResult",
    "Observation",
    "PatternTooLargeError",
    "PlantedLabError",
    "PolyFamilyExponents",
    "Regime",
    "RegimeVerdict",
    "RiskEstimate",
    "ScanBudgetExceededError",
    "SelfLoopError",
    "SweepRow",
    "SweepSpec",
    "TooFewEdgesError",
    "Verdict",
    "VertexOutOfRangeError",
    "automorphism_count",
    "balance_ratio_from_counts",
    "batched_copy_images",
    "canonical_copy_edges",
    "chi_square_bernoulli",
    "classify_dense",
    "complete_graph",
    "connected_sets_count",
    "containment_probability",
    "copies_in_complete",
    "count_copies",
    "count_test",
    "critical_classify",
    "degree_condition_satisfied",
    "degree_condition_value",
    "degree_test",
    "densest_subgraph",
    "densest_vertex_set",
    "estimate_risk",
    "format_edge_list",
    "from_edge_list",
    "g_mu",
    "graph_stats",
    "intersection_distribution",
    "is_pattern",
    "isomorphic",
    "ldp_norm_sq",
    "likelihood_ratio_test",
    "make_family",
    "matching_cover_bound",
    "max_subgraph_density",
    "parse_edge_list",
    "read_edge_list",
    "resolve_detector",
    "risk_lower_bounds",
    "sample_null",
    "sample_planted",
    "sample_uniform_copy",
    "scan_test",
    "scan_test_over_pattern",
    "second_moment_exact",
    "second_moment_mc",
    "second_moment_pair_enum",
    "sparse_thresholds",
    "spanning_tree_count",
    "stream",
    "superdense_threshold",
    "sweep",
    "unbalanced_stars_degrees",
    "unbalanced_stars_profile",
    "vcd_balance_ratio",
    "vcd_decompose",
    "vertex_cover_number",
    "write_csv",
    "write_edge_list",
]
