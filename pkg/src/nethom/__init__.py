"""nethom: network homophily quantification under the random coloring null model.

Given a simple undirected graph and a labeling of its vertices into classes,
the library treats the observed vector of within-class ("homophilic") edge
counts as a draw from the uniform distribution over all labelings with the
same class sizes. Exact closed-form moments of that distribution, its
rank-one-structured covariance matrix, and one-sided tail inequalities
combine into a family of homophily indices on a universal [-1, 1] scale,
validated against an exact enumeration oracle on small instances.
"""

__version__ = "0.1.0"

from .colorings import (
    Coloring,
    ColoringError,
    DuplicateVertexError,
    MissingVertexError,
    ObservedOutcome,
    Profile,
    UnknownVertexError,
    falling_factorial,
    homophilic_counts,
    load_coloring,
    random_coloring,
)
from .graphs import (
    DuplicateEdgeError,
    EdgeListError,
    Graph,
    GraphSummary,
    MalformedLineError,
    SelfLoopError,
    dispersion_margin,
    gamma_from_degree_moments,
    gamma_invariant,
    load_edge_list,
    summarize,
)
from .indices import (
    IndexReport,
    UndefinedQuantityError,
    WeightVector,
    ZScores,
    build_index_report,
    descriptive_ratio,
    index_a,
    index_h,
    index_j_theta,
    index_r,
    newman_modularity,
    weight_preset,
    z_scores,
)
from .moments import (
    CovarianceStructure,
    MomentSummary,
    covariance_exact,
    covariance_structure,
    expected_counts,
    marginal_variances,
    moment_summary,
)
from .oracle import (
    EnumerationLimitError,
    ExactDistribution,
    TailEstimate,
    TreeGammaReport,
    enumerate_colorings,
    exact_moments,
    exact_tail,
    matching_graph,
    matching_tail,
    matching_tail_log,
    matching_tail_table,
    mc_tail,
    tree_gamma_scan,
)

__all__ = [
    "__version__",
    "Graph",
    "GraphSummary",
    "EdgeListError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "MalformedLineError",
    "load_edge_list",
    "summarize",
    "gamma_invariant",
    "gamma_from_degree_moments",
    "dispersion_margin",
    "Profile",
    "Coloring",
    "ObservedOutcome",
    "ColoringError",
    "MissingVertexError",
    "UnknownVertexError",
    "DuplicateVertexError",
    "falling_factorial",
    "load_coloring",
    "homophilic_counts",
    "random_coloring",
    "MomentSummary",
    "CovarianceStructure",
    "expected_counts",
    "marginal_variances",
    "moment_summary",
    "covariance_exact",
    "covariance_structure",
    "ZScores",
    "WeightVector",
    "IndexReport",
    "UndefinedQuantityError",
    "z_scores",
    "index_a",
    "index_r",
    "index_h",
    "index_j_theta",
    "weight_preset",
    "newman_modularity",
    "descriptive_ratio",
    "build_index_report",
    "ExactDistribution",
    "TailEstimate",
    "TreeGammaReport",
    "EnumerationLimitError",
    "enumerate_colorings",
    "exact_moments",
    "exact_tail",
    "mc_tail",
    "matching_graph",
    "matching_tail",
    "matching_tail_log",
    "matching_tail_table",
    "tree_gamma_scan",
]
