"""Graph-based change-point scan statistics with exact permutation moments."""
from .census import ConfigCensus, census_bruteforce, census_closed_form, graph_functionals
from .closed_forms import example1_closed_form, example2_closed_form
from .graph import Graph, GraphError, build_knn, build_mst
from .moments import MomentSpec, MomentSummary, moment_summary, product_moment, r0_moments
from .permnull import NodeConstraint, event_probability
from .scan import (ScanResult, StatSeries, compute_counts, decomposition_check,
                   permutation_pvalue, scan, statistics_at)
from .tightness import (condition_diagnostics, inequality_suite, kc_moment,
                        zdiff_leading_terms, zw_leading_terms)

__version__ = "0.1.0"

__all__ = [
    "ConfigCensus", "Graph", "GraphError", "MomentSpec", "MomentSummary", "NodeConstraint",
    "ScanResult", "StatSeries", "build_knn", "build_mst", "census_bruteforce",
    "census_closed_form", "compute_counts", "condition_diagnostics", "decomposition_check",
    "event_probability", "example1_closed_form", "example2_closed_form", "graph_functionals",
    "inequality_suite", "kc_moment", "moment_summary", "permutation_pvalue", "product_moment",
    "r0_moments", "scan", "statistics_at", "zdiff_leading_terms", "zw_leading_terms",
    "__version__",
]
