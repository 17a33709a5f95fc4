"""Solow-Polasky diversity of finite metric spaces.

Evaluate the diversity of point subsets through the exponential-kernel
similarity matrix, maximize it at fixed cardinality (exhaustively or
greedily), and cross-check the equivalence between that optimization and
the independent-set problem on two-distance graph encodings.

The inner solve runs on a compiled kernel when available and on a NumPy
fallback otherwise; see :func:`spdiv.backend.backend_name`.
"""

from .backend import backend_name
from .core import (
    DominanceCertificate,
    SimilarityMatrix,
    WeightVector,
    dominance_certificate,
    similarity_matrix,
    sp_one_edge_closed_form,
    sp_two_point,
    sp_uniform,
    sp_value,
)
from .metric import (
    FiniteMetric,
    Graph,
    ReductionInstance,
    encode_graph,
    load_graph,
    load_metric_csv,
    parse_graph,
    serialize_graph,
    validate_metric,
)
from .reduction import (
    EquivalenceOutcome,
    SuiteSummary,
    brute_force_is,
    is_independent,
    random_equivalence_suite,
    solve_is_via_sp,
)
from .selection import DecisionResult, SelectionResult, decide, exact_select, greedy_add, greedy_drop
from .verify import (
    DeformationReport,
    deformation_scan,
    derivative_identity_check,
    invertibility_criterion,
    neumann_partial_sums,
    positivity_bound_check,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "DominanceCertificate",
    "SimilarityMatrix",
    "WeightVector",
    "dominance_certificate",
    "similarity_matrix",
    "sp_one_edge_closed_form",
    "sp_two_point",
    "sp_uniform",
    "sp_value",
    "FiniteMetric",
    "Graph",
    "ReductionInstance",
    "encode_graph",
    "load_graph",
    "load_metric_csv",
    "parse_graph",
    "serialize_graph",
    "validate_metric",
    "EquivalenceOutcome",
    "SuiteSummary",
    "brute_force_is",
    "is_independent",
    "random_equivalence_suite",
    "solve_is_via_sp",
    "DecisionResult",
    "SelectionResult",
    "decide",
    "exact_select",
    "greedy_add",
    "greedy_drop",
    "DeformationReport",
    "deformation_scan",
    "derivative_identity_check",
    "invertibility_criterion",
    "neumann_partial_sums",
    "positivity_bound_check",
]
