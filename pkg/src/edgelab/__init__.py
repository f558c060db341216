"""edgelab: construction and classification of bi-qutrit PPT entangled edge states.

The package builds the parameterized state families, classifies them by the
pair (rank, rank of the partial transpose), checks the rank bounds admissible
for edge states, and verifies the edge property both analytically (for the
phase-parameterized family) and by a multistart product-vector search.
"""

from .classify import (
    Admissibility,
    CertificateTrace,
    Classification,
    EdgeCertificate,
    RangeCriterionCheck,
    check_range_criterion,
    choi_ppt_region,
    classify,
    rank_bounds,
    reconstruct_separable,
    verify_edge_analytic,
)
from .errors import (
    ConditionViolatedError,
    DimensionMismatchError,
    EdgeLabError,
    GramNotPSDError,
    InvalidParamError,
    NotHermitianError,
    NotPSDError,
    OffdiagTooLargeError,
)
from .linalg import (
    BipartiteOperator,
    Subspace,
    gram_realization,
    hadamard,
    hermitian_eig,
    is_psd,
    kernel_basis,
    numerical_rank,
    partial_transpose,
    proj,
    projector,
    range_basis,
    tensor,
    trace_normalized,
)
from .search import EdgeSearchResult, SearchVerdict, product_vector_search
from .states import (
    GramSpec,
    choi_matrix,
    corner_state,
    cyclic_map_apply,
    edge_condition_holds,
    edge_state,
    face_state,
    generalized_edge_state,
    min_psd_diagonal,
    offdiag_gram,
    phase_circulant,
    product_vector,
    separable_decomposition,
    singular_gram_offdiags,
)

__version__ = "0.1.0"

__all__ = [
    "Admissibility",
    "BipartiteOperator",
    "CertificateTrace",
    "Classification",
    "ConditionViolatedError",
    "DimensionMismatchError",
    "EdgeCertificate",
    "EdgeLabError",
    "EdgeSearchResult",
    "GramNotPSDError",
    "GramSpec",
    "InvalidParamError",
    "NotHermitianError",
    "NotPSDError",
    "OffdiagTooLargeError",
    "RangeCriterionCheck",
    "SearchVerdict",
    "Subspace",
    "check_range_criterion",
    "choi_matrix",
    "choi_ppt_region",
    "classify",
    "corner_state",
    "cyclic_map_apply",
    "edge_condition_holds",
    "edge_state",
    "face_state",
    "generalized_edge_state",
    "gram_realization",
    "hadamard",
    "hermitian_eig",
    "is_psd",
    "kernel_basis",
    "min_psd_diagonal",
    "numerical_rank",
    "offdiag_gram",
    "partial_transpose",
    "phase_circulant",
    "product_vector",
    "product_vector_search",
    "proj",
    "projector",
    "range_basis",
    "rank_bounds",
    "reconstruct_separable",
    "separable_decomposition",
    "singular_gram_offdiags",
    "tensor",
    "trace_normalized",
    "verify_edge_analytic",
]
