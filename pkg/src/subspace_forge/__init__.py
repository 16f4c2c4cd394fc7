"""Toolkit for almost-affinely-disjoint and almost-sparse subspace families.

Builds exact finite-field linear algebra from scratch (GF(p^m), RREF,
canonical subspaces), verifies partial spreads and the exact AAD / AS
parameters of subspace families with witnesses, constructs families
(Reed-Solomon based, code-column based, seeded random), evaluates the
closed-form size bounds, searches for maximal families at tiny
parameters, and demonstrates the batch-code application.
"""

__version__ = "0.1.0"

from .gf import Field, SizeGuardError, field_from_order, make_field
from .matgf import MatrixGF, kernel_basis, rank_of_stack, rref
from .subspace import (
    AffineCoset,
    Subspace,
    coset_canonical_rep,
    enumerate_subspaces,
    gaussian_binomial,
)
from .family import (
    Family,
    VerificationReport,
    build_report,
    check_partial_spread,
    check_relations,
    compute_L_aad,
    compute_L_as,
    coset_hits,
    coset_hits_bruteforce,
    verify_size_bound,
)
from .constructions import (
    BoundsTable,
    RSCodeSpec,
    max_family_size_bound,
    max_family_size_bound_no_spread,
    bounds_table,
    build_code_based_family,
    build_random_family,
    build_rs_family,
    twist_codeword,
    growth_diagnostic,
    power_sum,
    make_rs_code,
    rs_codewords,
    rs_guaranteed_L,
)
from .search import SearchConfig, SearchResult, exhaustive_max_family, greedy_max_family
from .batch import BatchCode, RecoveryPlan, batch_s, verify_batch

__all__ = [
    "Field",
    "SizeGuardError",
    "make_field",
    "field_from_order",
    "MatrixGF",
    "rref",
    "kernel_basis",
    "rank_of_stack",
    "Subspace",
    "AffineCoset",
    "coset_canonical_rep",
    "enumerate_subspaces",
    "gaussian_binomial",
    "Family",
    "VerificationReport",
    "check_partial_spread",
    "coset_hits",
    "coset_hits_bruteforce",
    "compute_L_aad",
    "compute_L_as",
    "check_relations",
    "verify_size_bound",
    "build_report",
    "RSCodeSpec",
    "make_rs_code",
    "rs_codewords",
    "twist_codeword",
    "power_sum",
    "build_rs_family",
    "build_code_based_family",
    "build_random_family",
    "max_family_size_bound",
    "max_family_size_bound_no_spread",
    "rs_guaranteed_L",
    "bounds_table",
    "BoundsTable",
    "growth_diagnostic",
    "SearchConfig",
    "SearchResult",
    "exhaustive_max_family",
    "greedy_max_family",
    "BatchCode",
    "RecoveryPlan",
    "batch_s",
    "verify_batch",
]
