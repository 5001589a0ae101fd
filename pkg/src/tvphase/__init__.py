"""Phase-transition prediction and validation for 1-D total-variation minimization.

The library computes the predicted phase-transition curve of equality-constrained
TV minimization (via the mean-square Gaussian distance to the scaled subdifferential
of the TV semi-norm), certifies the weak-decomposability structure that makes the
prediction exact, and validates the prediction with recovery experiments over the
(epsilon, delta) phase plane.
"""

__version__ = "0.1.0"

from tvphase.diffop import (
    DifferenceOperator,
    apply_adjoint_difference,
    apply_forward_difference,
    gram_inverse_entry,
    h_inverse_entry,
    solve_restricted_gram,
    tv_seminorm,
)
from tvphase.pattern import (
    GradientPattern,
    SubgradientCertificate,
    construct_v0,
    extract_pattern,
    interpolate_v0,
    random_pattern,
    verify_weak_decomposability,
)
from tvphase.geometry import (
    CurvePoint,
    DimensionEstimate,
    DistanceResult,
    SandwichReport,
    dist_sq_cone,
    dist_sq_scaled_subdiff,
    estimate_cone_dim,
    estimate_expected_dist,
    minimize_expected_dist,
    predicted_curve,
    sandwich_check,
)
from tvphase.solver import SolveOptions, SolveReport, recovery_success, solve_tv_equality
from tvphase.experiments import (
    ComparisonRow,
    EmpiricalCell,
    TransitionEstimate,
    compare_report,
    empirical_transition,
    random_gaussian_matrix,
    random_sparse_gradient_signal,
    run_cell,
)

__all__ = [
    "__version__",
    "DifferenceOperator",
    "apply_forward_difference",
    "apply_adjoint_difference",
    "tv_seminorm",
    "gram_inverse_entry",
    "h_inverse_entry",
    "solve_restricted_gram",
    "GradientPattern",
    "SubgradientCertificate",
    "extract_pattern",
    "random_pattern",
    "construct_v0",
    "interpolate_v0",
    "verify_weak_decomposability",
    "DistanceResult",
    "DimensionEstimate",
    "CurvePoint",
    "SandwichReport",
    "dist_sq_scaled_subdiff",
    "dist_sq_cone",
    "estimate_expected_dist",
    "minimize_expected_dist",
    "estimate_cone_dim",
    "predicted_curve",
    "sandwich_check",
    "SolveOptions",
    "SolveReport",
    "solve_tv_equality",
    "recovery_success",
    "EmpiricalCell",
    "TransitionEstimate",
    "ComparisonRow",
    "random_sparse_gradient_signal",
    "random_gaussian_matrix",
    "run_cell",
    "empirical_transition",
    "compare_report",
]
