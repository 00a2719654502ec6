"""Optimal shape parameter selection for (inverse) multiquadric kernels.

The package derives the admissibility constants of the underlying error
bound, evaluates the c-dependent criterion curves in the log domain,
minimizes them over the admissible interval, and validates the machinery
by fitting real interpolants and comparing measured errors against the
full bounds.
"""

from .constants import (
    DerivedConstants,
    LogScalar,
    Mode,
    ProblemSpec,
    cpd_order,
    d0_constant,
    derive_constants,
    gamma_seq,
    multiindex_count,
    rho_delta0,
)
from .criterion import (
    CriterionKind,
    CurveSample,
    Regime,
    kind_for,
    log_h_beta_neg1_multid,
    log_h_beta_neg1_oned,
    log_h_beta_pos,
    log_h_general,
    log_h_unified,
    log_lambda_pow,
    regime_for,
    sample_curve,
    xi_star,
)
from .errors import (
    ConditioningError,
    InputError,
    MqShapeError,
    NumericError,
    PreconditionError,
    SpecError,
)
from .optimizer import (
    OptimalResult,
    case3_start_value,
    critical_point_case1,
    minimize_scalar,
    optimal_c,
)
from .rbf import (
    Interpolant,
    Kernel,
    NodeSet,
    condition_estimate,
    evaluate,
    fit,
    kernel_eval,
    poly_basis,
    uniform_grid,
)
from .verify import (
    BoundReport,
    GaussianBump,
    e_sigma_norm,
    error_bound,
    fill_distance,
    run_bound_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "ConditioningError",
    "CriterionKind",
    "CurveSample",
    "DerivedConstants",
    "GaussianBump",
    "InputError",
    "Interpolant",
    "Kernel",
    "LogScalar",
    "Mode",
    "MqShapeError",
    "NodeSet",
    "NumericError",
    "OptimalResult",
    "PreconditionError",
    "ProblemSpec",
    "Regime",
    "SpecError",
    "case3_start_value",
    "condition_estimate",
    "cpd_order",
    "critical_point_case1",
    "d0_constant",
    "derive_constants",
    "e_sigma_norm",
    "error_bound",
    "evaluate",
    "fill_distance",
    "fit",
    "gamma_seq",
    "kernel_eval",
    "kind_for",
    "log_h_beta_neg1_multid",
    "log_h_beta_neg1_oned",
    "log_h_beta_pos",
    "log_h_general",
    "log_h_unified",
    "log_lambda_pow",
    "minimize_scalar",
    "multiindex_count",
    "optimal_c",
    "poly_basis",
    "regime_for",
    "rho_delta0",
    "run_bound_experiment",
    "sample_curve",
    "uniform_grid",
    "xi_star",
]
