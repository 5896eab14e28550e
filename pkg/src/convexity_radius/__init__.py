"""Radii of convexity for products-of-powers integral operators.

Series arithmetic and a closed-form function catalog, the operators F and J
with their convexity functional, closed-form radii, and an empirical
verifier that minimizes ``Re(1 + z J''/J')`` over circles.
"""
from .errors import (
    BadParameter,
    ConvexityRadiusError,
    CriticalPoint,
    DivisionByNonUnit,
    EvaluationFailure,
    NoPositiveRoot,
    NotUnit,
    OutsideDisk,
    QuadratureNoConverge,
    ScenarioError,
    UncheckableClass,
    ZeroOfG,
)
from .functions import FunctionHandle, MobiusParams, catalog, from_series, invariance_a2
from .operators import (
    OperatorSeries,
    Scenario,
    build_F,
    build_J,
    convexity_functional,
    eval_operator_quadrature,
    logderiv_f,
    scenario_from_json,
    starlike_term,
)
from .radii import (
    ClassSpec,
    RadiusResult,
    compute_radius,
    lower_bound_profile,
    radius_convex,
    radius_lif,
    radius_mixed,
    radius_mixed_convex,
    radius_mixed_locally_convex,
    radius_ozaki,
    radius_univalent,
    solve_quadratic_positive_root,
)
from .series import (
    PowerSeries,
    series_cpow,
    series_differentiate,
    series_divide,
    series_eval,
    series_exp,
    series_from_json,
    series_integrate_from_zero,
    series_log_unit,
    series_multiply,
    series_to_json,
)
from .verifier import (
    CircleMin,
    VerificationReport,
    VerifierSettings,
    check_class_membership,
    check_lemma_lif,
    claim_for_scenario,
    empirical_convexity_radius,
    estimate_order,
    min_re_on_circle,
    verify_scenario,
)

__version__ = "0.1.0"
