"""Generators of one-parameter semigroups in the unit disk with prescribed
boundary fixed points: representation formulas, spectral value regions,
extreme points, numerical semiflows, and time-dependent spectral
experiments."""

from .errors import (
    AtomAtPoint,
    BoundaryEscape,
    DegenerateConfig,
    DiskflowError,
    DivisionByZero,
    DomainError,
    ExtrapolationDivergence,
    NormalizationError,
    QuadratureFailure,
    RootFindingFailure,
    StepFailure,
    TargetMismatch,
    WeightError,
)
from .herglotz_core import (
    AtomicHerglotz,
    BoundaryPoint,
    RationalHerglotz,
    add_herglotz,
    caratheodory_extreme,
    contact_value,
    counterexample_P,
    counterexample_divergence,
    eval_herglotz,
    extract_atom,
    herglotz_derivative,
    herglotz_kernel,
    herglotz_second_derivative,
    p_sharp,
    p_star,
    reciprocal,
    scale_herglotz,
)
from .generator import (
    BerksonPortaSpec,
    FixedPointConfig,
    GeneratorSpec,
    TRIVIAL_GENERATOR,
    TrivialGenerator,
    beta,
    brfp_spectral_value,
    convex_combination,
    denominator_herglotz,
    dw_spectral_value,
    eval_denominator,
    eval_generator,
    eval_generator_derivative,
    eval_generator_second_derivative,
    eval_p0,
    is_generator,
    scale_generator,
    spec_from_denominator,
    to_berkson_porta,
)
from .value_regions import (
    DiskRegion,
    IntervalRegion,
    InequalityRecord,
    caratheodory_min_sharp,
    ell,
    eta_chart,
    extremal_boundary_of_Z,
    extremal_hyperbolic,
    extremal_interior,
    extremal_origin,
    extremal_parabolic,
    inequality_suite,
    interval_I,
    lambda_range,
    origin_curvature_chart,
    parabolic_region,
    random_spec,
    region_Omega,
    region_Omega_origin,
    region_Z,
    region_Z_omega,
)
from .extremals import (
    ExtremeCandidate,
    canonical_form,
    extreme_candidate_generator,
    extreme_point_GenF,
    gk_dirac_parameter,
    gk_generator,
    is_extreme_GenF,
)
from .semiflow import (
    AttractionReport,
    ODESettings,
    Trajectory,
    dw_attraction_check,
    estimate_boundary_derivative,
    flow_trajectory,
    integrate_flow,
    integrate_flow_with_derivative,
    julia_quotient,
    julia_quotient_estimate,
)
from .loewner_cp import (
    ConcavityReport,
    CPTarget,
    PiecewiseField,
    boundary_log_derivative,
    cp_experiment,
    cp_extremal_field,
    cp_region,
    cp_region_boundary,
    cp_support_gap,
    evolve,
    evolve_with_derivative,
    harmonic_Q,
    normalize_field,
    psi_tau,
    q_concavity_check,
    q_hessian,
    random_strict_field,
)

__version__ = "0.1.0"
