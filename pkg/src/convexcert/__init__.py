"""convexcert: certified two-sided enclosures for convex-function
integrals, convexity gaps, special means and Young-type bounds.

The package is organised as:

* :mod:`convexcert.core` — domain types (intervals, curvature bands,
  enclosures, weights) and the error taxonomy.
* :mod:`convexcert.expr` — the tiny expression language: parsing,
  evaluation, symbolic differentiation, curvature estimation.
* :mod:`convexcert.quadrature` — adaptive Simpson oracle, weight
  moments and weight classification.
* :mod:`convexcert.bounds` — the certified enclosures and their
  oracle targets.
* :mod:`convexcert.means` — special means and closed-form mean/Young
  checks.
* :mod:`convexcert.verify` — the randomized falsification harness.
* :mod:`convexcert.cli` — the ``convexcert`` command-line front end.
"""

from .core import (
    AdmissibilityViolated,
    CertError,
    ConvexityViolated,
    CurvatureBounds,
    DomainError,
    Enclosure,
    Interval,
    InvalidInterval,
    Lambda,
    Monotonicity,
    MonotonicityViolated,
    NegativeWeight,
    NodeWeights,
    NonConstantExponent,
    NonpositiveInput,
    NonSmoothExpression,
    OracleInconclusive,
    ParameterOutOfRange,
    ParseError,
    Provenance,
    QuadResult,
    RangeViolated,
    Rule,
    SymmetryViolated,
    WeightSpec,
    enclosure_contains,
    make_interval,
)
from .expr import (
    FunctionSpec,
    curvature_range,
    differentiate,
    evaluate,
    evaluation_spec,
    function_spec,
    parse,
    simplify,
    to_text,
)
from .quadrature import (
    check_monotone,
    check_symmetry,
    classify_weight,
    integrate,
    moment_ab,
    moment_center,
)
from .bounds import (
    GapKind,
    bisection_bounds,
    chord_gap_bounds,
    complement_weight_chains,
    fejer,
    fejer_midpoint_gap_bounds,
    fejer_trapezoid_gap_bounds,
    h1_functional,
    h2_functional,
    hermite_hadamard,
    hh_gap_monotone,
    hh_midpoint_gap_bounds,
    hh_trapezoid_gap_bounds,
    refined_gap_chains,
    symmetric_pair_gap_bounds,
    target_bisection,
    target_fejer,
    target_gap,
    target_integral_mean,
    target_vasic_lackovic,
    vasic_lackovic,
)
from .means import (
    MeanKind,
    MeanValue,
    al_gap_check,
    arithmetic_mean,
    geometric_mean,
    harmonic_log_gap_check,
    harmonic_mean,
    identric_mean,
    identric_ratio_check,
    integral_power_mean,
    logarithmic_mean,
    mean,
    power_mean,
    young_difference_bounds,
    young_difference_target,
    young_ratio_bounds,
    young_ratio_target,
)
from .verify import (
    ConvexInstance,
    FailureRecord,
    TrialReport,
    falsify,
    random_convex_instance,
    random_monotone_weight,
    random_symmetric_weight,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # core
    "CertError",
    "InvalidInterval",
    "ParseError",
    "DomainError",
    "NonConstantExponent",
    "NonSmoothExpression",
    "OracleInconclusive",
    "ConvexityViolated",
    "SymmetryViolated",
    "NegativeWeight",
    "RangeViolated",
    "MonotonicityViolated",
    "AdmissibilityViolated",
    "NonpositiveInput",
    "ParameterOutOfRange",
    "Provenance",
    "Monotonicity",
    "Rule",
    "Interval",
    "Lambda",
    "NodeWeights",
    "CurvatureBounds",
    "Enclosure",
    "WeightSpec",
    "QuadResult",
    "make_interval",
    "enclosure_contains",
    # expr
    "FunctionSpec",
    "parse",
    "to_text",
    "evaluate",
    "simplify",
    "differentiate",
    "function_spec",
    "evaluation_spec",
    "curvature_range",
    # quadrature
    "integrate",
    "moment_ab",
    "moment_center",
    "check_symmetry",
    "check_monotone",
    "classify_weight",
    # bounds
    "GapKind",
    "hermite_hadamard",
    "fejer",
    "chord_gap_bounds",
    "symmetric_pair_gap_bounds",
    "hh_midpoint_gap_bounds",
    "hh_trapezoid_gap_bounds",
    "fejer_trapezoid_gap_bounds",
    "fejer_midpoint_gap_bounds",
    "complement_weight_chains",
    "bisection_bounds",
    "h1_functional",
    "h2_functional",
    "hh_gap_monotone",
    "refined_gap_chains",
    "vasic_lackovic",
    "target_integral_mean",
    "target_fejer",
    "target_gap",
    "target_bisection",
    "target_vasic_lackovic",
    # means
    "MeanKind",
    "MeanValue",
    "mean",
    "arithmetic_mean",
    "geometric_mean",
    "harmonic_mean",
    "logarithmic_mean",
    "identric_mean",
    "power_mean",
    "integral_power_mean",
    "al_gap_check",
    "harmonic_log_gap_check",
    "identric_ratio_check",
    "young_ratio_bounds",
    "young_difference_bounds",
    "young_ratio_target",
    "young_difference_target",
    # verify
    "ConvexInstance",
    "TrialReport",
    "FailureRecord",
    "random_convex_instance",
    "random_symmetric_weight",
    "random_monotone_weight",
    "falsify",
]
