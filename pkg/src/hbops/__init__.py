"""Radial-derivative integral operators between Zygmund and Bloch spaces
on the unit ball of C^n: exact polynomial calculus, closed-form test
functions, sampled norms, criterion evaluators and verification suites.
"""

__version__ = "0.1.0"

from .errors import (
    DegreeOverflowError,
    DimensionError,
    DomainError,
    GradientUnavailable,
    HbopsError,
    ParameterError,
    QuadratureError,
    RangeViolation,
    SchemaError,
)
from .geometry import SamplingGrid, ball_norm, inner_product, make_grid
from .power_series import (
    PowerSeries,
    compose_polynomial,
    constant,
    coordinate,
    evaluate,
    gradient,
    homogeneous_parts,
    iterated_radial,
    monomial,
    radial_antiderivative,
    radial_derivative,
)
from .quadrature import QuadratureConfig, integrate
from .symbols import (
    ClosedFormFunction,
    HoloSelfMap,
    Symbol,
    TestFunction,
    validate_self_map,
)
from .operators import (
    OperatorImage,
    apply_Ig,
    apply_integral_operator,
    apply_Tg,
    integral_operator_series,
    radial_of_integral,
    second_radial_of_integral,
)
from .norms import (
    Classification,
    Thresholds,
    bloch_norm,
    bloch_seminorm,
    little_space_profile,
    sup_norm,
    zygmund_norm,
)
from .criteria import (
    CRITERIA_SETS,
    build_dictionary,
    criteria_set,
    criterion,
    operator_norm_lower_bound,
)
from .harness import SUITES, SuiteConfig, SuiteReport, run_suite

__all__ = [name for name in dir() if not name.startswith("_")]
