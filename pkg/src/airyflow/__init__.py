"""Closed-form velocity profiles along streamlines via Airy functions.

The along-streamline momentum balance reduces to a Riccati equation
whose solution is a rational combination of Airy functions.  This
package evaluates the Airy quartet from scratch, resolves the
integration constants from initial or boundary data, reconstructs 2D
velocity fields over streamline families, and re-derives every claim
with independent numerical oracles (RK4 integration, finite
differences).
"""

from .airy import AiryQuartet, airy_eval, airy_ode_residual
from .bvp import (
    BvpSolution,
    InitialData,
    c_from_initial,
    coefficients_from_u0,
    default_c_bracket,
    solve_bvp,
    solve_ivp,
)
from .errors import (
    AiryOverflowError,
    DegenerateCoefficientsError,
    DegenerateModelError,
    FlowDomainError,
    GridDomainError,
    GridTooCoarseError,
    ModelInvalidError,
    NoSignChangeError,
    PoleCrossingError,
    PoleError,
)
from .field import (
    FlowProfile,
    GridSpec,
    SampledField,
    StreamlineFamily,
    VelocitySample,
    emit,
    gnuplot_script,
    parse,
    reconstruct_field,
)
from .flow import (
    FlowParams,
    SolutionConstants,
    denominator_z,
    derive_constants,
    exact_u1,
    exact_u1_derivative,
    find_poles,
    map_t,
)
from .verify import (
    CheckResult,
    Trajectory,
    VerificationReport,
    check_prop1,
    check_prop2_prop3,
    continuity_bracket,
    integrate_riccati,
    integrate_second_order,
    random_flow_case,
    run_verification,
)

__version__ = "0.1.0"

__all__ = [
    "AiryQuartet",
    "AiryOverflowError",
    "BvpSolution",
    "CheckResult",
    "DegenerateCoefficientsError",
    "DegenerateModelError",
    "FlowDomainError",
    "FlowParams",
    "FlowProfile",
    "GridDomainError",
    "GridSpec",
    "GridTooCoarseError",
    "InitialData",
    "ModelInvalidError",
    "NoSignChangeError",
    "PoleCrossingError",
    "PoleError",
    "SampledField",
    "SolutionConstants",
    "StreamlineFamily",
    "Trajectory",
    "VelocitySample",
    "VerificationReport",
    "airy_eval",
    "airy_ode_residual",
    "c_from_initial",
    "check_prop1",
    "check_prop2_prop3",
    "coefficients_from_u0",
    "continuity_bracket",
    "default_c_bracket",
    "denominator_z",
    "derive_constants",
    "emit",
    "exact_u1",
    "exact_u1_derivative",
    "find_poles",
    "gnuplot_script",
    "integrate_riccati",
    "integrate_second_order",
    "map_t",
    "parse",
    "random_flow_case",
    "reconstruct_field",
    "run_verification",
    "solve_bvp",
    "solve_ivp",
]
