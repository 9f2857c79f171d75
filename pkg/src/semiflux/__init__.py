"""Semicontinuous calculus on the line: one-sided interval topologies,
piecewise functions with assigned breakpoint values, Lebesgue-Stieltjes
measures that respect a continuity orientation, distributional pairings,
and the sign-coupled grid operator those pieces feed.
"""

from .intervals import Interval, IntervalSet, Orientation, orient_closure
from .piecewise import (
    Continuity,
    PiecewiseFn,
    balanced_sgn,
    heaviside,
    heaviside_two_sided,
    indicator,
    named_function,
    sgn,
    sgn_two_sided,
)
from .smooth import SmoothFunc, const, expfunc, gaussian, identity, poly, test_function
from .stieltjes import (
    Measure,
    MeasureKind,
    NormRecord,
    TopologyMismatchError,
    integrate,
    measure_of,
    norms,
    oriented_jump_masses,
    pair_against_test_derivative,
    total_variation,
)
from .distributions import (
    Distribution,
    RegularizedDelta,
    delta,
    delta_prime,
    distributional_derivative,
    euler_character,
    pair,
    primitive,
    regularized_pair,
)
from .symplectic import (
    DomainExitError,
    HamiltonianPair,
    PhasePoint,
    Trajectory,
    check_closed_dh2,
    eom,
    flow,
    half_tanh,
    named_profile,
    poincare_residual,
)
from .hamiltonian import (
    DecompositionRecord,
    HamiltonianConfig,
    HamiltonianOperator,
    KreinCheckRecord,
    KreinForm,
    build,
    config_from_toml,
    decomposition_check,
    krein_check,
    krein_model,
    operator_norm_ratio,
    propagate,
    spectrum,
)
from .acceptance import CriterionResult, run_all

__version__ = "0.1.0"

__all__ = [
    "Interval",
    "IntervalSet",
    "Orientation",
    "orient_closure",
    "Continuity",
    "PiecewiseFn",
    "balanced_sgn",
    "heaviside",
    "heaviside_two_sided",
    "indicator",
    "named_function",
    "sgn",
    "sgn_two_sided",
    "SmoothFunc",
    "const",
    "expfunc",
    "gaussian",
    "identity",
    "poly",
    "test_function",
    "Measure",
    "MeasureKind",
    "NormRecord",
    "TopologyMismatchError",
    "integrate",
    "measure_of",
    "norms",
    "oriented_jump_masses",
    "pair_against_test_derivative",
    "total_variation",
    "Distribution",
    "RegularizedDelta",
    "delta",
    "delta_prime",
    "distributional_derivative",
    "euler_character",
    "pair",
    "primitive",
    "regularized_pair",
    "DomainExitError",
    "HamiltonianPair",
    "PhasePoint",
    "Trajectory",
    "check_closed_dh2",
    "eom",
    "flow",
    "half_tanh",
    "named_profile",
    "poincare_residual",
    "DecompositionRecord",
    "HamiltonianConfig",
    "HamiltonianOperator",
    "KreinCheckRecord",
    "KreinForm",
    "build",
    "config_from_toml",
    "decomposition_check",
    "krein_check",
    "krein_model",
    "operator_norm_ratio",
    "propagate",
    "spectrum",
    "CriterionResult",
    "run_all",
    "__version__",
]
