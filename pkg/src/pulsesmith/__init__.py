"""Composite pulse synthesis and verification for one-qubit rotations.

Builds the SCROFULOUS, SCORBUTUS, and SKinsC sequences from a target
rotation, simulates them under pulse-length and off-resonance errors, and
certifies their robustness orders, operation times, and fidelity landscapes.
"""

from .analysis import (
    AxisSpec,
    FidelityGrid,
    OreResidualReport,
    SlopeReport,
    TimeComparisonRow,
    alpha_coefficient,
    fidelity_grid,
    first_order_coefficient,
    fit_loglog_slope,
    infidelity_ray,
    slope_report,
    symmetric_ore_residual,
    time_compare,
)
from .bloch import (
    BlochVector,
    NORTH_POLE,
    SOUTH_POLE,
    Trajectory,
    TrajectoryPoint,
    apply_to_state,
    trajectory,
)
from .sequences import (
    FAMILIES,
    PulseSequence,
    arcsinc,
    compose_with_errors,
    elementary,
    scorbutus,
    scrofulous,
    sequence_from_dict,
    sequence_to_dict,
    sinc,
    skinsc,
    switchback_replace,
    synthesize,
    theta_r_from_condition,
    total_time,
)
from .su2 import (
    ErrorPair,
    NO_ERROR,
    Pulse,
    SIGMA_0,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Unitary2,
    compose,
    first_order_expansion,
    frobenius_distance,
    gate_fidelity,
    matrix_from_dict,
    matrix_to_dict,
    normalize_phase,
    rotation,
    rotation_with_error,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "BlochVector",
    "ErrorPair",
    "FAMILIES",
    "FidelityGrid",
    "NORTH_POLE",
    "NO_ERROR",
    "OreResidualReport",
    "Pulse",
    "PulseSequence",
    "SIGMA_0",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "SOUTH_POLE",
    "SlopeReport",
    "TimeComparisonRow",
    "Trajectory",
    "TrajectoryPoint",
    "Unitary2",
    "alpha_coefficient",
    "apply_to_state",
    "arcsinc",
    "compose",
    "compose_with_errors",
    "elementary",
    "fidelity_grid",
    "first_order_coefficient",
    "first_order_expansion",
    "fit_loglog_slope",
    "frobenius_distance",
    "gate_fidelity",
    "infidelity_ray",
    "matrix_from_dict",
    "matrix_to_dict",
    "normalize_phase",
    "rotation",
    "rotation_with_error",
    "scorbutus",
    "scrofulous",
    "sequence_from_dict",
    "sequence_to_dict",
    "sinc",
    "skinsc",
    "slope_report",
    "switchback_replace",
    "symmetric_ore_residual",
    "synthesize",
    "theta_r_from_condition",
    "time_compare",
    "total_time",
    "trajectory",
]
