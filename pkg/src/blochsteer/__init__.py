"""Geometric pulse synthesis for steering a qubit across the Bloch sphere."""

from .bloch import (
    AngleGaps,
    BlochAngles,
    NormalizationError,
    angle_gaps,
    angles_from_state,
    bloch_vector,
    fidelity_up_to_phase,
    state_from_angles,
)
from .encoded import (
    LindbladSpec,
    dfs_residual,
    lift_controls,
    lindblad_apply,
    logical_operators,
    simulate_encoded,
    simulate_master_equation,
)
from .one_rotation import (
    BoundInfeasible,
    NoFixedDriftSolution,
    RotationFrame,
    fixed_drift_control,
    fixed_drift_plan,
    frame_coordinates,
    plan_one_rotation,
    solve_axis,
)
from .propagate import (
    Trajectory,
    evaluate_performance_numeric,
    integrate_rk4,
    integrate_schedule_rk4,
    segment_propagator,
    simulate_schedule,
)
from .pulses import PulseShape, PulseWindow, pulse_area, pulse_energy
from .schedule import Axis, PerformanceReport, PulseSegment, Schedule, Scheme
from .three_rotation import optimal_magnitude_3, performance_of_magnitudes_3, plan_three_rotation

__version__ = "0.1.0"
