"""
One tilted rotation
===================

A single rotation about an axis in the y-z plane, picked so both states sit
on the same circle around it. Also shows the fixed-drift variant.
"""

import numpy as np

from blochsteer import BlochAngles, PulseShape, plan_one_rotation, plan_three_rotation, state_from_angles
from blochsteer.bloch import fidelity_up_to_phase
from blochsteer.one_rotation import NoFixedDriftSolution, fixed_drift_plan, frame_coordinates, solve_axis
from blochsteer.propagate import integrate_rk4, simulate_schedule

initial = BlochAngles(0.4, 5.0)
target = BlochAngles(2.5, 2.0)

theta_u = solve_axis(initial, target)
frame = frame_coordinates(initial, target, theta_u)
print(f"axis tilt theta_u = {theta_u:.6f}, rotation angle = {frame.phi_H_s0:.6f}")

# Both states have the same projection onto the axis.
n = np.array([0.0, np.sin(theta_u), np.cos(theta_u)])
print("projections:", n @ initial.bloch_vector(), n @ target.bloch_vector())

# Compare the cost with the three-rotation route at the same lambda.
for shape in PulseShape:
    _, r1 = plan_one_rotation(initial, target, shape, 1.0)
    _, r3 = plan_three_rotation(initial, target, shape, 1.0)
    print(f"{shape.value:<10} J one={r1.j_value:.4f}  J three={r3.j_value:.4f}")

sched, _ = plan_one_rotation(initial, target, PulseShape.BANG, 1.0)
final, _ = simulate_schedule(state_from_angles(initial), sched)
print("one-rotation fidelity:", fidelity_up_to_phase(final, state_from_angles(target)))

# With a unit sigma_z drift always on, a constant u_y can tilt the axis instead.
try:
    plan = fixed_drift_plan(initial, target)
    psi = integrate_rk4(state_from_angles(initial), plan.controls, plan.t_f, plan.t_f * 1e-3, [plan.t_f])
    print(f"fixed drift: u_y={plan.u_y:.6f}, t_f={plan.t_f:.6f}, "
          f"fidelity={fidelity_up_to_phase(psi, state_from_angles(target)):.12f}")
except NoFixedDriftSolution as exc:
    print("fixed drift not applicable:", exc)
