"""
When the amplitude is capped
============================

Clamp the pulse peak and look for settings where the unbounded ordering of
energies across shapes no longer holds.
"""

import numpy as np

from blochsteer import BlochAngles, PulseShape, plan_three_rotation

initial = BlochAngles(0.4, 5.0)
target = BlochAngles(2.5, 2.0)
shapes = (PulseShape.BANG, PulseShape.QUADRATIC, PulseShape.TRIANGLE)

for lam in (0.1, 1.0, 10.0):
    for bound in (None, 2.0, 0.5):
        e = [plan_three_rotation(initial, target, s, lam, bound)[1] for s in shapes]
        ordered = e[0].energy < e[1].energy < e[2].energy
        energies = " ".join(f"{r.energy:8.4f}{'*' if r.clamped else ' '}" for r in e)
        print(f"lambda={lam:<5} bound={str(bound):<5} E(bang, quad, tri) = {energies}  ordered={ordered}")

# A '*' marks a clamped shape. Once every shape is clamped the energy is
# proportional to the energy factor times the cap, so the order reverses.
print("J at the cap for bang:", np.round([plan_three_rotation(initial, target, PulseShape.BANG, 1.0, b)[1].j_value
                                         for b in (0.25, 0.5, 1.0, 2.0)], 4))
