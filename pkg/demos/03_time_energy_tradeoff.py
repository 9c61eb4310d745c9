"""
Time against energy
===================

Sweep the weight lambda and watch the optimal duration and energy trade
off, while their product stays put.
"""

import numpy as np

from blochsteer import BlochAngles, PulseShape, plan_three_rotation
from blochsteer.bloch import angle_gaps

initial = BlochAngles(1.0, 4.0)
target = BlochAngles(2.0, 1.0)
sigma = angle_gaps(initial, target).sigma

print(f"{'lambda':>8} {'shape':<10} {'t_f':>10} {'E':>10} {'t_f*E/sigma^2':>14}")
for lam in np.geomspace(0.01, 100, 5):
    for shape in (PulseShape.BANG, PulseShape.QUADRATIC, PulseShape.TRIANGLE):
        _, r = plan_three_rotation(initial, target, shape, lam)
        print(f"{lam:>8.3g} {shape.value:<10} {r.t_f:>10.4f} {r.energy:>10.4f} {r.te_product / sigma**2:>14.6f}")

# Large lambda buys speed with energy; the normalized product is 1/4, 3/10, 1/3 throughout.
