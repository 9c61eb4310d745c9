"""Local pulse envelopes: constant (bang-bang), triangle and quadratic.

Every envelope lives on a half-open window ``[t0, t1)`` and peaks at
magnitude ``L`` at the midpoint (the bang pulse is flat at ``L``).
Closed-form area, energy and running area are provided so propagation and
performance evaluation never need numerical integration.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np


class PulseShape(str, Enum):
    BANG = "bang"
    TRIANGLE = "triangle"
    QUADRATIC = "quadratic"


# (area, energy) per unit L*duration and per unit L^2*duration
_AREA = {PulseShape.BANG: 1.0, PulseShape.TRIANGLE: 0.5, PulseShape.QUADRATIC: 2.0 / 3.0}
_ENERGY = {PulseShape.BANG: 1.0, PulseShape.TRIANGLE: 1.0 / 3.0, PulseShape.QUADRATIC: 8.0 / 15.0}


@dataclass(frozen=True)
class PulseWindow:
    t0: float
    t1: float
    magnitude: float

    def __post_init__(self):
        if not self.t1 > self.t0:
            raise ValueError(f"empty pulse window [{self.t0}, {self.t1})")
        if not self.magnitude > 0:
            raise ValueError(f"pulse magnitude must be positive, got {self.magnitude}")

    @property
    def duration(self) -> float:
        return self.t1 - self.t0


def unit_profile(shape: PulseShape, x):
    """Envelope on normalized time ``x = (t - t0)/(t1 - t0)``, zero outside [0, 1)."""
    shape = PulseShape(shape)
    x = np.asarray(x, dtype=float)
    inside = (x >= 0.0) & (x < 1.0)
    if shape is PulseShape.BANG:
        val = np.ones_like(x)
    elif shape is PulseShape.TRIANGLE:
        val = 1.0 - np.abs(2.0 * x - 1.0)
    elif shape is PulseShape.QUADRATIC:
        val = 4.0 * x * (1.0 - x)
    else:
        raise ValueError(f"unknown pulse shape {shape!r}")
    return np.where(inside, val, 0.0)


def unit_running_area(shape: PulseShape, x):
    """Integral of :func:`unit_profile` from 0 to ``x`` (clipped to [0, 1])."""
    shape = PulseShape(shape)
    x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
    if shape is PulseShape.BANG:
        return x
    if shape is PulseShape.TRIANGLE:
        return np.where(x < 0.5, x * x, 0.5 - (1.0 - x) ** 2)
    if shape is PulseShape.QUADRATIC:
        return 2.0 * x * x - 4.0 * x**3 / 3.0
    raise ValueError(f"unknown pulse shape {shape!r}")


def eval(shape: PulseShape, w: PulseWindow, t):
    """Envelope value at time(s) ``t``; scalar in, float out."""
    t = np.asarray(t, dtype=float)
    # support test in time units: (t - t0)/duration can round up to 1 just below t1
    x = np.clip((t - w.t0) / w.duration, 0.0, np.nextafter(1.0, 0.0))
    val = np.where((t >= w.t0) & (t < w.t1), w.magnitude * unit_profile(shape, x), 0.0)
    return float(val) if np.ndim(val) == 0 else val


def running_area(shape: PulseShape, w: PulseWindow, t):
    """``integral_{t0}^{t} u(s) ds``, saturating at the full pulse area."""
    val = w.magnitude * w.duration * unit_running_area(shape, (np.asarray(t, dtype=float) - w.t0) / w.duration)
    return float(val) if np.ndim(val) == 0 else val


def pulse_area(shape: PulseShape, w: PulseWindow) -> float:
    return _AREA[PulseShape(shape)] * w.magnitude * w.duration


def pulse_energy(shape: PulseShape, w: PulseWindow) -> float:
    return _ENERGY[PulseShape(shape)] * w.magnitude**2 * w.duration
