"""z-y-z three-rotation schedules with time-energy optimal magnitudes.

Rotation 1 about z zeroes the azimuth, rotation 2 about y moves the polar
angle to the target's, and rotation 3 about z sets the target azimuth. A
pulse of shape s and peak M that turns the Bloch vector by an angle a lasts
``c_s * a / M`` and costs energy ``e_s * M * a``; the per-shape constants
below give every closed form used here.
"""
from __future__ import annotations

import numpy as np

from .bloch import AngleGaps, BlochAngles, angle_gaps, fidelity_up_to_phase, state_from_angles
from .pulses import PulseShape, PulseWindow
from .schedule import Axis, PerformanceReport, PulseSegment, Schedule, Scheme, sign_of

GAP_TOL = 1e-12

DURATION_FACTOR = {PulseShape.BANG: 0.5, PulseShape.TRIANGLE: 1.0, PulseShape.QUADRATIC: 0.75}
ENERGY_FACTOR = {PulseShape.BANG: 0.5, PulseShape.TRIANGLE: 1.0 / 3.0, PulseShape.QUADRATIC: 0.4}


def _check_positive(name, value):
    if value is None:
        return
    if not (np.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def unbounded_optimum(shape: PulseShape, lam: float) -> float:
    """Minimizer of ``lam * c/M + e*M``: sqrt(lam), sqrt(3 lam), sqrt(30 lam)/4."""
    shape = PulseShape(shape)
    _check_positive("lambda", lam)
    return float(np.sqrt(DURATION_FACTOR[shape] * lam / ENERGY_FACTOR[shape]))


def optimal_magnitude_3(shape: PulseShape, lam: float, bound: float | None = None) -> float:
    _check_positive("bound", bound)
    m = unbounded_optimum(shape, lam)
    return m if bound is None else min(m, bound)


def performance_index(shape: PulseShape, angles, magnitudes, lam: float) -> float:
    """J = lam * t_f + E for rotations ``angles`` driven at peaks ``magnitudes``."""
    shape = PulseShape(shape)
    a = np.asarray(angles, dtype=float)
    m = np.asarray(magnitudes, dtype=float)
    return float(np.sum(lam * DURATION_FACTOR[shape] * a / m + ENERGY_FACTOR[shape] * m * a))


def performance_of_magnitudes_3(shape, gaps: AngleGaps, m_z1, m_y, m_z2, lam) -> float:
    for name, m in (("m_z1", m_z1), ("m_y", m_y), ("m_z2", m_z2)):
        _check_positive(name, m)
    return performance_index(shape, [gaps.phi_0m, gaps.theta_0s, gaps.phi_sm], [m_z1, m_y, m_z2], lam)


def closed_form_report(shape: PulseShape, total_angle: float, lam: float, magnitude: float, clamped: bool):
    shape = PulseShape(shape)
    t_f = DURATION_FACTOR[shape] * total_angle / magnitude
    energy = ENERGY_FACTOR[shape] * magnitude * total_angle
    return PerformanceReport.from_parts(lam, t_f, energy, magnitude, clamped)


def same_state(a: BlochAngles, b: BlochAngles) -> bool:
    return fidelity_up_to_phase(state_from_angles(a), state_from_angles(b)) >= 1.0 - 1e-15


def plan_three_rotation(initial: BlochAngles, target: BlochAngles, shape: PulseShape, lam: float,
                        bound: float | None = None) -> tuple[Schedule, PerformanceReport]:
    shape = PulseShape(shape)
    m_opt = unbounded_optimum(shape, lam)
    m = optimal_magnitude_3(shape, lam, bound)
    clamped = m < m_opt

    if same_state(initial, target):
        report = PerformanceReport.from_parts(lam, 0.0, 0.0, m, clamped)
        return Schedule((), 0.0, Scheme.THREE, shape, lam, m, clamped), report

    gaps = angle_gaps(initial, target)
    rotations = [
        (Axis.z(), sign_of(initial.phi - np.pi), gaps.phi_0m),
        (Axis.y(), sign_of(target.theta - initial.theta), gaps.theta_0s),
        (Axis.z(), sign_of(np.pi - target.phi), gaps.phi_sm),
    ]
    segments = []
    t = 0.0
    c = DURATION_FACTOR[shape]
    for axis, sgn, angle in rotations:
        if angle < GAP_TOL:
            continue
        t_next = t + c * angle / m
        segments.append(PulseSegment(axis, shape, PulseWindow(t, t_next, m), sgn))
        t = t_next

    report = closed_form_report(shape, sum(a for *_, a in rotations if a >= GAP_TOL), lam, m, clamped)
    return Schedule(tuple(segments), t, Scheme.THREE, shape, lam, m, clamped), report
