"""Single-rotation schedules about a tilted axis in the y-z plane.

The axis ``n = (0, sin theta_u, cos theta_u)`` is chosen so initial and
target Bloch vectors have equal projection on it; one rotation about ``n``
then connects them. Coordinates relative to that axis use the eigenbasis
``|u+> = cos(theta_u/2)|0> + i sin(theta_u/2)|1>``,
``|u-> = sin(theta_u/2)|0> - i cos(theta_u/2)|1>`` of
``cos(theta_u) sigma_z + sin(theta_u) sigma_y``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import TWO_PI, BlochAngles, state_from_angles
from .pulses import PulseShape, PulseWindow
from .schedule import Axis, PerformanceReport, PulseSegment, Schedule, Scheme
from .three_rotation import (
    DURATION_FACTOR,
    GAP_TOL,
    _check_positive,
    closed_form_report,
    same_state,
    unbounded_optimum,
)

AXIS_TOL = 1e-12
RESIDUAL_TOL = 1e-8


class InconsistentAxisError(ValueError):
    """The supplied axis does not give both states the same latitude."""


class NoFixedDriftSolution(ValueError):
    pass


class BoundInfeasible(ValueError):
    pass


@dataclass(frozen=True)
class RotationFrame:
    theta_u: float
    theta_H_s0: float
    phi_H_0: float
    phi_H_s: float

    @property
    def phi_H_s0(self) -> float:
        d = abs(self.phi_H_s - self.phi_H_0)
        return min(d, TWO_PI - d)

    @property
    def direction(self) -> int:
        """+1 when the target lies less than half a turn ahead of the initial azimuth."""
        d = np.mod(self.phi_H_s - self.phi_H_0, TWO_PI)
        return 1 if d <= np.pi else -1


def _axis_terms(initial: BlochAngles, target: BlochAngles) -> tuple[float, float]:
    a = np.sin(initial.theta) * np.sin(initial.phi) - np.sin(target.theta) * np.sin(target.phi)
    b = np.cos(target.theta) - np.cos(initial.theta)
    return float(a), float(b)


def axis_residual(initial: BlochAngles, target: BlochAngles, theta_u: float) -> float:
    a, b = _axis_terms(initial, target)
    return float(np.sin(theta_u) * a - np.cos(theta_u) * b)


def solve_axis(initial: BlochAngles, target: BlochAngles) -> float:
    """Axis angle theta_u in [0, pi] with sin(theta_u) A = cos(theta_u) B."""
    a, b = _axis_terms(initial, target)
    if abs(a) < AXIS_TOL and abs(b) < AXIS_TOL:
        return np.pi / 2
    theta_u = float(np.arctan2(b, a))
    if theta_u < 0:
        theta_u += np.pi
    return min(theta_u, np.pi)


def frame_basis(theta_u: float) -> tuple[np.ndarray, np.ndarray]:
    c, s = np.cos(theta_u / 2), np.sin(theta_u / 2)
    u_plus = np.array([c, 1j * s])
    u_minus = np.array([s, -1j * c])
    return u_plus, u_minus


def _frame_azimuth(psi: np.ndarray, u_plus: np.ndarray, u_minus: np.ndarray) -> float:
    phi = np.angle(np.vdot(u_minus, psi)) - np.angle(np.vdot(u_plus, psi))
    phi = float(np.mod(phi, TWO_PI))
    return 0.0 if phi >= TWO_PI else phi


def frame_coordinates(initial: BlochAngles, target: BlochAngles, theta_u: float) -> RotationFrame:
    if abs(axis_residual(initial, target, theta_u)) > RESIDUAL_TOL:
        raise InconsistentAxisError(f"theta_u={theta_u} does not equalize the two latitudes")
    proj = (np.sin(theta_u) * np.sin(initial.theta) * np.sin(initial.phi)
            + np.cos(theta_u) * np.cos(initial.theta))
    theta_h = 2.0 * np.arccos(np.sqrt(np.clip(0.5 + 0.5 * proj, 0.0, 1.0)))
    u_plus, u_minus = frame_basis(theta_u)
    phi0 = _frame_azimuth(state_from_angles(initial), u_plus, u_minus)
    phis = _frame_azimuth(state_from_angles(target), u_plus, u_minus)
    return RotationFrame(float(theta_u), float(theta_h), phi0, phis)


def effective_bound(theta_u: float, bound: float | None) -> float | None:
    """Largest envelope peak keeping both |u_z| and |u_y| within ``bound``."""
    if bound is None:
        return None
    return bound / max(abs(np.cos(theta_u)), abs(np.sin(theta_u)))


def optimal_magnitude_1(shape: PulseShape, lam: float, theta_u: float, bound: float | None = None) -> float:
    _check_positive("bound", bound)
    m = unbounded_optimum(shape, lam)
    eb = effective_bound(theta_u, bound)
    return m if eb is None else min(m, eb)


def plan_one_rotation(initial: BlochAngles, target: BlochAngles, shape: PulseShape, lam: float,
                      bound: float | None = None) -> tuple[Schedule, PerformanceReport]:
    shape = PulseShape(shape)
    theta_u = solve_axis(initial, target)
    frame = frame_coordinates(initial, target, theta_u)
    m_opt = unbounded_optimum(shape, lam)
    m = optimal_magnitude_1(shape, lam, theta_u, bound)
    clamped = m < m_opt

    angle = frame.phi_H_s0
    if same_state(initial, target) or angle < GAP_TOL:
        report = PerformanceReport.from_parts(lam, 0.0, 0.0, m, clamped)
        return Schedule((), 0.0, Scheme.ONE, shape, lam, m, clamped), report

    t_f = DURATION_FACTOR[shape] * angle / m
    seg = PulseSegment(Axis.tilted(theta_u), shape, PulseWindow(0.0, t_f, m), frame.direction)
    report = closed_form_report(shape, angle, lam, m, clamped)
    return Schedule((seg,), t_f, Scheme.ONE, shape, lam, m, clamped), report


# Fixed drift: H = sigma_z + u_y sigma_y with a single constant u_y.


@dataclass(frozen=True)
class FixedDriftPlan:
    u_y: float
    t_f: float

    def controls(self, t):
        t = np.asarray(t, dtype=float)
        on = (t >= 0) & (t < self.t_f)
        return np.where(on, 1.0, 0.0), np.where(on, self.u_y, 0.0)


def fixed_drift_control(initial: BlochAngles, target: BlochAngles, bound: float | None = None) -> float:
    """Constant u_y = tan(theta_u) that, with the unit sigma_z drift, tilts the axis correctly."""
    _check_positive("bound", bound)
    a, b = _axis_terms(initial, target)
    if abs(a) < AXIS_TOL:
        raise NoFixedDriftSolution("sin(theta0) sin(phi0) equals sin(thetas) sin(phis)")
    u_y = b / a
    if bound is not None and bound < abs(u_y):
        raise BoundInfeasible(f"|u_y|={abs(u_y):.6g} exceeds bound {bound:.6g}")
    return float(u_y)


def fixed_drift_plan(initial: BlochAngles, target: BlochAngles, bound: float | None = None) -> FixedDriftPlan:
    """Constant control plus the time it must be held.

    The drift fixes the rotation sense, so the azimuth gap about the axis is
    traversed forwards only and may exceed half a turn.
    """
    u_y = fixed_drift_control(initial, target, bound)
    theta_u = float(np.arctan(u_y))  # in (-pi/2, pi/2): the axis points along +z side
    u_plus, u_minus = frame_basis(theta_u)
    phi0 = _frame_azimuth(state_from_angles(initial), u_plus, u_minus)
    phis = _frame_azimuth(state_from_angles(target), u_plus, u_minus)
    angle = float(np.mod(phis - phi0, TWO_PI))
    return FixedDriftPlan(u_y, angle / (2.0 * np.hypot(1.0, u_y)))
