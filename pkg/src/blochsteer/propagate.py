"""Exact and numerical propagation of schedules.

Within a segment the Hamiltonian is ``f(t) sigma_n`` with a fixed
``sigma_n``, so it commutes with itself at all times and the propagator is
``exp(-i A sigma_n) = cos(A) I - i sin(A) sigma_n`` with ``A`` the (signed)
accumulated pulse area. The fixed-step RK4 integrator below is the
independent check on that closed form: it only ever sees control values.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import simpson

from . import pulses
from .bloch import bloch_vector
from .pulses import PulseShape
from .schedule import PerformanceReport, PulseSegment, Schedule

SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
IDENTITY = np.eye(2, dtype=complex)

DEFAULT_SAMPLES = 512
MIN_PANELS = 256

Controls = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def rotation(alpha: float, cz: float, cy: float) -> np.ndarray:
    """exp(-i alpha (cz sigma_z + cy sigma_y)) for a unit axis (cz, cy)."""
    return np.cos(alpha) * IDENTITY - 1j * np.sin(alpha) * (cz * SIGMA_Z + cy * SIGMA_Y)


def segment_propagator(seg: PulseSegment) -> np.ndarray:
    return rotation(seg.sign * seg.area, *seg.axis.components)


def partial_propagator(seg: PulseSegment, t: float) -> np.ndarray:
    alpha = seg.sign * pulses.running_area(seg.shape, seg.window, t)
    return rotation(alpha, *seg.axis.components)


def schedule_propagator(sched: Schedule) -> np.ndarray:
    u = IDENTITY.copy()
    for seg in sched.segments:
        u = segment_propagator(seg) @ u
    return u


def state_at(psi0, sched: Schedule, t: float) -> np.ndarray:
    """Exact state at time t (clipped to [0, t_f])."""
    psi = np.asarray(psi0, dtype=complex)
    for seg in sched.segments:
        if t >= seg.window.t1:
            psi = segment_propagator(seg) @ psi
        else:
            if t > seg.window.t0:
                psi = partial_propagator(seg, t) @ psi
            break
    return psi


@dataclass
class Trajectory:
    t: np.ndarray
    states: np.ndarray
    u_z: np.ndarray
    u_y: np.ndarray

    CSV_COLUMNS = ("t", "re0", "im0", "re1", "im1", "bloch_x", "bloch_y", "bloch_z", "u_z", "u_y")

    def __len__(self):
        return len(self.t)

    @property
    def bloch(self) -> np.ndarray:
        return bloch_vector(self.states)

    def to_array(self) -> np.ndarray:
        s = self.states
        return np.column_stack([self.t, s[:, 0].real, s[:, 0].imag, s[:, 1].real, s[:, 1].imag,
                                self.bloch, self.u_z, self.u_y])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(self.CSV_COLUMNS)
            for row in self.to_array():
                w.writerow(["%.12e" % v for v in row])


def read_trajectory_csv(path) -> Trajectory:
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    states = np.column_stack([data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4]])
    return Trajectory(data[:, 0], states, data[:, 8], data[:, 9])


def simulate_schedule(psi0, sched: Schedule, n_samples: int = DEFAULT_SAMPLES):
    """Final state and a uniformly sampled trajectory, both exact."""
    psi0 = np.asarray(psi0, dtype=complex)
    final = schedule_propagator(sched) @ psi0
    n = 1 if sched.t_f <= 0 else max(int(n_samples), 2)
    times = np.linspace(0.0, sched.t_f, n)
    states = np.array([state_at(psi0, sched, t) for t in times])
    uz, uy = sched.controls(times)
    return final, Trajectory(times, states, np.asarray(uz), np.asarray(uy))


# Fixed-step RK4


def time_grid(t_f: float, dt: float, breakpoints=None) -> np.ndarray:
    """Grid on [0, t_f] with steps no larger than dt that hits every breakpoint."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    pts = [0.0, t_f] if breakpoints is None else list(breakpoints) + [0.0, t_f]
    pts = np.unique(np.clip(np.asarray(pts, dtype=float), 0.0, t_f))
    pieces = [np.array([0.0])]
    for a, b in zip(pts[:-1], pts[1:]):
        n = max(1, int(np.ceil((b - a) / dt - 1e-9)))
        pieces.append(np.linspace(a, b, n + 1)[1:])
    return np.concatenate(pieces)


def rk4_on_grid(rhs, y0, times, post=None, keep: bool = False):
    """Classical RK4 on a prescribed grid.

    ``times`` has shape (N+1,) or (N+1, B) for a batch of B independent
    problems sharing step count (zero-length steps are no-ops). ``post`` is
    applied after each step.
    """
    y = np.asarray(y0, dtype=complex).copy()
    times = np.asarray(times, dtype=float)
    out = [y] if keep else None
    for j in range(len(times) - 1):
        t = times[j]
        h = times[j + 1] - t
        hb = h if np.ndim(h) == 0 else h.reshape(h.shape + (1,) * (y.ndim - 1))
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + hb / 2 * k1)
        k3 = rhs(t + h / 2, y + hb / 2 * k2)
        # left limit at the step end: controls are piecewise on half-open windows
        k4 = rhs(np.nextafter(times[j + 1], t), y + hb * k3)
        y = y + hb / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if post is not None:
            y = post(y)
        if keep:
            out.append(y)
    return np.array(out) if keep else y


def _renormalize(psi):
    return psi / np.linalg.norm(psi, axis=-1, keepdims=True)


def qubit_rhs(controls: Controls):
    """Right-hand side of d psi/dt = -i (u_z sigma_z + u_y sigma_y) psi."""

    def rhs(t, psi):
        uz, uy = controls(t)
        a0, a1 = psi[..., 0], psi[..., 1]
        return np.stack([-1j * uz * a0 - uy * a1, uy * a0 + 1j * uz * a1], axis=-1)

    return rhs


def integrate_rk4(psi0, controls: Controls, t_f: float, dt: float, breakpoints=None) -> np.ndarray:
    """Fixed-step RK4 with renormalization after every step.

    Steps are aligned with ``breakpoints`` (control discontinuities) so no
    step straddles a switch.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    if t_f <= 0:
        return psi0.copy()
    grid = time_grid(t_f, dt, breakpoints)
    return rk4_on_grid(qubit_rhs(controls), psi0, grid, post=_renormalize)


def integrate_schedule_rk4(psi0, sched: Schedule, dt: float | None = None) -> np.ndarray:
    """RK4 final state for one schedule; dt defaults to t_f * 1e-4."""
    if sched.t_f <= 0:
        return np.asarray(psi0, dtype=complex).copy()
    dt = sched.t_f * 1e-4 if dt is None else dt
    grid = time_grid(sched.t_f, dt, sched.breakpoints())
    psi0 = np.asarray(psi0, dtype=complex)[None]
    return rk4_on_grid(qubit_rhs(PackedControls([sched])), psi0, grid[:, None], post=_renormalize)[0]


_SHAPE_INDEX = {PulseShape.BANG: 0, PulseShape.TRIANGLE: 1, PulseShape.QUADRATIC: 2}


class PackedControls:
    """Vectorized controls for a batch of schedules, evaluated at one time per schedule."""

    def __init__(self, schedules):
        b = len(schedules)
        s = max([len(sc.segments) for sc in schedules] + [1])
        self.t0 = np.zeros((b, s))
        self.t1 = np.zeros((b, s))
        self.dur = np.ones((b, s))
        self.amp = np.zeros((b, s))
        self.cz = np.zeros((b, s))
        self.cy = np.zeros((b, s))
        self.kind = np.zeros((b, s, 3))
        for i, sc in enumerate(schedules):
            for k, seg in enumerate(sc.segments):
                self.t0[i, k] = seg.window.t0
                self.t1[i, k] = seg.window.t1
                self.dur[i, k] = seg.window.duration
                self.amp[i, k] = seg.sign * seg.window.magnitude
                self.cz[i, k], self.cy[i, k] = seg.axis.components
                self.kind[i, k, _SHAPE_INDEX[seg.shape]] = 1.0

    def __call__(self, t):
        t = np.asarray(t)[:, None]
        x = np.clip((t - self.t0) / self.dur, 0.0, 1.0)
        inside = (t >= self.t0) & (t < self.t1)
        prof = (self.kind[..., 0]
                + self.kind[..., 1] * (1.0 - np.abs(2.0 * x - 1.0))
                + self.kind[..., 2] * 4.0 * x * (1.0 - x))
        f = np.where(inside, self.amp * prof, 0.0)
        return (f * self.cz).sum(axis=1), (f * self.cy).sum(axis=1)


def integrate_schedules_rk4(psi0s, schedules, rel_dt: float = 1e-4) -> np.ndarray:
    """Batched RK4 over many schedules, each with dt = t_f * rel_dt."""
    psi0s = np.asarray(psi0s, dtype=complex)
    grids = [time_grid(sc.t_f, sc.t_f * rel_dt, sc.breakpoints()) if sc.t_f > 0 else np.zeros(1)
             for sc in schedules]
    n = max(len(g) for g in grids)
    times = np.column_stack([np.pad(g, (0, n - len(g)), mode="edge") for g in grids])
    return rk4_on_grid(qubit_rhs(PackedControls(schedules)), psi0s, times, post=_renormalize)


def evaluate_performance_numeric(sched: Schedule, lam: float, dt: float) -> PerformanceReport:
    """Quadrature of lam + u_z^2 + u_y^2 over [0, t_f], piecewise between breakpoints."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    magnitude = max((seg.window.magnitude for seg in sched.segments), default=0.0)
    if sched.t_f <= 0:
        return PerformanceReport.from_parts(lam, 0.0, 0.0, magnitude, sched.clamped)
    pts = sched.breakpoints()
    energy = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        # short pieces still get enough panels to resolve the envelope
        n = max(MIN_PANELS, int(np.ceil((b - a) / dt)))
        n += n % 2
        t = np.linspace(a, b, n + 1)
        # stay inside the half-open support at the right end
        t[-1] = np.nextafter(b, a)
        uz, uy = sched.controls(t)
        t[-1] = b
        energy += simpson(uz**2 + uy**2, x=t)
    return PerformanceReport.from_parts(lam, sched.t_f, float(energy), magnitude, sched.clamped)
