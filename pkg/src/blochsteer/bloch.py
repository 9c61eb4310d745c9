"""Bloch-sphere parametrization of pure qubit states.

A state is written as ``cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>``.
States are plain length-2 complex numpy arrays; angles live in the frozen
:class:`BlochAngles` value type.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi
POLE_TOL = 1e-9
NORM_TOL = 1e-9


class NormalizationError(ValueError):
    """Raised when a state vector is not unit norm."""


@dataclass(frozen=True)
class BlochAngles:
    """Canonical polar/azimuthal angles of a pure qubit state.

    ``phi`` is forced to 0 at the poles, where it carries no information.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        theta, phi = float(self.theta), float(self.phi)
        if not (np.isfinite(theta) and np.isfinite(phi)):
            raise ValueError("angles must be finite")
        if not 0.0 <= theta <= np.pi:
            raise ValueError(f"theta={theta!r} outside [0, pi]")
        if not 0.0 <= phi < TWO_PI:
            raise ValueError(f"phi={phi!r} outside [0, 2pi)")
        if abs(np.sin(theta / 2)) < POLE_TOL or abs(np.cos(theta / 2)) < POLE_TOL:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @classmethod
    def wrap(cls, theta: float, phi: float) -> "BlochAngles":
        """Build from an arbitrary azimuth by reducing it into [0, 2pi)."""
        phi = float(np.mod(phi, TWO_PI))
        if phi >= TWO_PI:
            phi = 0.0
        return cls(theta, phi)

    def bloch_vector(self) -> np.ndarray:
        st = np.sin(self.theta)
        return np.array([st * np.cos(self.phi), st * np.sin(self.phi), np.cos(self.theta)])


@dataclass(frozen=True)
class AngleGaps:
    phi_0m: float
    phi_sm: float
    theta_0s: float

    @property
    def sigma(self) -> float:
        """Total rotation angle of the z-y-z route."""
        return self.phi_0m + self.theta_0s + self.phi_sm


def state_from_angles(angles: BlochAngles) -> np.ndarray:
    half = angles.theta / 2
    return np.array([np.cos(half), np.exp(1j * angles.phi) * np.sin(half)], dtype=complex)


def _check_norm(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise ValueError(f"expected a 2-component state, got shape {psi.shape}")
    norm = np.vdot(psi, psi).real
    if abs(norm - 1.0) > NORM_TOL:
        raise NormalizationError(f"state norm^2 is {norm:.3e}, expected 1")
    return psi


def angles_from_state(psi) -> BlochAngles:
    """Inverse of :func:`state_from_angles`, modulo a global phase."""
    psi = _check_norm(psi)
    r0, r1 = abs(psi[0]), abs(psi[1])
    theta = min(2.0 * np.arctan2(r1, r0), np.pi)
    if r0 < POLE_TOL or r1 < POLE_TOL:
        return BlochAngles(theta, 0.0)
    return BlochAngles.wrap(theta, np.angle(psi[1]) - np.angle(psi[0]))


def bloch_vector(psi) -> np.ndarray:
    """Bloch vector (x, y, z) of a state; works on stacked states too."""
    psi = np.asarray(psi, dtype=complex)
    a0, a1 = psi[..., 0], psi[..., 1]
    c = np.conj(a0) * a1
    return np.stack([2 * c.real, 2 * c.imag, abs(a0) ** 2 - abs(a1) ** 2], axis=-1)


def angle_gaps(initial: BlochAngles, target: BlochAngles) -> AngleGaps:
    return AngleGaps(
        phi_0m=min(initial.phi, TWO_PI - initial.phi),
        phi_sm=min(target.phi, TWO_PI - target.phi),
        theta_0s=abs(target.theta - initial.theta),
    )


def fidelity_up_to_phase(a, b) -> float:
    """|<a|b>|^2, clipped into [0, 1]."""
    f = abs(np.vdot(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))) ** 2
    return float(min(max(f, 0.0), 1.0))


def angular_distance(a: float, b: float) -> float:
    """Distance between two azimuths on the circle."""
    d = np.mod(a - b, TWO_PI)
    return float(min(d, TWO_PI - d))


def random_angles(rng: np.random.Generator) -> BlochAngles:
    """Haar-random pure state, as canonical angles."""
    z = rng.uniform(-1.0, 1.0)
    return BlochAngles.wrap(float(np.arccos(z)), rng.uniform(0.0, TWO_PI))
