"""Logical qubit on span{|01>, |10>} of two physical qubits.

Logical controls are lifted onto the physical Hamiltonian

    H = u_zI sz(x)I + u_Iz I(x)sz + u_yx sy(x)sx + u_xy sx(x)sy

with ``u_zI = -u_Iz = uL_z/2`` and ``u_yx = -u_xy = uL_y/2``, which equals
``uL_z sL_z + uL_y sL_y`` and never couples the logical span to |00> or |11>.
Open-system dynamics follow the Lindblad form
``L(rho) = 1/2 sum_ij a_ij ([F_i, rho F_j^+] + [F_i rho, F_j^+])``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .bloch import BlochAngles, state_from_angles
from .propagate import SIGMA_Y, SIGMA_Z, PackedControls, rk4_on_grid, time_grid
from .schedule import Schedule

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)

ZI = np.kron(SIGMA_Z, I2)
IZ = np.kron(I2, SIGMA_Z)
YX = np.kron(SIGMA_Y, SIGMA_X)
XY = np.kron(SIGMA_X, SIGMA_Y)

LOGICAL = (1, 2)  # indices of |01> = |0_L> and |10> = |1_L>
LEAKAGE = (0, 3)

PSD_TOL = 1e-10
HERM_TOL = 1e-12


def logical_operators() -> tuple[np.ndarray, np.ndarray]:
    """(sigma^L_z, sigma^L_y) as 4x4 matrices."""
    return 0.5 * (ZI - IZ), 0.5 * (YX - XY)


def embed_logical(psi_logical) -> np.ndarray:
    a, b = np.asarray(psi_logical, dtype=complex)
    return np.array([0.0, a, b, 0.0], dtype=complex)


def project_logical(psi4) -> np.ndarray:
    return np.asarray(psi4, dtype=complex)[list(LOGICAL)]


def leakage(psi4) -> float:
    psi4 = np.asarray(psi4)
    return float(np.sum(np.abs(psi4[..., list(LEAKAGE)]) ** 2, axis=-1).max())


@dataclass(frozen=True)
class PhysicalControls:
    u_zI: np.ndarray
    u_Iz: np.ndarray
    u_yx: np.ndarray
    u_xy: np.ndarray


class LiftedHamiltonian:
    """Time-dependent physical Hamiltonian driven by a logical schedule."""

    def __init__(self, logical: Schedule):
        self.schedule = logical
        self._packed = PackedControls([logical])

    def physical_controls(self, t) -> PhysicalControls:
        if np.ndim(t) == 0:
            uz, uy = (float(v[0]) for v in self._packed(np.array([t])))
        else:
            uz, uy = self.schedule.controls(t)
        return PhysicalControls(0.5 * uz, -0.5 * uz, 0.5 * uy, -0.5 * uy)

    def __call__(self, t) -> np.ndarray:
        c = self.physical_controls(t)
        return c.u_zI * ZI + c.u_Iz * IZ + c.u_yx * YX + c.u_xy * XY


def lift_controls(logical: Schedule) -> LiftedHamiltonian:
    return LiftedHamiltonian(logical)


def _renormalize(psi):
    return psi / np.linalg.norm(psi)


def simulate_encoded(psi0_logical: BlochAngles, sched: Schedule, dt: float | None = None):
    """RK4 of the 4-level Schrodinger equation; returns (final state, max leakage)."""
    psi = embed_logical(state_from_angles(psi0_logical))
    if sched.t_f <= 0:
        return psi, leakage(psi)
    dt = sched.t_f * 1e-4 if dt is None else dt
    ham = lift_controls(sched)
    grid = time_grid(sched.t_f, dt, sched.breakpoints())
    states = rk4_on_grid(lambda t, y: -1j * (ham(t) @ y), psi, grid, post=_renormalize, keep=True)
    return states[-1], leakage(states)


# Open-system dynamics


def _as_matrix(obj) -> np.ndarray:
    """Decode nested [re, im] pairs into a complex array."""
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def _encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return np.stack([m.real, m.imag], axis=-1).tolist()


@dataclass(frozen=True)
class LindbladSpec:
    operators: tuple = field(default=())
    coefficients: np.ndarray = field(default_factory=lambda: np.zeros((0, 0)))

    def __post_init__(self):
        ops = tuple(np.asarray(f, dtype=complex) for f in self.operators)
        alpha = np.atleast_2d(np.asarray(self.coefficients, dtype=complex)) if ops else np.zeros((0, 0), complex)
        for f in ops:
            if f.shape != (4, 4):
                raise ValueError(f"Lindblad operators must be 4x4, got {f.shape}")
        if alpha.shape != (len(ops), len(ops)):
            raise ValueError(f"coefficient matrix shape {alpha.shape} does not match {len(ops)} operators")
        if alpha.size:
            if np.max(np.abs(alpha - alpha.conj().T)) > HERM_TOL:
                raise ValueError("coefficient matrix is not Hermitian")
            if np.linalg.eigvalsh(alpha).min() < -PSD_TOL:
                raise ValueError("coefficient matrix is not positive semidefinite")
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "coefficients", alpha)

    @classmethod
    def collective_dephasing(cls, gamma: float = 1.0) -> "LindbladSpec":
        return cls((ZI + IZ,), np.array([[gamma]]))

    @classmethod
    def from_dict(cls, d: dict) -> "LindbladSpec":
        return cls(tuple(_as_matrix(f) for f in d["operators"]), _as_matrix(d["coefficients"]))

    @classmethod
    def from_json(cls, text: str) -> "LindbladSpec":
        return cls.from_dict(json.loads(text))

    @classmethod
    def load(cls, path) -> "LindbladSpec":
        with open(path) as fh:
            return cls.from_json(fh.read())

    def to_dict(self) -> dict:
        return {"operators": [_encode_matrix(f) for f in self.operators],
                "coefficients": _encode_matrix(self.coefficients)}


def lindblad_apply(rho, spec: LindbladSpec) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(rho)
    ops = spec.operators
    for i, fi in enumerate(ops):
        for j, fj in enumerate(ops):
            a = spec.coefficients[i, j]
            if a == 0:
                continue
            fjd = fj.conj().T
            out += 0.5 * a * ((fi @ rho @ fjd - rho @ fjd @ fi) + (fi @ rho @ fjd - fjd @ fi @ rho))
    return out


def _hermitize(rho):
    return 0.5 * (rho + rho.conj().T)


def simulate_master_equation(rho0, sched: Schedule, spec: LindbladSpec, dt: float | None = None,
                             t_end: float | None = None, trajectory: bool = False):
    """RK4 for d rho/dt = -i[H(t), rho] + L(rho) under the lifted Hamiltonian.

    Integrates to ``t_end`` (default t_f). With ``trajectory=True`` returns
    (times, rhos) instead of the final density matrix.
    """
    rho0 = np.asarray(rho0, dtype=complex)
    t_end = sched.t_f if t_end is None else t_end
    if t_end <= 0:
        return (np.zeros(1), rho0[None].copy()) if trajectory else rho0.copy()
    dt = t_end * 1e-3 if dt is None else dt
    ham = lift_controls(sched)

    def rhs(t, rho):
        h = ham(t)
        return -1j * (h @ rho - rho @ h) + lindblad_apply(rho, spec)

    grid = time_grid(t_end, dt, [p for p in sched.breakpoints() if p < t_end])
    out = rk4_on_grid(rhs, rho0, grid, post=_hermitize, keep=trajectory)
    return (grid, out) if trajectory else out


def dfs_test_states(n_random: int = 20, seed: int = 0) -> list[np.ndarray]:
    s = 1 / np.sqrt(2)
    fixed = [(1, 0), (0, 1), (s, s), (s, -s), (s, 1j * s), (s, -1j * s)]
    rng = np.random.default_rng(seed)
    states = [embed_logical(v) for v in fixed]
    for _ in range(n_random):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        states.append(embed_logical(v / np.linalg.norm(v)))
    return states


def dfs_residual(spec: LindbladSpec, n_random: int = 20, seed: int = 0) -> float:
    """Largest Frobenius norm of L(|psi><psi|) over logical pure states."""
    worst = 0.0
    for psi in dfs_test_states(n_random, seed):
        worst = max(worst, float(np.linalg.norm(lindblad_apply(np.outer(psi, psi.conj()), spec))))
    return worst
