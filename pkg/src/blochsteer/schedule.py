"""Control schedules: shaped pulses on rotation axes in the y-z plane.

A schedule is an ordered tuple of :class:`PulseSegment`. Each segment drives
``H = sign * u(t) * (cos(theta_u) sigma_z + sin(theta_u) sigma_y)`` over its
window, so its Bloch-sphere rotation angle is twice its pulse area.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import pulses
from .pulses import PulseShape, PulseWindow


class Scheme(str, Enum):
    THREE = "three"
    ONE = "one"


@dataclass(frozen=True)
class Axis:
    kind: str  # "z", "y" or "tilted"
    theta_u: float

    @classmethod
    def z(cls) -> "Axis":
        return cls("z", 0.0)

    @classmethod
    def y(cls) -> "Axis":
        return cls("y", np.pi / 2)

    @classmethod
    def tilted(cls, theta_u: float) -> "Axis":
        return cls("tilted", float(theta_u))

    @property
    def components(self) -> tuple[float, float]:
        """Weights (c_z, c_y) of sigma_z and sigma_y in the rotation generator."""
        if self.kind == "z":
            return 1.0, 0.0
        if self.kind == "y":
            return 0.0, 1.0
        return float(np.cos(self.theta_u)), float(np.sin(self.theta_u))

    def to_json(self):
        return self.kind if self.kind in ("z", "y") else {"tilted": self.theta_u}

    @classmethod
    def from_json(cls, obj) -> "Axis":
        if obj == "z":
            return cls.z()
        if obj == "y":
            return cls.y()
        if isinstance(obj, dict) and set(obj) == {"tilted"}:
            return cls.tilted(float(obj["tilted"]))
        raise ValueError(f"bad axis specification {obj!r}")


@dataclass(frozen=True)
class PulseSegment:
    axis: Axis
    shape: PulseShape
    window: PulseWindow
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")

    @property
    def area(self) -> float:
        return pulses.pulse_area(self.shape, self.window)

    @property
    def rotation_angle(self) -> float:
        return 2.0 * self.area

    @property
    def energy(self) -> float:
        return pulses.pulse_energy(self.shape, self.window)

    def controls(self, t):
        """Physical (u_z, u_y) contributed by this segment at time(s) t."""
        f = self.sign * np.asarray(pulses.eval(self.shape, self.window, t))
        cz, cy = self.axis.components
        return cz * f, cy * f


@dataclass(frozen=True)
class Schedule:
    segments: tuple[PulseSegment, ...]
    t_f: float
    scheme: Scheme
    shape: PulseShape
    lam: float | None = None
    magnitude: float | None = None
    clamped: bool = False

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        end = 0.0
        for seg in self.segments:
            if seg.window.t0 < end - 1e-12:
                raise ValueError("segments overlap or are out of order")
            end = seg.window.t1
        if self.segments and abs(end - self.t_f) > 1e-12 * max(1.0, self.t_f):
            raise ValueError(f"last segment ends at {end}, but t_f={self.t_f}")
        if self.scheme == Scheme.THREE and len(self.segments) > 3:
            raise ValueError("a three-rotation schedule has at most 3 segments")

    def __len__(self):
        return len(self.segments)

    def controls(self, t):
        """Total (u_z, u_y) at time(s) t; zero outside every window."""
        t = np.asarray(t, dtype=float)
        uz = np.zeros_like(t)
        uy = np.zeros_like(t)
        for seg in self.segments:
            cz, cy = seg.controls(t)
            uz = uz + cz
            uy = uy + cy
        return uz, uy

    def breakpoints(self) -> np.ndarray:
        """Times where the controls or their derivative may jump."""
        pts = [0.0, self.t_f]
        for seg in self.segments:
            w = seg.window
            pts += [w.t0, 0.5 * (w.t0 + w.t1), w.t1]
        return np.unique(np.asarray(pts))

    def energy(self) -> float:
        return sum(seg.energy for seg in self.segments)

    # serialization

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme.value,
            "shape": self.shape.value,
            "t_f": self.t_f,
            "lambda": self.lam,
            "magnitude": self.magnitude,
            "clamped": self.clamped,
            "segments": [
                {
                    "axis": seg.axis.to_json(),
                    "shape": seg.shape.value,
                    "t0": seg.window.t0,
                    "t1": seg.window.t1,
                    "magnitude": seg.window.magnitude,
                    "sign": seg.sign,
                }
                for seg in self.segments
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Schedule":
        segs = [
            PulseSegment(
                axis=Axis.from_json(s["axis"]),
                shape=PulseShape(s["shape"]),
                window=PulseWindow(float(s["t0"]), float(s["t1"]), float(s["magnitude"])),
                sign=int(s["sign"]),
            )
            for s in d["segments"]
        ]
        lam = d.get("lambda")
        mag = d.get("magnitude")
        return cls(
            segments=tuple(segs),
            t_f=float(d["t_f"]),
            scheme=Scheme(d["scheme"]),
            shape=PulseShape(d["shape"]),
            lam=None if lam is None else float(lam),
            magnitude=None if mag is None else float(mag),
            clamped=bool(d.get("clamped", False)),
        )

    def to_json(self, **kwargs) -> str:
        # json writes floats with repr(), which round-trips exactly
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "Schedule":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class PerformanceReport:
    t_f: float
    energy: float
    j_value: float
    te_product: float
    magnitude_used: float
    clamped: bool = False
    lam: float = field(default=float("nan"), repr=False)

    @classmethod
    def from_parts(cls, lam: float, t_f: float, energy: float, magnitude: float, clamped: bool):
        return cls(
            t_f=t_f,
            energy=energy,
            j_value=lam * t_f + energy,
            te_product=t_f * energy,
            magnitude_used=magnitude,
            clamped=clamped,
            lam=lam,
        )


def sign_of(x: float) -> int:
    """Sign with sign(0) = +1."""
    return -1 if x < 0 else 1
