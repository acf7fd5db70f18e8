"""Shaped coupler waveforms J(t) for photon emission and absorption."""

import io
import logging
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator

from qgate_common import ConfigError

from .modes import DEFAULT_T_CUT_FACTOR, symmetric_grid

logger = logging.getLogger(__name__)


class CouplingWaveform(BaseModel):
    """Non-negative coupling rate per time step (rad/ns)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    samples: np.ndarray
    dt: float
    t0: float
    direction: Literal["emit", "absorb"] = "emit"

    @field_validator("samples", mode="before")
    @classmethod
    def validate_samples(cls, v):
        arr = np.array(v, dtype=float)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coupling samples must be finite")
        if np.any(arr < 0):
            raise ValueError("coupling samples must be non-negative")
        arr.setflags(write=False)
        return arr

    @field_validator("dt")
    @classmethod
    def validate_dt(cls, v):
        if v <= 0:
            raise ValueError("dt must be positive")
        return float(v)

    @field_serializer("samples")
    def serialize_samples(self, samples: np.ndarray):
        return samples.tolist()

    @property
    def duration(self) -> float:
        return self.samples.size * self.dt

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    def energy(self) -> float:
        return float(np.sum(self.samples**2) * self.dt)

    def time_reversed(self) -> "CouplingWaveform":
        flipped = "absorb" if self.direction == "emit" else "emit"
        return CouplingWaveform(
            samples=self.samples[::-1], dt=self.dt, t0=self.t0, direction=flipped
        )

    def to_csv(self) -> str:
        buffer = io.StringIO()
        np.savetxt(
            buffer,
            np.column_stack([self.times, self.samples]),
            delimiter=",",
            header="t,value",
            comments="",
            fmt="%.17g",
        )
        return buffer.getvalue()


def emission_coupling_at(t, bandwidth: float, kappa: float) -> np.ndarray:
    """Coupling that makes a converter of decay rate κ emit a sech mode of bandwidth Γ."""
    g, k = bandwidth, kappa
    e = np.exp(g * np.asarray(t, dtype=float))
    radicand = (1.0 + e) * k / g - e
    numerator = g * (-e + 1.0 + k * (1.0 + e) / g)
    return numerator / (4.0 * np.cosh(0.5 * g * np.asarray(t, dtype=float)) * np.sqrt(radicand))


def emission_coupling(
    bandwidth: float,
    kappa: float,
    dt: float = 1.0,
    t_cut: float | None = None,
) -> CouplingWaveform:
    """Emission waveform on the symmetric grid [-t_cut, t_cut] (default 4.6/Γ).

    Raises:
        ConfigError: Γ > κ, since the photon cannot be faster than the converter.
    """
    if bandwidth <= 0 or kappa <= 0:
        raise ConfigError("bandwidth and kappa must be positive")
    if bandwidth > kappa * (1.0 + 1e-12):
        raise ConfigError(
            f"photon bandwidth {bandwidth:.6g} rad/ns exceeds converter decay rate "
            f"{kappa:.6g} rad/ns; the bandwidth is bound by the coupling rate"
        )
    t_cut = DEFAULT_T_CUT_FACTOR / bandwidth if t_cut is None else t_cut
    grid = symmetric_grid(t_cut, dt)
    samples = emission_coupling_at(grid, bandwidth, max(kappa, bandwidth))
    return CouplingWaveform(samples=samples, dt=dt, t0=float(grid[0]), direction="emit")


def absorption_coupling(emit: CouplingWaveform) -> CouplingWaveform:
    """Time-reversed coupling J(-t); applying it twice returns the original."""
    return emit.time_reversed()


def square_pulse(rate: float, duration: float, dt: float = 1.0) -> CouplingWaveform:
    """Constant coupling segment used by the calibration chevrons."""
    if rate < 0 or duration < 0:
        raise ConfigError("rate and duration must be non-negative")
    n = int(round(duration / dt))
    return CouplingWaveform(samples=np.full(n, float(rate)), dt=dt, t0=0.5 * dt)
