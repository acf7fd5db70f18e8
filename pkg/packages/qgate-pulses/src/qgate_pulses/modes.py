"""Temporal modes of itinerant photons."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from qgate_common import ConfigError, DimensionError

logger = logging.getLogger(__name__)

NORM_TOL = 1e-6
DEFAULT_T_CUT_FACTOR = 4.6


def _complex_samples(value) -> np.ndarray:
    if isinstance(value, dict):
        arr = np.asarray(value["real"], dtype=float) + 1j * np.asarray(value["imag"], dtype=float)
    else:
        arr = np.array(value, dtype=complex)
    if arr.ndim != 1:
        raise ValueError("samples must be one-dimensional")
    if not np.all(np.isfinite(arr)):
        raise ValueError("samples must be finite")
    arr.setflags(write=False)
    return arr


class TemporalMode(BaseModel):
    """Complex envelope ξ(t) sampled at cell centers ``t0 + k*dt``.

    Units: samples in 1/√ns, times in ns, bandwidth in rad/ns.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    samples: np.ndarray
    dt: float
    t0: float
    bandwidth: float

    @field_validator("samples", mode="before")
    @classmethod
    def validate_samples(cls, v):
        return _complex_samples(v)

    @field_validator("dt", "bandwidth")
    @classmethod
    def validate_positive(cls, v):
        if v <= 0:
            raise ValueError("must be positive")
        return float(v)

    @model_validator(mode="after")
    def validate_norm(self):
        if self.energy() > 1.0 + NORM_TOL:
            raise ValueError(f"mode norm {self.energy():.8f} exceeds 1")
        return self

    @field_serializer("samples")
    def serialize_samples(self, samples: np.ndarray):
        return {"real": samples.real.tolist(), "imag": samples.imag.tolist()}

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)

    @property
    def t_end(self) -> float:
        """End of the last sample cell."""
        return self.t0 + self.dt * (self.samples.size - 0.5)

    def energy(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.dt)

    def with_phase(self, phase: float) -> "TemporalMode":
        return self.model_copy(update={"samples": _complex_samples(self.samples * np.exp(1j * phase))})

    def with_samples(self, samples) -> "TemporalMode":
        return TemporalMode(samples=samples, dt=self.dt, t0=self.t0, bandwidth=self.bandwidth)

    def shifted(self, delay: float) -> "TemporalMode":
        return self.model_copy(update={"t0": self.t0 + delay})

    def normalized(self) -> "TemporalMode":
        norm = np.sqrt(self.energy())
        if norm == 0.0:
            raise ValueError("cannot normalize an empty mode")
        return self.with_samples(self.samples / norm)

    def sample_at(self, t: np.ndarray) -> np.ndarray:
        """Piecewise-constant lookup; zero outside the support."""
        t = np.asarray(t, dtype=float)
        idx = np.floor((t - self.t0) / self.dt + 0.5).astype(int)
        inside = (idx >= 0) & (idx < self.samples.size)
        out = np.zeros(t.shape, dtype=complex)
        out[inside] = self.samples[idx[inside]]
        return out


def sech_envelope(t, bandwidth: float) -> np.ndarray:
    """ξ(t) = (√Γ/2)·sech(Γt/2)."""
    return 0.5 * np.sqrt(bandwidth) / np.cosh(0.5 * bandwidth * np.asarray(t, dtype=float))


def symmetric_grid(t_cut: float, dt: float) -> np.ndarray:
    """Cell centers of ``round(2*t_cut/dt)`` cells centered on t=0."""
    n = max(int(round(2.0 * t_cut / dt)), 1)
    return (np.arange(n) - 0.5 * (n - 1)) * dt


def sech_mode(bandwidth: float, dt: float = 1.0, t_cut: float | None = None) -> TemporalMode:
    """Sampled sech mode truncated to [-t_cut, t_cut] (default 4.6/Γ).

    Raises:
        ConfigError: non-positive inputs or t_cut·Γ < 1.
    """
    if bandwidth <= 0 or dt <= 0:
        raise ConfigError("bandwidth and dt must be positive")
    t_cut = DEFAULT_T_CUT_FACTOR / bandwidth if t_cut is None else t_cut
    if t_cut <= 0:
        raise ConfigError("t_cut must be positive")
    if t_cut * bandwidth < 1.0:
        raise ConfigError(
            f"t_cut*bandwidth = {t_cut * bandwidth:.3f} < 1 truncates the mode too strongly"
        )
    grid = symmetric_grid(t_cut, dt)
    return TemporalMode(
        samples=sech_envelope(grid, bandwidth).astype(complex),
        dt=dt,
        t0=float(grid[0]),
        bandwidth=bandwidth,
    )


def mode_overlap(first: TemporalMode, second: TemporalMode) -> complex:
    """⟨ξ1|ξ2⟩ = Σ conj(ξ1)·ξ2·dt on the union of both supports.

    Raises:
        DimensionError: different time steps or grids offset by a fraction of dt.
    """
    if not np.isclose(first.dt, second.dt, rtol=1e-12, atol=0.0):
        raise DimensionError(f"time steps differ: {first.dt} vs {second.dt}")
    shift = (second.t0 - first.t0) / first.dt
    offset = int(round(shift))
    if abs(shift - offset) > 1e-6:
        raise DimensionError("mode grids are not aligned to a common time step")
    a, b = first.samples, second.samples
    start = min(0, offset)
    stop = max(a.size, offset + b.size)
    pa = np.zeros(stop - start, dtype=complex)
    pb = np.zeros(stop - start, dtype=complex)
    pa[-start : -start + a.size] = a
    pb[offset - start : offset - start + b.size] = b
    return complex(np.sum(pa.conj() * pb) * first.dt)
