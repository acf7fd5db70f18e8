"""Experiment specifications: device parameters, link settings and sweeps."""

import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from qgate_common import ConfigError
from qgate_dynamics import CascadedModel, DeviceParams, gate_device, mhz_to_rate, source_device
from qgate_pulses import ScheduleOptions


class LinkSettings(BaseModel):
    """Circulator link, pulse shaping and gate timing. Frequencies in MHz, times in ns."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    eta_loss: float = Field(default=0.75, ge=0.0, le=1.0)
    decoherence: bool = True
    dt: float = Field(default=1.0, gt=0)
    waveform_kappa: Literal["fitted", "spectroscopic"] = "fitted"
    bandwidth_mhz: float | None = Field(default=None, gt=0)
    t_cut_factor: float = Field(default=4.6, gt=0)
    absorb_delay: float = 0.0
    drag_sigma: float = Field(default=6.0, gt=0)
    drag_n_sigma: float = Field(default=3.0, gt=0)
    t_frame_phase: float = math.pi / 4
    phase_ratio: float = 1.0
    cphase_rate_mhz: float = Field(default=1.6, ge=0)
    cphase_detuning_mhz: float = 0.0
    # P2 time bin starts gap_bins bins after P1's.
    gap_bins: float = Field(default=1.0, ge=1)
    reemit_hold_bins: float = Field(default=0.5, ge=0)
    input_eta: float = Field(default=0.75, gt=0.0, le=1.0)
    normalization: Literal["ideal", "reference"] = "ideal"


class Sweep(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    axis: str
    values: tuple[float, ...] = Field(min_length=1)

    @field_validator("values")
    @classmethod
    def validate_finite(cls, v):
        if not all(math.isfinite(x) for x in v):
            raise ValueError("sweep values must be finite")
        return v


class ExperimentSpec(BaseModel):
    """Everything a registered experiment needs to run deterministically."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str
    source: DeviceParams = Field(default_factory=source_device)
    gate: DeviceParams = Field(default_factory=gate_device)
    link: LinkSettings = Field(default_factory=LinkSettings)
    sweep: Sweep | None = None
    seed: int = 0
    workers: int | None = Field(default=None, ge=1)

    @property
    def bandwidth(self) -> float:
        """Photon bandwidth Γ in rad/ns; the spectroscopic source κ unless set."""
        mhz = self.link.bandwidth_mhz if self.link.bandwidth_mhz is not None else self.source.kappa_mhz
        return mhz_to_rate(mhz)

    def waveform_kappa(self, chip: str) -> float:
        device = self.source if chip == "source" else self.gate
        return device.kappa_fit if self.link.waveform_kappa == "fitted" else device.kappa

    def schedule_options(self) -> ScheduleOptions:
        link = self.link
        return ScheduleOptions(
            bandwidth=self.bandwidth,
            kappa_source=self.waveform_kappa("source"),
            kappa_gate=self.waveform_kappa("gate"),
            dt=link.dt,
            t_cut_factor=link.t_cut_factor,
            absorb_delay=link.absorb_delay,
            drag_sigma=link.drag_sigma,
            drag_n_sigma=link.drag_n_sigma,
            t_frame_phase=link.t_frame_phase,
            phase_ratio=link.phase_ratio,
            cphase_rate=mhz_to_rate(link.cphase_rate_mhz),
            cphase_detuning=mhz_to_rate(link.cphase_detuning_mhz),
            gap_bins=link.gap_bins,
        )

    def model(self, layout: str = "link", capture: bool = False, **overrides) -> CascadedModel:
        params = dict(
            source=self.source,
            gate=self.gate,
            eta_loss=self.link.eta_loss,
            layout=layout,
            capture=capture,
            decoherence=self.link.decoherence,
            dt=self.link.dt,
        )
        params.update(overrides)
        return CascadedModel(**params)

    def with_link(self, **changes) -> "ExperimentSpec":
        return self.model_copy(update={"link": self.link.model_copy(update=changes)})

    def sweep_values(self, axis: str, default) -> list[float]:
        """Values of the experiment's sweep axis, or ``default`` when no sweep is configured.

        Raises:
            ConfigError: the configured sweep names another axis.
        """
        if self.sweep is None:
            return [float(x) for x in default]
        if self.sweep.axis != axis:
            raise ConfigError(
                f"experiment '{self.name}' sweeps '{axis}', not '{self.sweep.axis}'", key_path="run.sweep.axis"
            )
        return list(self.sweep.values)
