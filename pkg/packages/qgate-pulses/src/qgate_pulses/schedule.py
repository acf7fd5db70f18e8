"""Timed pulse schedules for the photonic gate set."""

import json
import logging
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from qgate_common import ConfigError

from .coupling import CouplingWaveform, absorption_coupling, emission_coupling
from .drag import drag_duration
from .modes import DEFAULT_T_CUT_FACTOR

logger = logging.getLogger(__name__)

Chip = Literal["source", "gate"]

SINGLE_QUBIT_GATES = ("I", "X", "Y", "T")
GATE_LABELS = SINGLE_QUBIT_GATES + ("CPHASE",)

TIME_TOL = 1e-9


class _Event(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t_start: float
    channel: Chip

    @property
    def duration(self) -> float:
        return 0.0

    @property
    def t_end(self) -> float:
        return self.t_start + self.duration

    @property
    def lane(self) -> str | None:
        """Control lane occupied over [t_start, t_end); None for instantaneous events."""
        return None


class CouplingEvent(_Event):
    kind: Literal["coupling"] = "coupling"
    waveform: CouplingWaveform

    @property
    def duration(self) -> float:
        return self.waveform.duration

    @property
    def lane(self) -> str:
        return f"{self.channel}.coupler"


class DriveEvent(_Event):
    """Parametric |f0⟩↔|e1⟩ drive of constant rate on the gate coupler."""

    kind: Literal["drive"] = "drive"
    rate: float
    length: float
    detuning: float = 0.0

    @property
    def duration(self) -> float:
        return self.length

    @property
    def lane(self) -> str:
        return f"{self.channel}.coupler"


class RotationEvent(_Event):
    """Rotation by ``angle`` about the equatorial axis at ``axis_phase``.

    With ``sigma`` set, the rotation is the unitary of a DRAG pulse of that
    width, applied at ``t_start``; without it, the ideal qubit rotation.
    """

    kind: Literal["rotation"] = "rotation"
    angle: float
    axis_phase: float = 0.0
    sigma: float | None = Field(default=None, gt=0)
    n_sigma: float = Field(default=3.0, gt=0)


class IdleEvent(_Event):
    kind: Literal["idle"] = "idle"
    length: float

    @property
    def duration(self) -> float:
        return self.length

    @property
    def lane(self) -> str:
        return f"{self.channel}.qubit"


class FramePhaseEvent(_Event):
    kind: Literal["frame_phase"] = "frame_phase"
    phase: float


Event = Annotated[
    Union[CouplingEvent, DriveEvent, RotationEvent, IdleEvent, FramePhaseEvent],
    Field(discriminator="kind"),
]

_EVENT_ADAPTER = TypeAdapter(Event)
_COMMON_FIELDS = ("t_start", "channel", "kind")


class PulseSchedule(BaseModel):
    """Ordered, non-overlapping (per lane) control events.

    ``phase_ratio`` converts frame-phase events into the phase applied to
    later coupling waveforms on the same chip: J → J·exp(i·r·φ_frame).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    events: tuple[Event, ...]
    phase_ratio: float = 1.0

    @model_validator(mode="after")
    def validate_events(self):
        ordered = tuple(sorted(self.events, key=lambda e: e.t_start))
        object.__setattr__(self, "events", ordered)
        by_lane: dict[str, list] = {}
        for event in ordered:
            if event.lane is not None:
                by_lane.setdefault(event.lane, []).append(event)
        for lane, items in by_lane.items():
            for prev, nxt in zip(items, items[1:]):
                if nxt.t_start < prev.t_end - TIME_TOL:
                    raise ValueError(
                        f"events overlap on {lane}: {prev.kind}@{prev.t_start:g} and {nxt.kind}@{nxt.t_start:g}"
                    )
        return self

    @property
    def duration(self) -> float:
        return max((e.t_end for e in self.events), default=0.0)

    def of_kind(self, kind: str) -> list:
        return [e for e in self.events if e.kind == kind]

    def window(self, t_from: float, t_to: float) -> "PulseSchedule":
        """Events starting in [t_from, t_to)."""
        kept = [e for e in self.events if t_from - TIME_TOL <= e.t_start < t_to - TIME_TOL]
        return PulseSchedule(events=kept, phase_ratio=self.phase_ratio)

    def frame_phase(self, channel: str, t: float) -> float:
        return sum(
            e.phase for e in self.of_kind("frame_phase") if e.channel == channel and e.t_start <= t + TIME_TOL
        )

    def control_samples(self, t_origin: float, dt: float, n_steps: int) -> dict[str, np.ndarray]:
        """Rasterize onto the piecewise-constant grid [t_origin + k*dt, +dt).

        Returns complex arrays keyed ``coupling.source``, ``coupling.gate``,
        ``drive.rate``, ``drive.detuning`` and ``drive.active``.
        """
        keys = ("coupling.source", "coupling.gate", "drive.rate", "drive.detuning", "drive.active")
        out = {k: np.zeros(n_steps, dtype=complex) for k in keys}
        starts = t_origin + dt * np.arange(n_steps)
        for event in self.events:
            if isinstance(event, CouplingEvent):
                wf = event.waveform
                if not np.isclose(wf.dt, dt):
                    raise ConfigError(f"waveform dt {wf.dt} differs from grid dt {dt}")
                offset = int(round((event.t_start - t_origin) / dt))
                lo, hi = max(offset, 0), min(offset + wf.samples.size, n_steps)
                if hi <= lo:
                    continue
                phase = np.exp(1j * self.phase_ratio * self.frame_phase(event.channel, event.t_start))
                out[f"coupling.{event.channel}"][lo:hi] = wf.samples[lo - offset : hi - offset] * phase
            elif isinstance(event, DriveEvent):
                active = (starts >= event.t_start - TIME_TOL) & (starts < event.t_end - TIME_TOL)
                out["drive.rate"][active] = event.rate
                out["drive.detuning"][active] = event.detuning
                out["drive.active"][active] = 1.0
        return out

    def to_json(self) -> str:
        records = []
        for event in self.events:
            data = event.model_dump(mode="json")
            records.append(
                {
                    "t_start": data.pop("t_start"),
                    "channel": data.pop("channel"),
                    "kind": data.pop("kind"),
                    "params": data,
                }
            )
        return json.dumps({"phase_ratio": self.phase_ratio, "events": records})

    @classmethod
    def from_json(cls, text: str) -> "PulseSchedule":
        payload = json.loads(text)
        events = []
        for record in payload["events"]:
            merged = {k: record[k] for k in _COMMON_FIELDS}
            merged.update(record.get("params", {}))
            events.append(_EVENT_ADAPTER.validate_python(merged))
        return cls(events=events, phase_ratio=payload.get("phase_ratio", 1.0))


class ScheduleOptions(BaseModel):
    """Rates in rad/ns, times in ns."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    bandwidth: float = Field(gt=0)
    kappa_source: float = Field(gt=0)
    kappa_gate: float = Field(gt=0)
    dt: float = Field(default=1.0, gt=0)
    t_cut_factor: float = Field(default=DEFAULT_T_CUT_FACTOR, gt=0)
    absorb_delay: float = 0.0
    drag_sigma: float = Field(default=6.0, gt=0)
    drag_n_sigma: float = Field(default=3.0, gt=0)
    t_frame_phase: float = np.pi / 4
    phase_ratio: float = 1.0
    cphase_rate: float = Field(default=2 * np.pi * 1.6e-3, ge=0)
    cphase_detuning: float = 0.0
    # P2 bin starts this many bins after P1's; 1 means consecutive bins.
    gap_bins: float = Field(default=1.0, ge=1)

    @property
    def t_cut(self) -> float:
        return self.t_cut_factor / self.bandwidth

    @property
    def slot_duration(self) -> float:
        return drag_duration(self.drag_sigma, self.drag_n_sigma)


class GateTiming(BaseModel):
    """Key instants of a generated schedule."""

    model_config = ConfigDict(frozen=True)

    bin_length: float
    absorb_start: float
    slot_start: float
    slot_end: float
    emit_start: float
    end: float


def _rotation_for(gate_label: str, options: ScheduleOptions, t_start: float) -> RotationEvent | None:
    axes = {"X": 0.0, "Y": np.pi / 2}
    if gate_label not in axes:
        return None
    return RotationEvent(
        t_start=t_start,
        channel="gate",
        angle=np.pi,
        axis_phase=axes[gate_label],
        sigma=options.drag_sigma,
        n_sigma=options.drag_n_sigma,
    )


def gate_timing(gate_label: str, options: ScheduleOptions) -> GateTiming:
    emit = emission_coupling(options.bandwidth, options.kappa_source, options.dt, options.t_cut)
    bin_length = emit.duration
    absorb_start = options.absorb_delay
    slot_start = absorb_start + bin_length
    if gate_label == "CPHASE":
        slot_end = absorb_start + options.gap_bins * bin_length + bin_length
    else:
        slot_end = slot_start + options.slot_duration
    return GateTiming(
        bin_length=bin_length,
        absorb_start=absorb_start,
        slot_start=slot_start,
        slot_end=slot_end,
        emit_start=slot_end,
        end=slot_end + bin_length,
    )


def build_schedule(gate_label: str, options: ScheduleOptions) -> PulseSchedule:
    """Source emission, gate absorption, gate slot and gate re-emission.

    Single-qubit gates fill a fixed slot with an idle (plus a DRAG rotation
    for X and Y, or a frame phase for T). CPHASE idles until the P2 time bin,
    ``gap_bins`` bins after P1's, then drives the |f0⟩↔|e1⟩ transition for
    that bin while P2 reflects.

    Raises:
        ConfigError: unknown gate label.
    """
    if gate_label not in GATE_LABELS:
        raise ConfigError(f"Unknown gate '{gate_label}'. Valid gates: {', '.join(GATE_LABELS)}")
    timing = gate_timing(gate_label, options)
    source_emit = emission_coupling(options.bandwidth, options.kappa_source, options.dt, options.t_cut)
    gate_emit = emission_coupling(options.bandwidth, options.kappa_gate, options.dt, options.t_cut)

    events: list = [
        CouplingEvent(t_start=0.0, channel="source", waveform=source_emit),
        CouplingEvent(t_start=timing.absorb_start, channel="gate", waveform=absorption_coupling(gate_emit)),
    ]
    if gate_label == "CPHASE":
        gap = timing.slot_end - timing.bin_length - timing.slot_start
        if gap > TIME_TOL:
            events.append(IdleEvent(t_start=timing.slot_start, channel="gate", length=gap))
        events.append(
            DriveEvent(
                t_start=timing.slot_end - timing.bin_length,
                channel="gate",
                rate=options.cphase_rate,
                length=timing.bin_length,
                detuning=options.cphase_detuning,
            )
        )
    else:
        events.append(IdleEvent(t_start=timing.slot_start, channel="gate", length=options.slot_duration))
        rotation = _rotation_for(gate_label, options, timing.slot_start)
        if rotation is not None:
            events.append(rotation)
        if gate_label == "T":
            events.append(FramePhaseEvent(t_start=timing.slot_start, channel="gate", phase=options.t_frame_phase))
    events.append(CouplingEvent(t_start=timing.emit_start, channel="gate", waveform=gate_emit))
    logger.debug("Built %s schedule with %d events, %.1f ns", gate_label, len(events), timing.end)
    return PulseSchedule(events=events, phase_ratio=options.phase_ratio)
