"""qgate-pulses - temporal modes, coupler waveforms and gate schedules."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .calibration import (
    CouplerCalibration,
    amplitude_for_coupling,
    coupling_for_amplitude,
    synthetic_calibration,
    waveform_to_amplitude,
)
from .coupling import (
    CouplingWaveform,
    absorption_coupling,
    emission_coupling,
    emission_coupling_at,
    square_pulse,
)
from .drag import drag_duration, drag_envelope
from .modes import (
    DEFAULT_T_CUT_FACTOR,
    TemporalMode,
    mode_overlap,
    sech_envelope,
    sech_mode,
    symmetric_grid,
)
from .schedule import (
    GATE_LABELS,
    SINGLE_QUBIT_GATES,
    CouplingEvent,
    DriveEvent,
    FramePhaseEvent,
    GateTiming,
    IdleEvent,
    PulseSchedule,
    RotationEvent,
    ScheduleOptions,
    build_schedule,
    gate_timing,
)

__all__ = [
    "DEFAULT_T_CUT_FACTOR",
    "GATE_LABELS",
    "SINGLE_QUBIT_GATES",
    "CouplerCalibration",
    "CouplingEvent",
    "CouplingWaveform",
    "DriveEvent",
    "FramePhaseEvent",
    "GateTiming",
    "IdleEvent",
    "PulseSchedule",
    "RotationEvent",
    "ScheduleOptions",
    "TemporalMode",
    "absorption_coupling",
    "amplitude_for_coupling",
    "build_schedule",
    "coupling_for_amplitude",
    "drag_duration",
    "drag_envelope",
    "emission_coupling",
    "emission_coupling_at",
    "gate_timing",
    "mode_overlap",
    "sech_envelope",
    "sech_mode",
    "square_pulse",
    "symmetric_grid",
    "synthetic_calibration",
    "waveform_to_amplitude",
]
