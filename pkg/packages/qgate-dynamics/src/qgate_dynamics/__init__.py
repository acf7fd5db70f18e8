"""qgate-dynamics - cascaded two-chip Lindblad model, emission and reflection."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .emission import (
    EMITTED_FIELD_PHASE,
    capture_coupling,
    emitted_reference_mode,
    rabi_emission_profile,
    rabi_population,
)
from .model import (
    CONTROL_CHANNELS,
    LAYOUT_CHIPS,
    CascadedModel,
    Mode,
    build_hamiltonian,
    collapse_ops,
    excitation_number,
    static_hamiltonian,
)
from .params import DeviceParams, gate_device, mhz_to_rate, source_device
from .reflection import reflect_mode, reflection_spectrum
from .solver import (
    ControlGrid,
    LindbladGenerator,
    TrajectoryResult,
    drag_unitary,
    emitted_excitation,
    event_unitary,
    evolve,
    idle_channel,
    output_amplitude,
    propagate,
    rotation_unitary,
    schedule_controls,
)

__all__ = [
    "CONTROL_CHANNELS",
    "EMITTED_FIELD_PHASE",
    "LAYOUT_CHIPS",
    "CascadedModel",
    "ControlGrid",
    "DeviceParams",
    "LindbladGenerator",
    "Mode",
    "TrajectoryResult",
    "build_hamiltonian",
    "capture_coupling",
    "collapse_ops",
    "drag_unitary",
    "emitted_excitation",
    "emitted_reference_mode",
    "event_unitary",
    "evolve",
    "excitation_number",
    "gate_device",
    "idle_channel",
    "mhz_to_rate",
    "output_amplitude",
    "propagate",
    "rabi_emission_profile",
    "rabi_population",
    "reflect_mode",
    "reflection_spectrum",
    "rotation_unitary",
    "schedule_controls",
    "source_device",
    "static_hamiltonian",
]
