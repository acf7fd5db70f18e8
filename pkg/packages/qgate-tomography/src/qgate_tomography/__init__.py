"""qgate-tomography - field moments, state reconstruction and process tomography."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .moments import (
    MomentSet,
    extract_moments,
    joint_moments_from_state,
    moments_from_state,
    normalize_moments,
    project_moments,
)
from .process import (
    REDUCED_LABELS,
    ProcessTomographyResult,
    chi_from_io,
    degraded_inputs,
    ideal_runner,
    process_tomography,
)
from .reconstruction import reconstruct_qubit_state, reconstruct_two_mode_state

__all__ = [
    "MomentSet",
    "ProcessTomographyResult",
    "REDUCED_LABELS",
    "chi_from_io",
    "degraded_inputs",
    "extract_moments",
    "ideal_runner",
    "joint_moments_from_state",
    "moments_from_state",
    "normalize_moments",
    "process_tomography",
    "project_moments",
    "reconstruct_qubit_state",
    "reconstruct_two_mode_state",
]
