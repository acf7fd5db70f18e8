"""Quadratic maps between normalized coupler amplitude A and coupling rate J."""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from qgate_common import ConfigError

from .coupling import CouplingWaveform

logger = logging.getLogger(__name__)

AMPLITUDE_TOL = 1e-12


class CouplerCalibration(BaseModel):
    """J(A) = linear·A + quadratic·A² in rad/ns, monotone on [0, 1]."""

    model_config = ConfigDict(frozen=True)

    linear: float
    quadratic: float

    @model_validator(mode="after")
    def validate_monotone(self):
        if self.linear < 0 or self.linear + 2.0 * self.quadratic < 0:
            raise ValueError("calibration must be monotone increasing on [0, 1]")
        if self.max_coupling <= 0:
            raise ValueError("calibration must reach a positive coupling at A=1")
        return self

    @property
    def max_coupling(self) -> float:
        return self.linear + self.quadratic


def synthetic_calibration() -> CouplerCalibration:
    """Calibration used when no measured coefficients are configured."""
    return CouplerCalibration(linear=2 * np.pi * 0.6e-3, quadratic=2 * np.pi * 1.8e-3)


def coupling_for_amplitude(calib: CouplerCalibration, amplitude):
    a = np.asarray(amplitude, dtype=float)
    if np.any(a < -AMPLITUDE_TOL) or np.any(a > 1.0 + AMPLITUDE_TOL):
        raise ConfigError("amplitude must lie in [0, 1]")
    j = calib.linear * a + calib.quadratic * a**2
    return float(j) if np.ndim(j) == 0 else j


def amplitude_for_coupling(calib: CouplerCalibration, coupling):
    """Inverse of :func:`coupling_for_amplitude`.

    Raises:
        ConfigError: coupling outside [0, J(1)], naming the calibrated maximum.
    """
    j = np.asarray(coupling, dtype=float)
    j_max = calib.max_coupling
    if np.any(j < 0):
        raise ConfigError("coupling rate must be non-negative")
    if np.any(j > j_max * (1.0 + 1e-12)):
        raise ConfigError(
            f"coupling {np.max(j):.6g} rad/ns exceeds calibrated maximum {j_max:.6g} rad/ns"
        )
    root = np.sqrt(calib.linear**2 + 4.0 * calib.quadratic * j)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(j == 0.0, 0.0, 2.0 * j / (calib.linear + root))
    a = np.clip(a, 0.0, 1.0)
    return float(a) if np.ndim(a) == 0 else a


def waveform_to_amplitude(calib: CouplerCalibration, waveform: CouplingWaveform) -> np.ndarray:
    """Normalized drive amplitude A(t) realizing a coupling waveform."""
    return np.atleast_1d(amplitude_for_coupling(calib, waveform.samples))
