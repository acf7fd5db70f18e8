"""Resonance-fluorescence spectra of a driven converter and the global link-efficiency fit."""

import logging
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer

from qgate_common import ConfigError

from .optimizer import multi_start_least_squares
from .result import FitResult

logger = logging.getLogger(__name__)


def mollow_psd_model(delta_mhz, p0: float, omega_mhz: float, kappa_mhz: float, f0_mhz: float = 0.0) -> np.ndarray:
    """Incoherent power spectral density of a resonantly driven two-level emitter.

    The product p₊p₋ = (5κ² + 8x² − 8Ω²)² − 9κ²(κ² − 16Ω²) is evaluated as a
    real polynomial, which also covers Ω > κ/4.
    """
    x = np.asarray(delta_mhz, dtype=float) - f0_mhz
    k, w = kappa_mhz, omega_mhz
    base = 5.0 * k**2 + 8.0 * x**2 - 8.0 * w**2
    pp = base**2 - 9.0 * k**2 * (k**2 - 16.0 * w**2)
    numerator = 64.0 * k * w**4 * (2.0 * k**2 + 2.0 * x**2 + w**2)
    denominator = np.pi * (k**2 + 4.0 * x**2) * (k**2 + 2.0 * w**2) * pp
    return p0 * k * numerator / denominator


class MollowTrace(BaseModel):
    """One measured spectrum at a nominal drive rate."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    device: str
    omega_mhz: float
    delta_mhz: np.ndarray
    psd: np.ndarray

    @field_serializer("delta_mhz", "psd")
    def serialize_array(self, arr: np.ndarray):
        return arr.tolist()


def _layout(traces: Sequence[MollowTrace]) -> tuple[list[str], list[str]]:
    devices = list(dict.fromkeys(t.device for t in traces))
    names = []
    for dev in devices:
        names += [f"p0_{dev}", f"kappa_mhz_{dev}", f"f0_mhz_{dev}"]
    names += [f"omega_mhz_{i}" for i in range(len(traces))]
    return devices, names


def fit_mollow_global(
    traces: Sequence[MollowTrace],
    kappa_guess_mhz: dict[str, float],
    workers: int | None = 1,
) -> FitResult:
    """Joint fit with κ, f0, P0 shared per device and Ω per trace.

    All data are divided by one common scale before fitting, so only the
    ratio of the device amplitudes is identified independently of units.
    """
    if not traces:
        raise ConfigError("at least one trace is required")
    devices, names = _layout(traces)
    scale = max(float(np.max(np.abs(t.psd))) for t in traces) or 1.0
    index = {name: i for i, name in enumerate(names)}

    x0 = np.zeros(len(names))
    for dev in devices:
        kappa = kappa_guess_mhz.get(dev)
        if kappa is None:
            raise ConfigError(f"no linewidth guess for device '{dev}'")
        ratios = []
        for t in traces:
            if t.device == dev:
                unit = mollow_psd_model(t.delta_mhz, 1.0, t.omega_mhz, kappa)
                ratios.append(np.max(t.psd) / scale / np.max(unit))
        x0[index[f"p0_{dev}"]] = float(np.median(ratios))
        x0[index[f"kappa_mhz_{dev}"]] = kappa
    for i, t in enumerate(traces):
        x0[index[f"omega_mhz_{i}"]] = t.omega_mhz

    def residuals(p):
        out = []
        for i, t in enumerate(traces):
            model = mollow_psd_model(
                t.delta_mhz,
                p[index[f"p0_{t.device}"]],
                p[index[f"omega_mhz_{i}"]],
                p[index[f"kappa_mhz_{t.device}"]],
                p[index[f"f0_mhz_{t.device}"]],
            )
            out.append(model - t.psd / scale)
        return np.concatenate(out)

    lower = np.array([1e-9 if n.startswith(("p0", "kappa", "omega")) else -np.inf for n in names])
    upper = np.full(len(names), np.inf)
    fit = multi_start_least_squares(
        residuals,
        x0,
        names=names,
        model="mollow_global",
        bounds=(lower, upper),
        units={n: ("arb" if n.startswith("p0") else "MHz") for n in names},
        workers=workers,
    )
    params = dict(fit.params)
    cov = fit.covariance.copy()
    for dev in devices:
        i = index[f"p0_{dev}"]
        params[f"p0_{dev}"] *= scale
        cov[i, :] *= scale
        cov[:, i] *= scale
    return fit.model_copy(update={"params": params, "covariance": cov})


def link_efficiency(fit: FitResult, source: str = "source", gate: str = "gate") -> float:
    """η_loss = P0,source / P0,gate."""
    return fit[f"p0_{source}"] / fit[f"p0_{gate}"]
