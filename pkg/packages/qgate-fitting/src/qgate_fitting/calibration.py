"""Quadratic coupler calibration J(A) through the origin."""

import logging

import numpy as np

from qgate_common import ConfigError
from qgate_pulses import CouplerCalibration

from .optimizer import covariance_from_jacobian
from .result import FitResult

logger = logging.getLogger(__name__)

NOT_MONOTONE = "calibration not monotone on [0, 1]"


def fit_coupling_vs_amplitude(amplitudes, couplings) -> FitResult:
    """Linear least squares of J = linear·A + quadratic·A².

    J(0) = 0 is enforced by the model. A fit that decreases anywhere on
    [0, 1] is returned with a warning and ``converged=False``.

    Raises:
        ConfigError: fewer than three points or mismatched lengths.
    """
    a = np.asarray(amplitudes, dtype=float)
    j = np.asarray(couplings, dtype=float)
    if a.shape != j.shape:
        raise ConfigError(f"{a.size} amplitudes but {j.size} couplings")
    if a.size < 3:
        raise ConfigError("at least 3 (A, J) points are required")
    design = np.column_stack([a, a**2])
    coeffs, *_ = np.linalg.lstsq(design, j, rcond=None)
    residuals = design @ coeffs - j
    linear, quadratic = (float(c) for c in coeffs)
    warnings: tuple[str, ...] = ()
    if linear < 0 or linear + 2.0 * quadratic < 0:
        logger.warning(f"J(A) fit is not monotone on [0, 1]: linear={linear:.4g} quadratic={quadratic:.4g}")
        warnings = (NOT_MONOTONE,)
    return FitResult(
        model="coupler_quadratic",
        params={"linear": linear, "quadratic": quadratic},
        units={"linear": "rad/ns", "quadratic": "rad/ns"},
        covariance=covariance_from_jacobian(design, residuals),
        residual_norm=float(np.linalg.norm(residuals)),
        converged=not warnings,
        warnings=warnings,
    )


def calibration_from_fit(fit: FitResult) -> CouplerCalibration:
    """Raises ConfigError when the fitted curve cannot be inverted on [0, 1]."""
    try:
        return CouplerCalibration(linear=fit["linear"], quadratic=fit["quadratic"])
    except ValueError as e:
        raise ConfigError(f"fitted coupler calibration is unusable: {e}") from e
