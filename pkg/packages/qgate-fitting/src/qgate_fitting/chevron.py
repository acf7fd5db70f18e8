"""Gaussian fits to population chevrons vs. drive detuning."""

import logging

import numpy as np

from .optimizer import multi_start_least_squares
from .result import FitResult

logger = logging.getLogger(__name__)

FLAT_TOL = 1e-9
SIGNIFICANCE = 3.0


def gaussian_model(x, baseline: float, amplitude: float, center: float, width: float) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return baseline + amplitude * np.exp(-0.5 * ((x - center) / width) ** 2)


def fit_chevron(delta_mhz, population, workers: int | None = 1) -> FitResult:
    """Constant-plus-Gaussian fit; the center is the transition resonance.

    Flat data, or a Gaussian amplitude not significant against the residual
    scatter, is flagged as not converged.
    """
    x = np.asarray(delta_mhz, dtype=float)
    y = np.asarray(population, dtype=float)
    units = {"baseline": "1", "amplitude": "1", "center": "MHz", "width": "MHz"}
    names = list(units)
    if np.ptp(y) <= FLAT_TOL * (1.0 + np.abs(y).max()):
        logger.warning("Chevron data are flat; fit rejected")
        n = len(names)
        return FitResult(
            model="chevron_gaussian",
            params={"baseline": float(y.mean()), "amplitude": 0.0, "center": float(x.mean()), "width": 0.0},
            units=units,
            covariance=np.full((n, n), np.inf),
            residual_norm=0.0,
            converged=False,
            warnings=("flat input",),
        )
    edges = np.concatenate([y[: max(len(y) // 10, 1)], y[-max(len(y) // 10, 1) :]])
    baseline = float(np.median(edges))
    extreme = int(np.argmax(np.abs(y - baseline)))
    x0 = [baseline, y[extreme] - baseline, x[extreme], np.ptp(x) / 8.0]

    def residuals(p):
        return gaussian_model(x, *p) - y

    fit = multi_start_least_squares(
        residuals,
        x0,
        names=names,
        model="chevron_gaussian",
        bounds=([-np.inf, -np.inf, x.min(), 1e-6 * np.ptp(x)], [np.inf, np.inf, x.max(), np.ptp(x)]),
        units=units,
        workers=workers,
    )
    scatter = fit.residual_norm / np.sqrt(max(len(y) - len(names), 1))
    if abs(fit["amplitude"]) < SIGNIFICANCE * scatter:
        logger.warning("Chevron amplitude is not significant; fit rejected")
        return fit.model_copy(update={"converged": False, "warnings": fit.warnings + ("insignificant amplitude",)})
    return fit
