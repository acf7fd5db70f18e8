"""Converter linewidth from the transmission magnitude."""

import numpy as np

from .optimizer import multi_start_least_squares
from .result import FitResult


def lorentzian_s21_model(delta_mhz, s0: float, kappa_mhz: float, center_mhz: float = 0.0) -> np.ndarray:
    """|S21| = |S0 / (1 + 2i(δ − center)/κ)| with δ and κ/2π in MHz."""
    x = np.asarray(delta_mhz, dtype=float) - center_mhz
    return np.abs(s0 / (1.0 + 2j * x / kappa_mhz))


def fit_lorentzian_s21(delta_mhz, s21, workers: int | None = 1) -> FitResult:
    x = np.asarray(delta_mhz, dtype=float)
    y = np.asarray(s21, dtype=float)
    peak = int(np.argmax(y))
    above = x[y >= y[peak] / np.sqrt(2.0)]
    width = float(above.max() - above.min()) if above.size > 1 else float(np.ptp(x)) / 10
    x0 = [y[peak], max(width, 1e-3), x[peak]]

    def residuals(p):
        return lorentzian_s21_model(x, *p) - y

    return multi_start_least_squares(
        residuals,
        x0,
        names=["s0", "kappa_mhz", "center_mhz"],
        model="lorentzian_s21",
        bounds=([0.0, 1e-6, -np.inf], [np.inf, np.inf, np.inf]),
        units={"s0": "arb", "kappa_mhz": "MHz", "center_mhz": "MHz"},
        workers=workers,
    )
