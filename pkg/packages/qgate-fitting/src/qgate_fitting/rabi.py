"""Damped Rabi oscillations of the swap transition."""

import numpy as np

from qgate_dynamics import mhz_to_rate, rabi_population

from .optimizer import multi_start_least_squares
from .result import FitResult


def rabi_decay_model(tau_ns, coupling_mhz: float, kappa_mhz: float, detuning_mhz: float = 0.0) -> np.ndarray:
    """Initial-state population of the {|e0⟩, |g1⟩} model, rates given as f/2π in MHz."""
    return np.atleast_1d(
        rabi_population(tau_ns, mhz_to_rate(coupling_mhz), mhz_to_rate(kappa_mhz), mhz_to_rate(detuning_mhz))
    )


def _half_crossing(tau: np.ndarray, y: np.ndarray) -> float:
    order = np.argsort(tau)
    tau, y = tau[order], y[order]
    below = np.nonzero(y <= 0.5 * (y.max() + y.min()))[0]
    return float(tau[below[0]]) if below.size else float(tau[-1])


def fit_rabi_decay(
    tau_ns,
    population,
    kappa_mhz: float | None = None,
    coupling_guess_mhz: float | None = None,
    kappa_guess_mhz: float = 2.0,
    workers: int | None = 1,
) -> FitResult:
    """Fit J (and κ unless given) from the population after a resonant swap of duration τ.

    The first drop to half contrast, near τ ≈ π/(4J), seeds the coupling guess.
    """
    tau = np.asarray(tau_ns, dtype=float)
    y = np.asarray(population, dtype=float)
    if coupling_guess_mhz is None:
        t_half = max(_half_crossing(tau, y), 1e-3)
        coupling_guess_mhz = 1e3 / (8.0 * t_half)

    if kappa_mhz is None:
        def residuals(p):
            return rabi_decay_model(tau, p[0], p[1]) - y

        return multi_start_least_squares(
            residuals,
            [coupling_guess_mhz, kappa_guess_mhz],
            names=["coupling_mhz", "kappa_mhz"],
            model="rabi_decay",
            bounds=([0.0, 1e-6], [np.inf, np.inf]),
            units={"coupling_mhz": "MHz", "kappa_mhz": "MHz"},
            workers=workers,
        )

    def residuals_fixed(p):
        return rabi_decay_model(tau, p[0], kappa_mhz) - y

    return multi_start_least_squares(
        residuals_fixed,
        [coupling_guess_mhz],
        names=["coupling_mhz"],
        model="rabi_decay_fixed_kappa",
        bounds=([0.0], [np.inf]),
        units={"coupling_mhz": "MHz"},
        workers=workers,
    )
