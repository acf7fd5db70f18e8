"""Synthetic measurement data with seeded additive Gaussian noise."""

from typing import Callable

import numpy as np

NOISE_FRACTION = 0.01


def add_noise(values, rng: np.random.Generator | int | None, fraction: float = NOISE_FRACTION) -> np.ndarray:
    """Add N(0, σ²) noise with σ = ``fraction`` of the peak magnitude."""
    rng = np.random.default_rng(rng)
    values = np.asarray(values, dtype=float)
    sigma = fraction * float(np.max(np.abs(values))) if values.size else 0.0
    return values + rng.normal(0.0, sigma, size=values.shape)


def synthetic_dataset(
    model: Callable[..., np.ndarray],
    x,
    params: dict[str, float],
    seed: int | None = None,
    fraction: float = NOISE_FRACTION,
) -> tuple[np.ndarray, np.ndarray]:
    """Evaluate ``model(x, **params)`` and return (x, noisy y)."""
    x = np.asarray(x, dtype=float)
    return x, add_noise(model(x, **params), seed, fraction)
