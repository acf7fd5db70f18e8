"""Multi-start trust-region least squares."""

import logging
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import least_squares

from qgate_common import map_ordered

from .result import FitResult

logger = logging.getLogger(__name__)

START_SCALES = (1.0, 0.5, 2.0, 0.8, 1.25)


def _clip_start(x0: np.ndarray, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
    span = np.where(np.isfinite(upper - lower), 1e-9 * (upper - lower), 0.0)
    return np.clip(x0, lower + span, upper - span)


def covariance_from_jacobian(jac: np.ndarray, residuals: np.ndarray) -> np.ndarray:
    """(JᵀJ)⁻¹·s² with s² the residual variance per degree of freedom."""
    m, n = jac.shape
    if m <= n:
        return np.full((n, n), np.inf)
    s2 = float(residuals @ residuals) / (m - n)
    return np.linalg.pinv(jac.T @ jac) * s2


def multi_start_least_squares(
    residuals: Callable[[np.ndarray], np.ndarray],
    x0: Sequence[float],
    names: Sequence[str],
    model: str,
    bounds: tuple[Sequence[float], Sequence[float]] | None = None,
    units: dict[str, str] | None = None,
    scales: Sequence[float] = START_SCALES,
    workers: int | None = 1,
) -> FitResult:
    """Minimize Σ r² from ``len(scales)`` starts x0·s and keep the lowest cost."""
    x0 = np.asarray(x0, dtype=float)
    if bounds is None:
        lower, upper = np.full(x0.size, -np.inf), np.full(x0.size, np.inf)
    else:
        lower, upper = (np.asarray(b, dtype=float) for b in bounds)

    def run(scale: float):
        start = _clip_start(x0 * scale, lower, upper)
        try:
            return least_squares(residuals, start, method="trf", bounds=(lower, upper), x_scale="jac")
        except (ValueError, np.linalg.LinAlgError) as e:
            logger.debug(f"{model}: start x{scale:g} failed: {e}")
            return None

    results = [r for r in map_ordered(run, scales, workers) if r is not None]
    if not results:
        logger.warning(f"{model}: no start produced a solution")
        n = x0.size
        return FitResult(
            model=model,
            params=dict(zip(names, x0.tolist())),
            units=units or {},
            covariance=np.full((n, n), np.inf),
            residual_norm=float("inf"),
            converged=False,
            warnings=("no start produced a solution",),
        )
    best = min(results, key=lambda r: r.cost)
    cov = covariance_from_jacobian(best.jac, best.fun)
    converged = bool(best.success) and bool(np.all(np.isfinite(cov)))
    norm = float(np.linalg.norm(best.fun))
    if converged:
        logger.info(f"{model}: converged, residual norm {norm:.4g}")
    else:
        logger.warning(f"{model}: did not converge ({best.message}), residual norm {norm:.4g}")
    return FitResult(
        model=model,
        params=dict(zip(names, best.x.tolist())),
        units=units or {},
        covariance=cov,
        residual_norm=norm,
        converged=converged,
        warnings=() if converged else (str(best.message),),
    )
