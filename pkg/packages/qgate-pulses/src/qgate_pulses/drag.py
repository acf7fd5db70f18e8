"""Gaussian DRAG envelopes for single-qubit rotations."""

import numpy as np

from qgate_common import ConfigError


def drag_duration(sigma: float, n_sigma: float = 3.0) -> float:
    return 2.0 * n_sigma * sigma


def drag_envelope(
    theta: float,
    phi: float,
    sigma: float,
    n_sigma: float = 3.0,
    dt: float = 1.0,
    anharmonicity: float | None = None,
    drag_scaling: float = 0.5,
) -> np.ndarray:
    """Complex Rabi-rate envelope (rad/ns), one sample per cell center.

    The in-phase Gaussian I(t) is pulled down so it starts and ends at zero
    and scaled to ∫I dt = θ. With ``anharmonicity`` α (rad/ns) the
    quadrature carries drag_scaling·(dI/dt)/α; without it the pulse is a
    plain Gaussian. The whole envelope is rotated by the axis phase φ.
    """
    if sigma <= 0:
        raise ConfigError("sigma must be positive")
    if anharmonicity is not None and anharmonicity <= 0:
        raise ConfigError("anharmonicity must be positive")
    n = max(int(round(drag_duration(sigma, n_sigma) / dt)), 2)
    t = (np.arange(n) - 0.5 * (n - 1)) * dt
    edge = np.exp(-0.5 * ((abs(t[0]) + dt) / sigma) ** 2)
    gauss = np.exp(-0.5 * (t / sigma) ** 2)
    in_phase = gauss - edge
    scale = theta / (np.sum(in_phase) * dt)
    quadrature = np.zeros(n)
    if anharmonicity is not None:
        quadrature = drag_scaling * (-(t / sigma**2) * gauss) / anharmonicity
    return np.exp(1j * phi) * scale * (in_phase + 1j * quadrature)
