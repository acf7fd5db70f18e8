"""Two-level emission model, its closed-form population and the capture coupling."""

import logging

import numpy as np
from scipy.linalg import expm

from qgate_common import ConfigError
from qgate_pulses import CouplingWaveform, TemporalMode, sech_mode

logger = logging.getLogger(__name__)

# Phase of the field leaving a converter driven by a real swap coupling J(t).
EMITTED_FIELD_PHASE = -1j


def rabi_emission_profile(
    waveform: CouplingWaveform,
    kappa: float,
    bandwidth: float | None = None,
) -> TemporalMode:
    """Emitted field of the {|e0⟩, |g1⟩} model driven by ``waveform``.

    Amplitudes obey ċ_e = −iJ c_1, ċ_1 = −iJ c_e − (κ/2) c_1 from c_e = 1.
    The field √κ·c_1 carries the phase −i; the returned mode is divided by
    it, so a matched waveform gives a real, positive envelope. Samples are
    taken at cell centers of the waveform grid.
    """
    if kappa <= 0:
        raise ConfigError("kappa must be positive")
    dt = waveform.dt
    state = np.array([1.0, 0.0], dtype=complex)
    samples = np.zeros(waveform.samples.size, dtype=complex)
    for k, j in enumerate(waveform.samples):
        gen = np.array([[0.0, -1j * j], [-1j * j, -0.5 * kappa]], dtype=complex)
        half = expm(gen * 0.5 * dt)
        mid = half @ state
        samples[k] = np.sqrt(kappa) * mid[1] / EMITTED_FIELD_PHASE
        state = half @ mid
    return TemporalMode(
        samples=samples,
        dt=dt,
        t0=waveform.t0,
        bandwidth=kappa if bandwidth is None else bandwidth,
    )


def rabi_population(tau, coupling: float, kappa: float, detuning: float = 0.0) -> np.ndarray:
    """Population of |e0⟩ after a constant swap of duration τ.

    Closed form of the damped two-level model with |g1⟩ decaying at κ and
    detuned by δ: c_e(τ) = e^{Tτ/2}[cosh(sτ) − (T/2)·sinh(sτ)/s] with
    T = −iδ − κ/2 and s = √(T²/4 − J²).
    """
    tau = np.asarray(tau, dtype=float)
    t_rate = -1j * detuning - 0.5 * kappa
    s = np.sqrt(t_rate**2 / 4.0 - coupling**2 + 0j)
    st = s * tau
    if abs(s) < 1e-12:
        sinh_over_s = tau.astype(complex)
    else:
        sinh_over_s = np.sinh(st) / s
    c_e = np.exp(0.5 * t_rate * tau) * (np.cosh(st) - 0.5 * t_rate * sinh_over_s)
    population = np.abs(c_e) ** 2
    return population if population.ndim else float(population)


def emitted_reference_mode(
    bandwidth: float,
    dt: float,
    t_start: float,
    t_cut: float | None = None,
) -> TemporalMode:
    """Sech mode with the emission phase, placed on the absolute grid of a
    coupling event starting at ``t_start``."""
    mode = sech_mode(bandwidth, dt, t_cut)
    mode = mode.with_phase(np.angle(EMITTED_FIELD_PHASE))
    return mode.shifted(t_start + 0.5 * dt - mode.t0)


def capture_coupling(mode: TemporalMode, t_origin: float, dt: float, n_steps: int) -> np.ndarray:
    """Coupling λ(t) = −ξ(t)/√N(t) of a detector mode that absorbs ``mode``.

    N(t) is the mode norm accumulated up to the middle of each cell.
    Cells outside the mode support get zero coupling.
    """
    if not np.isclose(mode.dt, dt):
        raise ConfigError(f"capture mode dt {mode.dt} differs from grid dt {dt}")
    centers = t_origin + dt * (np.arange(n_steps) + 0.5)
    xi = mode.sample_at(centers)
    weight = np.abs(xi) ** 2 * dt
    accumulated = np.cumsum(weight) - 0.5 * weight
    out = np.zeros(n_steps, dtype=complex)
    nonzero = accumulated > 0
    out[nonzero] = -xi[nonzero] / np.sqrt(accumulated[nonzero])
    return out
