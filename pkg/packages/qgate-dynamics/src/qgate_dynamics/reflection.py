"""Frequency-domain reflection of a propagating photon off a qubit-dressed converter."""

import logging
from typing import Callable, Literal

import numpy as np

from qgate_common import ConfigError
from qgate_pulses import TemporalMode

logger = logging.getLogger(__name__)

QubitState = Literal["g", "e"]


def reflection_spectrum(kappa: float, g: float, qubit_state: QubitState, detuning, gamma: float = 0.0):
    """Reflection coefficient S11 of a converter mode at ``detuning``.

    With the qubit in |g⟩ the converter is a bare resonator,
    S11 = (−κ/2 − iδ)/(κ/2 − iδ). With the qubit in |e⟩ the |e1⟩↔|f0⟩ coupling g
    splits the resonance; a lossless qubit (γ = 0) on resonance gives S11 = 1.
    """
    if kappa <= 0:
        raise ConfigError("kappa must be positive")
    if qubit_state not in ("g", "e"):
        raise ConfigError(f"qubit state must be 'g' or 'e', got '{qubit_state}'")
    delta = np.asarray(detuning, dtype=float)
    denom = 0.5 * kappa - 1j * delta
    if qubit_state == "g" or g == 0:
        return (-0.5 * kappa - 1j * delta) / denom
    with np.errstate(divide="ignore", invalid="ignore"):
        dressed = denom + g**2 / (0.5 * gamma - 1j * delta)
        out = 1.0 - kappa / dressed
    # The pole of the dressed term sits at δ = 0 when the qubit is lossless.
    singular = ~np.isfinite(out)
    if np.any(singular):
        out = np.where(singular, 1.0 + 0j, out) if out.ndim else np.complex128(1.0)
    return out


def reflect_mode(
    mode: TemporalMode,
    s11: Callable[[np.ndarray], np.ndarray] | complex,
    pad_factor: int = 4,
) -> TemporalMode:
    """Apply a reflection response to ``mode`` in the frequency domain.

    ``s11`` is evaluated at the detuning of each Fourier component. The
    mode is zero-padded to ``pad_factor`` times its length and cut back
    onto its own grid afterwards.
    """
    if pad_factor < 1:
        raise ConfigError("pad_factor must be at least 1")
    if not callable(s11):
        return mode.with_samples(mode.samples * complex(s11))
    n = mode.samples.size
    size = n * pad_factor
    lead = (size - n) // 2
    padded = np.zeros(size, dtype=complex)
    padded[lead : lead + n] = mode.samples
    omega = 2.0 * np.pi * np.fft.fftfreq(size, mode.dt)
    # e^{-iωt} components of the envelope sit at detuning −ω.
    response = np.asarray(s11(-omega), dtype=complex)
    out = np.fft.ifft(response * np.fft.fft(padded))
    samples = out[lead : lead + n]
    energy = np.sum(np.abs(samples) ** 2) * mode.dt
    if energy > 1.0:
        samples = samples / np.sqrt(energy)
    return mode.with_samples(samples)
