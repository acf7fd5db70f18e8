"""Staged linear maps of the photonic gate chain.

Each stage is simulated once on the matrix units of its input subsystem and
stored as a LinearMap, so every tomography input reuses the same simulation:

    transfer   source qubit → gate transmon   (link layout)
    slot       gate transmon → gate transmon  (gate layout, idle/rotation)
    emission   gate transmon → captured mode  (gate layout + detector mode)

The two-photon CPHASE is a composite: P1 is absorbed as above, P2 is a
single-rail mode whose one-photon amplitude is reflected off the gate with a
response conditioned on the gate level, and P1 is re-emitted afterwards.
"""

import logging
from typing import Sequence

import numpy as np

from qgate_common import ConfigError
from qgate_core import LinearMap, QuantumState, kron_all, nearest_psd, partial_trace_matrix, projector
from qgate_dynamics import (
    CascadedModel,
    LindbladGenerator,
    emitted_reference_mode,
    idle_channel,
    propagate,
    reflect_mode,
    reflection_spectrum,
    schedule_controls,
)
from qgate_pulses import (
    CouplingEvent,
    GateTiming,
    PulseSchedule,
    TemporalMode,
    build_schedule,
    emission_coupling,
    gate_timing,
    sech_mode,
)

from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

GATE_LEVELS = 3
# Gate level → qubit state seen by the reflected photon; f is decoupled like g.
REFLECTION_BRANCHES = ("g", "e", "g")


def embed_input(model: CascadedModel, mode_name: str, matrix: np.ndarray) -> np.ndarray:
    """``matrix`` on one mode (padded to its dimension), vacuum on every other mode."""
    factors = []
    for mode in model.modes:
        if mode.name == mode_name:
            size = matrix.shape[0]
            if size > mode.dim:
                raise ConfigError(f"input of dimension {size} does not fit mode {mode_name} ({mode.dim})")
            padded = np.zeros((mode.dim, mode.dim), dtype=complex)
            padded[:size, :size] = matrix
            factors.append(padded)
        else:
            factors.append(projector(mode.dim, 0))
    return kron_all(factors)


def stage_map(
    model: CascadedModel,
    schedule: PulseSchedule,
    t_span: tuple[float, float],
    input_mode: str,
    input_dim: int,
    keep: Sequence[str],
    capture_mode: TemporalMode | None = None,
    workers: int | None = 1,
) -> LinearMap:
    """Map from ``input_mode`` (first ``input_dim`` levels) to the reduced state of ``keep``."""
    grid = schedule_controls(model, schedule, t_span, capture_mode)
    generator = LindbladGenerator(model)
    keep_index = [model.index(name) for name in keep]

    def run(unit: np.ndarray) -> np.ndarray:
        rho0 = embed_input(model, input_mode, unit)
        _, states = propagate(
            model, rho0, grid.controls, grid.n_steps, grid.t_origin, grid.rotations, generator=generator
        )
        return partial_trace_matrix(states[-1], model.dims, keep_index)

    logger.debug(f"Tabulating {model.layout} stage over {t_span} ns, {input_dim}x{input_dim} inputs")
    return LinearMap.from_function(run, input_dim, workers=workers)


def physical_state(matrix: np.ndarray, dims: Sequence[int]) -> QuantumState:
    """Nearest density matrix; removes integrator noise below the validation tolerance."""
    return QuantumState.from_matrix(nearest_psd(matrix), dims, renormalize=True)


def conditional_reflection(coefficients: np.ndarray, overlaps: np.ndarray) -> LinearMap:
    """Controlled mode transformation on (gate level k) ⊗ (single-rail P2).

    The P2 photon reflected with the gate in level k occupies the mode ξ_k.
    ``coefficients[k]`` = ⟨ξ_ref|ξ_k⟩ scales its coherence with vacuum,
    ``overlaps[k, l]`` = ⟨ξ_l|ξ_k⟩ its population; the energy missing from
    ‖ξ_k‖² returns to vacuum.

    Raises:
        ConfigError: the overlaps are not a Gram matrix dominating the coefficients.
    """
    levels = coefficients.size
    energies = np.diag(overlaps).real
    if np.any(energies > 1.0 + 1e-9):
        raise ConfigError("reflected modes carry more than one photon")
    if np.linalg.eigvalsh(overlaps - np.outer(coefficients, coefficients.conj())).min() < -1e-9:
        raise ConfigError("coefficients exceed the reflected mode overlaps")
    lost = np.diag(np.clip(1.0 - energies, 0.0, None))

    def apply(matrix: np.ndarray) -> np.ndarray:
        r = matrix.reshape(levels, 2, levels, 2)
        out = np.zeros_like(r)
        out[:, 0, :, 0] = r[:, 0, :, 0] + lost * r[:, 1, :, 1]
        out[:, 1, :, 1] = overlaps * r[:, 1, :, 1]
        out[:, 1, :, 0] = coefficients[:, None] * r[:, 1, :, 0]
        out[:, 0, :, 1] = coefficients.conj()[None, :] * r[:, 0, :, 1]
        return out.reshape(2 * levels, 2 * levels)

    return LinearMap.from_function(apply, 2 * levels)


class GatePipeline:
    """Stage maps for one experiment spec, computed lazily and cached."""

    def __init__(self, spec: ExperimentSpec, workers: int | None = None):
        self.spec = spec
        self.options = spec.schedule_options()
        self.workers = workers if workers is not None else spec.workers
        self._cache: dict[tuple, object] = {}

    def _cached(self, key: tuple, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def schedule(self, gate_label: str) -> PulseSchedule:
        return build_schedule(gate_label, self.options)

    def timing(self, gate_label: str) -> GateTiming:
        return gate_timing(gate_label, self.options)

    def reference_mode(self, t_start: float) -> TemporalMode:
        return emitted_reference_mode(self.spec.bandwidth, self.options.dt, t_start, self.options.t_cut)

    def emitter_schedule(self, chip: str, t_start: float = 0.0) -> PulseSchedule:
        waveform = emission_coupling(
            self.spec.bandwidth, self.spec.waveform_kappa(chip), self.options.dt, self.options.t_cut
        )
        return PulseSchedule(events=[CouplingEvent(t_start=t_start, channel=chip, waveform=waveform)])

    def transfer_map(self) -> LinearMap:
        """Source qubit {g, e} → gate transmon qutrit through the lossy link."""

        def build():
            timing = self.timing("I")
            t_span = (min(0.0, timing.absorb_start), max(timing.bin_length, timing.slot_start))
            model = self.spec.model("link")
            return stage_map(model, self.schedule("I"), t_span, "a_S", 2, ["a_G"], workers=self.workers)

        return self._cached(("transfer",), build)

    def slot_map(self, gate_label: str) -> LinearMap:
        def build():
            timing = self.timing(gate_label)
            model = self.spec.model("gate")
            return stage_map(
                model,
                self.schedule(gate_label),
                (timing.slot_start, timing.slot_end),
                "a_G",
                GATE_LEVELS,
                ["a_G"],
                workers=self.workers,
            )

        return self._cached(("slot", gate_label), build)

    def emission_map(self, gate_label: str) -> LinearMap:
        """Gate transmon qutrit → single-rail state of the re-emitted photon."""

        def build():
            timing = self.timing(gate_label)
            model = self.spec.model("gate", capture=True)
            return stage_map(
                model,
                self.schedule(gate_label),
                (timing.emit_start, timing.end),
                "a_G",
                GATE_LEVELS,
                ["d"],
                capture_mode=self.reference_mode(timing.emit_start),
                workers=self.workers,
            )

        return self._cached(("emission", gate_label), build)

    def emitter_map(self, chip: str) -> LinearMap:
        """Qubit {g, e} of ``chip`` → single-rail photon emitted at t=0 and captured downstream.

        The source photon passes the lossy link before capture.
        """

        def build():
            schedule = self.emitter_schedule(chip)
            model = self.spec.model(chip, capture=True)
            name = "a_S" if chip == "source" else "a_G"
            return stage_map(
                model,
                schedule,
                (0.0, schedule.duration),
                name,
                2,
                ["d"],
                capture_mode=self.reference_mode(0.0),
                workers=self.workers,
            )

        return self._cached(("emitter", chip), build)

    def single_qubit_map(self, gate_label: str) -> LinearMap:
        """Emit → absorb → gate slot → re-emit → capture, as one qubit-to-qubit map."""
        return self.transfer_map().then(self.slot_map(gate_label)).then(self.emission_map(gate_label))

    def reflected_modes(self, drive: bool = True) -> dict[str, TemporalMode]:
        """Incoming P2 mode and its reflections with the gate in g and e."""
        gate = self.spec.gate
        rate = self.options.cphase_rate if drive else 0.0
        gamma = gate.gamma1_f + 2.0 * gate.gamma_phi_f if self.spec.link.decoherence else 0.0
        incoming = sech_mode(self.spec.bandwidth, self.options.dt, self.options.t_cut)
        modes = {"in": incoming}
        for state in ("g", "e"):
            modes[state] = reflect_mode(
                incoming,
                lambda delta, state=state: reflection_spectrum(
                    gate.kappa, rate, state, delta + self.options.cphase_detuning, gamma
                ),
            )
        return modes

    def reflection_map(self, drive: bool = True) -> LinearMap:
        """Conditional reflection of P2, phase-referenced to the mode ∝ ξ_g − ξ_e."""

        def build():
            modes = self.reflected_modes(drive)
            dt = self.options.dt
            xi = np.array([modes[branch].samples for branch in REFLECTION_BRANCHES])
            reference = xi[0] - xi[1]
            if np.sum(np.abs(reference) ** 2) * dt < 1e-12:
                reference = xi[0]
            reference = reference / np.sqrt(np.sum(np.abs(reference) ** 2) * dt)
            coefficients = xi @ reference.conj() * dt
            overlaps = xi @ xi.conj().T * dt
            logger.debug(f"P2 coefficients g={coefficients[0]:.4f} e={coefficients[1]:.4f}")
            return conditional_reflection(coefficients, overlaps)

        return self._cached(("reflection", drive), build)

    def p2_idle_map(self) -> LinearMap:
        """Gate transmon idling from the end of absorption until P1 re-emission."""
        timing = self.timing("CPHASE")
        return idle_channel(self.spec.gate, timing.emit_start - timing.slot_start, self.spec.link.decoherence)

    def cphase_map(self, drive: bool = True) -> LinearMap:
        """Composite two-qubit map on (P1, P2) → (P1 out, P2 out)."""

        def build():
            transfer = self.transfer_map()
            p2 = self.emitter_map("source")
            idle = self.p2_idle_map()
            reflection = self.reflection_map(drive)
            emission = self.emission_map("CPHASE")

            def apply(matrix: np.ndarray) -> np.ndarray:
                x, dims = transfer.apply_to_subsystem(matrix, (2, 2), 0)
                x, dims = p2.apply_to_subsystem(x, dims, 1)
                x, dims = idle.apply_to_subsystem(x, dims, 0)
                x = reflection.apply(x)
                x, _ = emission.apply_to_subsystem(x, dims, 0)
                return x

            return LinearMap.from_function(apply, 4)

        return self._cached(("cphase", drive), build)

    def runner(self, gate_label: str):
        """Tomography runner applying the simulated gate to an input state."""
        if gate_label == "CPHASE":
            chain, dims = self.cphase_map(), (2, 2)
        else:
            chain, dims = self.single_qubit_map(gate_label), (2,)

        def run(state: QuantumState) -> QuantumState:
            return physical_state(chain.apply(state.matrix), dims)

        return run
