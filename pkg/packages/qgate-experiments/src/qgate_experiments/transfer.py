"""Photon transfer between the chips: efficiency, detuning, timing and phase."""

import logging

import numpy as np

from qgate_common import map_ordered
from qgate_core import QuantumState, basis_state, ket_to_dm, nearest_psd
from qgate_dynamics import evolve, mhz_to_rate, rotation_unitary
from qgate_pulses import CouplingEvent, PulseSchedule, absorption_coupling, emission_coupling

from .pipeline import GatePipeline
from .registry import experiment
from .report import ExperimentReport, Trace
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

DEFAULT_DETUNINGS_MHZ = (-10.0, -8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0, 10.0)
DEFAULT_DELAYS_NS = (-300.0, -200.0, -100.0, -50.0, 0.0, 50.0, 100.0, 200.0, 300.0)
DEFAULT_PHASES = tuple(np.linspace(0.0, 2.0 * np.pi, 13))


def transfer_population(spec: ExperimentSpec, delay: float | None = None, detuning_mhz: float = 0.0) -> float:
    """P(|e⟩) of the gate transmon after the source emits a photon at t=0.

    The gate absorbs with the time-reversed waveform starting at ``delay``
    (default: the configured absorb delay); ``detuning_mhz`` offsets the gate
    converter from the source photon.
    """
    options = spec.schedule_options()
    delay = options.absorb_delay if delay is None else delay
    emit = emission_coupling(options.bandwidth, options.kappa_source, options.dt, options.t_cut)
    absorb = absorption_coupling(emission_coupling(options.bandwidth, options.kappa_gate, options.dt, options.t_cut))
    schedule = PulseSchedule(
        events=[
            CouplingEvent(t_start=0.0, channel="source", waveform=emit),
            CouplingEvent(t_start=delay, channel="gate", waveform=absorb),
        ]
    )
    model = spec.model("link", converter_detuning=mhz_to_rate(detuning_mhz))
    initial = basis_state(model.dims, [1, 0, 0, 0])
    t_span = (min(0.0, delay), max(emit.duration, delay + absorb.duration))
    result = evolve(model, schedule, initial, t_span=t_span, dt_out=t_span[1] - t_span[0])
    return float(result.populations["a_G"][-1, 1])


def _sweep_trace(axis: str, values, populations) -> Trace:
    return Trace.from_arrays(**{axis: values, "population": populations})


@experiment("transfer", "Single-photon state transfer efficiency from source to gate")
def transfer_efficiency(spec: ExperimentSpec) -> ExperimentReport:
    lossless = spec.with_link(eta_loss=1.0)
    population, ideal = map_ordered(transfer_population, [spec, lossless], spec.workers)
    metrics = {
        "population": population,
        "population_lossless": ideal,
        "link_limited": population / ideal if ideal > 0 else float("nan"),
    }
    logger.info(f"Transfer P_e={population:.4f} (lossless {ideal:.4f})")
    return ExperimentReport(experiment="transfer", metrics=metrics, points=[metrics])


@experiment("fig7a", "Transfer population against gate converter detuning", sweep_axis="detuning_mhz")
def transfer_vs_detuning(spec: ExperimentSpec) -> ExperimentReport:
    detunings = spec.sweep_values("detuning_mhz", DEFAULT_DETUNINGS_MHZ)
    populations = map_ordered(lambda d: transfer_population(spec, detuning_mhz=d), detunings, spec.workers)
    points = [{"detuning_mhz": d, "population": p} for d, p in zip(detunings, populations)]

    lookup = dict(zip(detunings, populations))
    asymmetry = max((abs(p - lookup[-d]) for d, p in lookup.items() if -d in lookup), default=0.0)
    best = int(np.argmax(populations))
    metrics = {
        "max_population": populations[best],
        "detuning_at_max_mhz": detunings[best],
        "asymmetry": asymmetry,
    }
    return ExperimentReport(
        experiment="fig7a",
        metrics=metrics,
        points=points,
        traces={"detuning": _sweep_trace("detuning_mhz", detunings, populations)},
    )


@experiment("fig7b", "Transfer population against absorption delay", sweep_axis="delay_ns")
def transfer_vs_delay(spec: ExperimentSpec) -> ExperimentReport:
    delays = spec.sweep_values("delay_ns", DEFAULT_DELAYS_NS)
    populations = map_ordered(lambda d: transfer_population(spec, delay=d), delays, spec.workers)
    points = [{"delay_ns": d, "population": p} for d, p in zip(delays, populations)]
    best = int(np.argmax(populations))
    metrics = {"max_population": populations[best], "delay_at_max_ns": delays[best]}
    if 0.0 in delays:
        metrics["population_at_zero_delay"] = populations[delays.index(0.0)]
    return ExperimentReport(
        experiment="fig7b",
        metrics=metrics,
        points=points,
        traces={"delay": _sweep_trace("delay_ns", delays, populations)},
    )


def phase_fringe(pipeline: GatePipeline, phases) -> list[float]:
    """P(|e⟩) after transferring (|g⟩ + e^{iφ}|e⟩)/√2 and a π/2 rotation on the gate."""
    transfer = pipeline.transfer_map()
    rotation = rotation_unitary(np.pi / 2, 0.0)
    out = []
    for phi in phases:
        rho = transfer.apply(ket_to_dm(np.array([1.0, np.exp(1j * phi)]) / np.sqrt(2.0)))
        state = QuantumState.from_matrix(nearest_psd(rotation @ rho @ rotation.conj().T), renormalize=True)
        out.append(float(state.matrix[1, 1].real))
    return out


def _contrast(values) -> float:
    return float(np.max(values) - np.min(values))


@experiment("fig7c", "Phase coherence of the transferred superposition", sweep_axis="phase")
def transfer_phase(spec: ExperimentSpec) -> ExperimentReport:
    phases = spec.sweep_values("phase", DEFAULT_PHASES)
    lossless = spec.with_link(eta_loss=1.0, decoherence=False)
    fringes = map_ordered(lambda s: phase_fringe(GatePipeline(s, workers=1), phases), [spec, lossless], spec.workers)
    points = [
        {"phase": phi, "population": p, "population_lossless": q}
        for phi, p, q in zip(phases, fringes[0], fringes[1])
    ]
    metrics = {"contrast": _contrast(fringes[0]), "contrast_lossless": _contrast(fringes[1])}
    trace = Trace.from_arrays(phase=phases, population=fringes[0], population_lossless=fringes[1])
    return ExperimentReport(experiment="fig7c", metrics=metrics, points=points, traces={"phase": trace})
