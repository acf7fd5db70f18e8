"""Device characterisation on synthetic data: linewidths, coupler and drive calibration, link efficiency."""

import logging
import math

import numpy as np

from qgate_common import map_ordered
from qgate_core import basis_state
from qgate_dynamics import CascadedModel, evolve, mhz_to_rate
from qgate_fitting import (
    FitResult,
    MollowTrace,
    add_noise,
    fit_chevron,
    fit_coupling_vs_amplitude,
    fit_lorentzian_s21,
    fit_mollow_global,
    fit_rabi_decay,
    gaussian_model,
    link_efficiency,
    lorentzian_s21_model,
    mollow_psd_model,
    rabi_decay_model,
    synthetic_dataset,
)
from qgate_pulses import (
    CouplingEvent,
    DriveEvent,
    PulseSchedule,
    coupling_for_amplitude,
    square_pulse,
    synthetic_calibration,
)

from .registry import experiment
from .report import ExperimentReport, Trace
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

DEFAULT_AMPLITUDES = (0.5, 0.7, 0.85, 1.0)
DEFAULT_OMEGAS_MHZ = (2.0, 4.0, 6.0)
COUPLER_RABI_WINDOW_NS = 1000.0
DRIVE_RABI_WINDOW_NS = 600.0
CHEVRON_POINTS = 33
SPECTRUM_POINTS = 201
MOLLOW_POINTS = 301


def _rabi_trace(model: CascadedModel, schedule: PulseSchedule, levels, watch: int, window: float) -> tuple:
    """Population of gate level ``watch`` on a 1 ns grid while ``schedule`` runs from ``levels``."""
    initial = basis_state(model.dims, levels)
    result = evolve(model, schedule, initial, t_span=(0.0, window))
    return result.times, result.populations["a_G"][:, watch]


def _final_population(model: CascadedModel, schedule: PulseSchedule, levels, watch: int) -> float:
    initial = basis_state(model.dims, levels)
    duration = schedule.duration
    result = evolve(model, schedule, initial, t_span=(0.0, duration), dt_out=duration)
    return float(result.populations["a_G"][-1, watch])


def _pi_swap_time(rate: float, dt: float) -> float:
    """Duration of a full swap π/(2·rate), rounded to the grid."""
    return max(round(0.5 * math.pi / rate / dt), 1) * dt


def _fit_summary(fit: FitResult) -> dict:
    return {"params": dict(fit.params), "converged": fit.converged, "warnings": list(fit.warnings)}


@experiment("fig5", "Converter linewidths from synthetic transmission spectra")
def converter_linewidths(spec: ExperimentSpec) -> ExperimentReport:
    points, traces, metrics = [], {}, {}
    for offset, (chip, device) in enumerate((("source", spec.source), ("gate", spec.gate))):
        kappa = device.kappa_mhz
        grid = np.linspace(-5.0 * kappa, 5.0 * kappa, SPECTRUM_POINTS)
        x, y = synthetic_dataset(
            lorentzian_s21_model, grid, {"s0": 1.0, "kappa_mhz": kappa, "center_mhz": 0.0}, seed=spec.seed + offset
        )
        fit = fit_lorentzian_s21(x, y)
        points.append({"device": chip, "kappa_true_mhz": kappa, **_fit_summary(fit)})
        metrics[f"kappa_fit_{chip}_mhz"] = fit["kappa_mhz"]
        metrics[f"kappa_relative_error_{chip}"] = abs(fit["kappa_mhz"] - kappa) / kappa
        best = lorentzian_s21_model(x, fit["s0"], fit["kappa_mhz"], fit["center_mhz"])
        traces[f"s21_{chip}"] = Trace.from_arrays(delta_mhz=x, s21=y, fit=best)
    return ExperimentReport(experiment="fig5", metrics=metrics, points=points, traces=traces)


def coupler_point(spec: ExperimentSpec, amplitude: float, seed: int) -> tuple[dict, dict[str, Trace]]:
    """Damped swap and chevron of the gate coupler at one control amplitude."""
    rng = np.random.default_rng(seed)
    dt = spec.link.dt
    coupling = coupling_for_amplitude(synthetic_calibration(), amplitude)
    model = spec.model("gate")

    rabi = PulseSchedule(
        events=[
            CouplingEvent(
                t_start=0.0, channel="gate", waveform=square_pulse(coupling, COUPLER_RABI_WINDOW_NS, dt)
            )
        ]
    )
    tau, population = _rabi_trace(model, rabi, [1, 0], 1, COUPLER_RABI_WINDOW_NS)
    noisy = add_noise(population, rng)
    rabi_fit = fit_rabi_decay(tau, noisy)

    swap = PulseSchedule(
        events=[
            CouplingEvent(
                t_start=0.0, channel="gate", waveform=square_pulse(coupling, _pi_swap_time(coupling, dt), dt)
            )
        ]
    )
    span = max(4.0 * coupling / mhz_to_rate(1.0), 2.0)
    detunings = np.linspace(-span, span, CHEVRON_POINTS)
    chevron = np.array(
        [
            _final_population(spec.model("gate", converter_detuning=mhz_to_rate(d)), swap, [1, 0], 1)
            for d in detunings
        ]
    )
    noisy_chevron = add_noise(chevron, rng)
    chevron_fit = fit_chevron(detunings, noisy_chevron)

    record = {
        "amplitude": amplitude,
        "coupling_true_mhz": coupling / mhz_to_rate(1.0),
        "coupling_fit_mhz": rabi_fit["coupling_mhz"],
        "kappa_fit_mhz": rabi_fit["kappa_mhz"],
        "chevron_center_mhz": chevron_fit["center"],
        "rabi_fit": _fit_summary(rabi_fit),
        "chevron_fit": _fit_summary(chevron_fit),
    }
    label = f"{amplitude:g}"
    traces = {
        f"rabi_a{label}": Trace.from_arrays(tau=tau, population=noisy, fit=_rabi_curve(tau, rabi_fit)),
        f"chevron_a{label}": Trace.from_arrays(
            detuning_mhz=detunings,
            population=noisy_chevron,
            fit=gaussian_model(detunings, *(chevron_fit[n] for n in chevron_fit.names)),
        ),
    }
    return record, traces


def _rabi_curve(tau: np.ndarray, fit: FitResult, kappa_mhz: float | None = None) -> np.ndarray:
    kappa = fit["kappa_mhz"] if kappa_mhz is None else kappa_mhz
    return rabi_decay_model(tau, fit["coupling_mhz"], kappa)


@experiment("fig6", "Coupler calibration: damped swaps, chevrons and the quadratic J(A) fit", sweep_axis="amplitude")
def coupler_calibration(spec: ExperimentSpec) -> ExperimentReport:
    amplitudes = spec.sweep_values("amplitude", DEFAULT_AMPLITUDES)
    results = map_ordered(
        lambda item: coupler_point(spec, item[1], spec.seed + item[0]), list(enumerate(amplitudes)), spec.workers
    )
    points = [record for record, _ in results]
    traces = {name: trace for _, tr in results for name, trace in tr.items()}

    couplings = [mhz_to_rate(record["coupling_fit_mhz"]) for record in points]
    fit = fit_coupling_vs_amplitude(amplitudes, couplings)
    truth = synthetic_calibration()
    metrics = {
        "linear": fit["linear"],
        "quadratic": fit["quadratic"],
        "linear_true": truth.linear,
        "quadratic_true": truth.quadratic,
        "monotone": fit.converged,
        "kappa_fit_mean_mhz": float(np.mean([record["kappa_fit_mhz"] for record in points])),
    }
    return ExperimentReport(
        experiment="fig6", metrics=metrics, points=points, traces=traces, metadata={"fit": fit.to_report()}
    )


@experiment("fig9", "Link efficiency from a joint fit of Mollow spectra of both converters", sweep_axis="omega_mhz")
def mollow_link_efficiency(spec: ExperimentSpec) -> ExperimentReport:
    omegas = spec.sweep_values("omega_mhz", DEFAULT_OMEGAS_MHZ)
    rng = np.random.default_rng(spec.seed)
    span = 2.5 * max(omegas) + 2.5 * max(spec.source.kappa_mhz, spec.gate.kappa_mhz)
    grid = np.linspace(-span, span, MOLLOW_POINTS)

    traces_in = []
    for chip, device, p0 in (("source", spec.source, spec.link.eta_loss), ("gate", spec.gate, 1.0)):
        for omega in omegas:
            clean = mollow_psd_model(grid, p0, omega, device.kappa_mhz)
            traces_in.append(MollowTrace(device=chip, omega_mhz=omega, delta_mhz=grid, psd=add_noise(clean, rng)))

    fit = fit_mollow_global(
        traces_in, {"source": spec.source.kappa_mhz, "gate": spec.gate.kappa_mhz}, workers=spec.workers
    )
    eta = link_efficiency(fit)
    logger.info(f"Mollow fit gives η_loss={eta:.4f} (configured {spec.link.eta_loss:.4f})")

    points, traces = [], {}
    for i, trace in enumerate(traces_in):
        best = mollow_psd_model(
            trace.delta_mhz,
            fit[f"p0_{trace.device}"],
            fit[f"omega_mhz_{i}"],
            fit[f"kappa_mhz_{trace.device}"],
            fit[f"f0_mhz_{trace.device}"],
        )
        points.append({"device": trace.device, "omega_mhz": trace.omega_mhz, "omega_fit_mhz": fit[f"omega_mhz_{i}"]})
        traces[f"mollow_{trace.device}_{i}"] = Trace.from_arrays(delta_mhz=trace.delta_mhz, psd=trace.psd, fit=best)

    metrics = {
        "eta_loss": eta,
        "eta_loss_true": spec.link.eta_loss,
        "kappa_fit_source_mhz": fit["kappa_mhz_source"],
        "kappa_fit_gate_mhz": fit["kappa_mhz_gate"],
        "converged": fit.converged,
    }
    return ExperimentReport(
        experiment="fig9", metrics=metrics, points=points, traces=traces, metadata={"fit": fit.to_report()}
    )


@experiment("fig10", "CPHASE drive calibration: |f0⟩↔|e1⟩ swap decay and detuning chevron")
def cphase_drive_calibration(spec: ExperimentSpec) -> ExperimentReport:
    rng = np.random.default_rng(spec.seed)
    options = spec.schedule_options()
    rate = options.cphase_rate
    model = spec.model("gate")

    def drive(length: float, detuning: float = 0.0) -> PulseSchedule:
        return PulseSchedule(
            events=[DriveEvent(t_start=0.0, channel="gate", rate=rate, length=length, detuning=detuning)]
        )

    tau, population = _rabi_trace(model, drive(DRIVE_RABI_WINDOW_NS), [2, 0], 2, DRIVE_RABI_WINDOW_NS)
    noisy = add_noise(population, rng)
    rabi_fit = fit_rabi_decay(tau, noisy, kappa_mhz=spec.gate.kappa_mhz)

    swap_time = _pi_swap_time(rate, options.dt)
    detunings = np.linspace(-4.0, 4.0, CHEVRON_POINTS)
    chevron = map_ordered(
        lambda d: _final_population(model, drive(swap_time, mhz_to_rate(d)), [2, 0], 2), detunings, spec.workers
    )
    noisy_chevron = add_noise(chevron, rng)
    chevron_fit = fit_chevron(detunings, noisy_chevron)

    metrics = {
        "drive_rate_true_mhz": spec.link.cphase_rate_mhz,
        "drive_rate_fit_mhz": rabi_fit["coupling_mhz"],
        "drive_rate_stderr_mhz": rabi_fit.stderr("coupling_mhz"),
        "resonance_mhz": chevron_fit["center"],
        "chevron_converged": chevron_fit.converged,
    }
    points = [{"fit": "swap", **_fit_summary(rabi_fit)}, {"fit": "chevron", **_fit_summary(chevron_fit)}]
    traces = {
        "swap": Trace.from_arrays(
            tau=tau, population=noisy, fit=_rabi_curve(tau, rabi_fit, spec.gate.kappa_mhz)
        ),
        "chevron": Trace.from_arrays(
            detuning_mhz=detunings,
            population=noisy_chevron,
            fit=gaussian_model(detunings, *(chevron_fit[n] for n in chevron_fit.names)),
        ),
    }
    return ExperimentReport(experiment="fig10", metrics=metrics, points=points, traces=traces)
