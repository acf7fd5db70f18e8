"""Field moments of photons emitted from a tunable qubit superposition."""

import logging
import math

import numpy as np

from qgate_core import QuantumState, ket_to_dm
from qgate_tomography import MomentSet, moments_from_state, normalize_moments

from .pipeline import GatePipeline, physical_state
from .registry import experiment
from .report import ExperimentReport, Trace
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

MAX_ORDER = 4
DEFAULT_THETAS = tuple(np.linspace(0.0, np.pi, 9))
CHIPS = ("source", "gate")


def qubit_input(theta: float) -> np.ndarray:
    """cos(θ/2)|g⟩ + sin(θ/2)|e⟩; θ = π is the single-photon reference."""
    return ket_to_dm(np.array([math.cos(0.5 * theta), math.sin(0.5 * theta)]))


def _record(chip: str, theta: float, measured: MomentSet, ideal: MomentSet) -> dict:
    n = measured.photon_number
    return {
        "chip": chip,
        "theta": theta,
        "mean_field": measured.mean_field,
        "photon_number": n,
        "second_order": measured.get(2, 2).real,
        "g2": measured.g2() if n > 1e-9 else None,
        "ideal_mean_field": ideal.mean_field,
        "ideal_photon_number": ideal.photon_number,
    }


@experiment("fig-moments", "Moments of photons emitted from cos(θ/2)|g⟩ + sin(θ/2)|e⟩", sweep_axis="theta")
def photon_moments(spec: ExperimentSpec) -> ExperimentReport:
    thetas = spec.sweep_values("theta", DEFAULT_THETAS)
    pipeline = GatePipeline(spec)
    maps = {chip: pipeline.emitter_map(chip) for chip in CHIPS}

    def captured(chip: str, theta: float) -> QuantumState:
        return physical_state(maps[chip].apply(qubit_input(theta)), (2,))

    reference = {chip: captured(chip, math.pi).expect(np.diag([0.0, 1.0])).real for chip in CHIPS}
    points, traces = [], {}
    for chip in CHIPS:
        rows = []
        for theta in thetas:
            measured = moments_from_state(captured(chip, theta), MAX_ORDER)
            if spec.link.normalization == "reference":
                measured = normalize_moments(measured, reference[chip])
            ideal = moments_from_state(QuantumState.from_matrix(qubit_input(theta)), MAX_ORDER)
            rows.append(_record(chip, theta, measured, ideal))
        points.extend(rows)
        traces[chip] = Trace.from_arrays(
            theta=[r["theta"] for r in rows],
            re_a=[r["mean_field"].real for r in rows],
            im_a=[r["mean_field"].imag for r in rows],
            n=[r["photon_number"] for r in rows],
            ideal_re_a=[r["ideal_mean_field"].real for r in rows],
            ideal_n=[r["ideal_photon_number"] for r in rows],
        )

    metrics = {f"reference_photons_{chip}": reference[chip] for chip in CHIPS}
    metrics["normalization"] = spec.link.normalization
    return ExperimentReport(experiment="fig-moments", metrics=metrics, points=points, traces=traces)
