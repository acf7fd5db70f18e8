"""Process tomography of the photonic gates and the CPHASE Bell-state run."""

import logging
from functools import partial

import numpy as np

from qgate_common import map_ordered
from qgate_core import GATE_UNITARIES, QuantumState, matrix_to_json, state_fidelity
from qgate_tomography import process_tomography

from .pipeline import GatePipeline, physical_state
from .registry import experiment
from .report import ExperimentReport
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

TOMOGRAPHY_GATES = ("I", "X", "Y", "T", "CPHASE")
_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


def gate_tomography(spec: ExperimentSpec, gate_label: str) -> ExperimentReport:
    """χ_meas and χ_int of one gate, plus the same gate without transmon decoherence."""
    name = f"qpt-{gate_label.lower()}"
    n_qubits = 2 if gate_label == "CPHASE" else 1
    variants = [spec, spec.with_link(decoherence=False)]

    def run(variant: ExperimentSpec):
        pipeline = GatePipeline(variant, workers=spec.workers)
        return process_tomography(
            gate_label, pipeline.runner(gate_label), n_qubits, input_eta=spec.link.input_eta, workers=spec.workers
        )

    full, coherent = [run(v) for v in variants]
    metrics = {
        "F_tot": full.f_tot,
        "F_int": full.f_int,
        "F_tot_no_decoherence": coherent.f_tot,
        "F_int_no_decoherence": coherent.f_int,
        "projection_distance": full.projection_distance,
    }
    points = [{"variant": "full", **full.to_report()}, {"variant": "no_decoherence", **coherent.to_report()}]
    return ExperimentReport(experiment=name, metrics=metrics, points=points)


for _label in TOMOGRAPHY_GATES:
    experiment(f"qpt-{_label.lower()}", f"Process tomography of the {_label} gate")(
        partial(gate_tomography, gate_label=_label)
    )


def bell_target() -> QuantumState:
    """CPHASE applied to |+⟩|+⟩."""
    ket = GATE_UNITARIES["CPHASE"] @ np.kron(_PLUS, _PLUS)
    return QuantumState.from_ket(ket, (2, 2))


@experiment("bell", "Bell state from CPHASE on |+⟩|+⟩ with loss and decoherence budgets")
def bell_state(spec: ExperimentSpec) -> ExperimentReport:
    variants = {
        "full": spec,
        "no_decoherence": spec.with_link(decoherence=False),
        "ideal": spec.with_link(eta_loss=1.0, decoherence=False),
    }
    target = bell_target()
    plus_plus = np.outer(np.kron(_PLUS, _PLUS), np.kron(_PLUS, _PLUS).conj())

    def run(variant: ExperimentSpec) -> QuantumState:
        chain = GatePipeline(variant, workers=1).cphase_map()
        return physical_state(chain.apply(plus_plus), (2, 2))

    states = dict(zip(variants, map_ordered(run, variants.values(), spec.workers)))
    fidelities = {name: state_fidelity(state, target) for name, state in states.items()}
    points = [
        {"variant": name, "fidelity": fidelities[name], "state": matrix_to_json(states[name].matrix)}
        for name in variants
    ]
    metrics = {
        "fidelity": fidelities["full"],
        "fidelity_no_decoherence": fidelities["no_decoherence"],
        "fidelity_ideal": fidelities["ideal"],
        "loss_infidelity": fidelities["ideal"] - fidelities["no_decoherence"],
        "decoherence_infidelity": fidelities["no_decoherence"] - fidelities["full"],
    }
    logger.info(f"Bell fidelity {fidelities['full']:.4f} (no decoherence {fidelities['no_decoherence']:.4f})")
    return ExperimentReport(experiment="bell", metrics=metrics, points=points)
