"""Process tomography over cardinal single-rail inputs."""

import logging
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer

from qgate_common import DimensionError, NumericalError, map_ordered
from qgate_core import (
    ProcessMap,
    QuantumState,
    apply_channel,
    cardinal_states,
    ideal_process,
    loss_channel,
    matrix_to_json,
    nearest_psd,
    pauli_basis,
    process_fidelity,
)

logger = logging.getLogger(__name__)

DEFAULT_INPUT_ETA = 0.75
PROJECTION_WARN = 0.05

# Four single-qubit inputs spanning the 2×2 operators; their products give the reduced two-qubit set.
REDUCED_LABELS = ("0", "1", "+", "+i")

Runner = Callable[[QuantumState], QuantumState]


class ProcessTomographyResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    gate: str
    n_qubits: int
    input_labels: tuple[str, ...]
    outputs: tuple[QuantumState, ...]
    chi_meas: ProcessMap
    chi_int: ProcessMap
    f_tot: float
    f_int: float
    projection_distance: float

    @field_serializer("outputs")
    def serialize_outputs(self, outputs):
        return [matrix_to_json(s.matrix, s.subsystem_dims) for s in outputs]

    @field_serializer("chi_meas", "chi_int")
    def serialize_chi(self, chi: ProcessMap):
        return matrix_to_json(chi.chi, (4,) * chi.n_qubits)

    def to_report(self) -> dict:
        data = self.model_dump(mode="json")
        data["inputs"] = list(self.input_labels)
        data["F_tot"] = data.pop("f_tot")
        data["F_int"] = data.pop("f_int")
        return data


def chi_from_io(
    inputs: Sequence[np.ndarray], outputs: Sequence[np.ndarray], n_qubits: int
) -> tuple[ProcessMap, float]:
    """Least-squares χ with Σ χ_mn P_m ρ_i P_n† = ρ_i', projected onto physical maps.

    Returns:
        The projected process and the Frobenius distance of the projection.

    Raises:
        DimensionError: inputs and outputs differ in number or dimension.
        NumericalError: the inputs do not span the operator space.
    """
    if len(inputs) != len(outputs):
        raise DimensionError(f"{len(inputs)} inputs but {len(outputs)} outputs")
    d = 2**n_qubits
    basis = pauli_basis(n_qubits)
    size = len(basis)
    columns = np.zeros((len(inputs), d, d, size, size), dtype=complex)
    for i, rho in enumerate(inputs):
        rho = np.asarray(rho, dtype=complex)
        if rho.shape != (d, d):
            raise DimensionError(f"input {i} has shape {rho.shape}, expected {(d, d)}")
        for m, pm in enumerate(basis):
            left = pm @ rho
            for n, pn in enumerate(basis):
                columns[i, :, :, m, n] = left @ pn.conj().T
    design = columns.reshape(len(inputs) * d * d, size * size)
    rank = np.linalg.matrix_rank(design)
    if rank < size * size:
        raise NumericalError(
            f"singular inversion: {len(inputs)} inputs give rank {rank} < {size * size}"
        )
    target = np.concatenate([np.asarray(o, dtype=complex).ravel() for o in outputs])
    solution, *_ = np.linalg.lstsq(design, target, rcond=None)
    chi = solution.reshape(size, size)
    chi = 0.5 * (chi + chi.conj().T)
    projected = nearest_psd(chi)
    distance = float(np.linalg.norm(projected - chi))
    if distance > PROJECTION_WARN:
        logger.warning(f"χ projection distance {distance:.3f} exceeds {PROJECTION_WARN}")
    return ProcessMap(chi=projected, n_qubits=n_qubits), distance


def degraded_inputs(states: Sequence[QuantumState], eta: float) -> list[np.ndarray]:
    """Apply photon loss of transmission ``eta`` to every rail of each input."""
    channel = loss_channel(eta)
    per_rail = channel.to_linear_map()
    out = []
    for state in states:
        if state.subsystem_dims == (2,):
            out.append(apply_channel(state, channel).matrix)
            continue
        lossy = state.matrix
        for index in range(len(state.subsystem_dims)):
            lossy, _ = per_rail.apply_to_subsystem(lossy, state.subsystem_dims, index)
        out.append(lossy)
    return out


def process_tomography(
    gate_label: str,
    runner: Runner,
    n_qubits: int = 1,
    input_eta: float = DEFAULT_INPUT_ETA,
    input_labels: Sequence[str] | None = None,
    workers: int | None = None,
) -> ProcessTomographyResult:
    """Run ``runner`` on cardinal inputs and invert for χ_meas and χ_int.

    χ_meas assumes ideal inputs. χ_int assumes inputs that already lost a
    fraction 1 − ``input_eta`` of their photons before reaching the gate.
    """
    inputs = cardinal_states(n_qubits, input_labels)
    labels = tuple(inputs)
    states = [inputs[label] for label in labels]
    logger.info(f"Process tomography of {gate_label} over {len(states)} inputs")
    outputs = map_ordered(runner, states, workers)
    for label, out in zip(labels, outputs):
        if out.dim != 2**n_qubits:
            raise DimensionError(f"runner returned dimension {out.dim} for input {label}")
    out_matrices = [o.matrix for o in outputs]
    chi_meas, distance = chi_from_io([s.matrix for s in states], out_matrices, n_qubits)
    chi_int, _ = chi_from_io(degraded_inputs(states, input_eta), out_matrices, n_qubits)
    ideal = ideal_process(gate_label)
    f_tot = process_fidelity(chi_meas, ideal)
    f_int = process_fidelity(chi_int, ideal)
    logger.info(f"{gate_label}: F_tot={f_tot:.4f} F_int={f_int:.4f}")
    return ProcessTomographyResult(
        gate=gate_label,
        n_qubits=n_qubits,
        input_labels=labels,
        outputs=tuple(outputs),
        chi_meas=chi_meas,
        chi_int=chi_int,
        f_tot=f_tot,
        f_int=f_int,
        projection_distance=distance,
    )


def ideal_runner(gate_label: str) -> Runner:
    """Runner applying the ideal gate unitary."""
    process = ideal_process(gate_label)

    def run(state: QuantumState) -> QuantumState:
        return QuantumState.from_matrix(process.apply(state.matrix), state.subsystem_dims, renormalize=True)

    return run
