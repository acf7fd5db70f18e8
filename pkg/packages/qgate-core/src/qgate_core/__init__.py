"""qgate-core - states, channels, process maps and fidelities."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .channels import KrausChannel, LinearMap, apply_channel, loss_channel, unitary_channel
from .fidelity import matrix_fidelity, process_fidelity, sqrtm_psd, state_fidelity
from .operators import (
    dagger,
    destroy,
    embed,
    ket,
    ket_to_dm,
    kron_all,
    number,
    projector,
)
from .process import (
    GATE_UNITARIES,
    PAULIS,
    ProcessMap,
    ideal_process,
    nearest_psd,
    pauli_basis,
    pauli_labels,
    process_from_unitary,
    project_psd,
)
from .serialization import matrix_from_json, matrix_to_json
from .states import (
    CARDINAL_KETS,
    QuantumState,
    basis_state,
    cardinal_states,
    partial_trace,
    partial_trace_matrix,
    tensor,
)

__all__ = [
    "CARDINAL_KETS",
    "GATE_UNITARIES",
    "KrausChannel",
    "LinearMap",
    "PAULIS",
    "ProcessMap",
    "QuantumState",
    "apply_channel",
    "basis_state",
    "cardinal_states",
    "dagger",
    "destroy",
    "embed",
    "ideal_process",
    "ket",
    "ket_to_dm",
    "kron_all",
    "loss_channel",
    "matrix_fidelity",
    "matrix_from_json",
    "matrix_to_json",
    "nearest_psd",
    "number",
    "partial_trace",
    "partial_trace_matrix",
    "pauli_basis",
    "pauli_labels",
    "process_fidelity",
    "process_from_unitary",
    "project_psd",
    "projector",
    "sqrtm_psd",
    "state_fidelity",
    "tensor",
    "unitary_channel",
]
