"""Process matrices in the Pauli operator basis."""

import itertools
import logging
from functools import reduce

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from qgate_common import DimensionError, NumericalError

from .states import EIGEN_TOL, HERMITIAN_TOL, TRACE_TOL

logger = logging.getLogger(__name__)

PAULI_LABELS = ("I", "X", "Y", "Z")

PAULIS: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

GATE_UNITARIES: dict[str, np.ndarray] = {
    "I": np.eye(2, dtype=complex),
    "X": PAULIS["X"],
    "Y": PAULIS["Y"],
    "Z": PAULIS["Z"],
    "T": np.diag([1.0, np.exp(1j * np.pi / 4)]).astype(complex),
    "H": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0),
    "CPHASE": np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex),
}


def pauli_labels(n_qubits: int) -> list[str]:
    return ["".join(p) for p in itertools.product(PAULI_LABELS, repeat=n_qubits)]


def pauli_basis(n_qubits: int) -> list[np.ndarray]:
    """Pauli strings ordered I, X, Y, Z per qubit, first qubit slowest."""
    return [
        reduce(np.kron, (PAULIS[p] for p in label)) for label in pauli_labels(n_qubits)
    ]


def _qubits_for_dim(dim: int) -> int:
    n = 0
    while 4**n < dim:
        n += 1
    if 4**n != dim:
        raise DimensionError(f"dimension {dim} is not a power of 4")
    return n


class ProcessMap(BaseModel):
    """χ matrix of an n-qubit process, Hermitian with unit trace."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    chi: np.ndarray
    n_qubits: int

    @field_validator("chi", mode="before")
    @classmethod
    def validate_chi(cls, v):
        arr = np.array(v, dtype=complex)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"chi must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_shape(self):
        if self.chi.shape[0] != 4**self.n_qubits:
            raise ValueError(f"chi of size {self.chi.shape[0]} does not match {self.n_qubits} qubits")
        if np.max(np.abs(self.chi - self.chi.conj().T)) > HERMITIAN_TOL:
            raise ValueError("chi is not Hermitian")
        if abs(np.trace(self.chi).real - 1.0) > TRACE_TOL:
            raise ValueError("chi does not have unit trace")
        return self

    def is_physical(self, tol: float = EIGEN_TOL) -> bool:
        return bool(np.linalg.eigvalsh(self.chi).min() >= -tol)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Apply the process: Σ χ_mn P_m ρ P_n†."""
        basis = pauli_basis(self.n_qubits)
        out = np.zeros_like(rho, dtype=complex)
        for m, pm in enumerate(basis):
            for n, pn in enumerate(basis):
                if self.chi[m, n] != 0:
                    out += self.chi[m, n] * pm @ rho @ pn.conj().T
        return out


def process_from_unitary(unitary: np.ndarray) -> ProcessMap:
    unitary = np.asarray(unitary, dtype=complex)
    d = unitary.shape[0]
    n = _qubits_for_dim(d * d)
    coeffs = np.array([np.trace(p.conj().T @ unitary) / d for p in pauli_basis(n)])
    return ProcessMap(chi=np.outer(coeffs, coeffs.conj()), n_qubits=n)


def ideal_process(gate_label: str) -> ProcessMap:
    try:
        unitary = GATE_UNITARIES[gate_label]
    except KeyError:
        raise ValueError(
            f"Unknown gate '{gate_label}'. Valid gates: {', '.join(GATE_UNITARIES)}"
        ) from None
    return process_from_unitary(unitary)


def nearest_psd(matrix: np.ndarray) -> np.ndarray:
    """Hermitize, clip negative eigenvalues and renormalize the trace to 1."""
    m = np.asarray(matrix, dtype=complex)
    m = 0.5 * (m + m.conj().T)
    vals, vecs = np.linalg.eigh(m)
    vals = np.clip(vals, 0.0, None)
    total = vals.sum()
    if total <= 0.0:
        raise NumericalError("matrix has no positive spectral weight to renormalize")
    out = (vecs * (vals / total)) @ vecs.conj().T
    return 0.5 * (out + out.conj().T)


def project_psd(matrix: np.ndarray) -> ProcessMap:
    m = np.asarray(matrix, dtype=complex)
    return ProcessMap(chi=nearest_psd(m), n_qubits=_qubits_for_dim(m.shape[0]))
