"""Uhlmann fidelities between states and between process matrices."""

import numpy as np

from qgate_common import DimensionError

from .process import ProcessMap
from .states import EIGEN_TOL, QuantumState


def sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(0.5 * (matrix + matrix.conj().T))
    return (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T


def _check_psd(matrix: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -EIGEN_TOL:
        raise ValueError(f"{name} is not positive semidefinite")
    return m


def matrix_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """(Tr √(√a b √a))² clipped to [0, 1]."""
    a = _check_psd(a, "first argument")
    b = _check_psd(b, "second argument")
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    root = sqrtm_psd(a)
    inner = root @ b @ root
    eigs = np.clip(np.linalg.eigvalsh(0.5 * (inner + inner.conj().T)), 0.0, None)
    return float(np.clip(np.sum(np.sqrt(eigs)) ** 2, 0.0, 1.0))


def state_fidelity(rho, sigma) -> float:
    a = rho.matrix if isinstance(rho, QuantumState) else rho
    b = sigma.matrix if isinstance(sigma, QuantumState) else sigma
    return matrix_fidelity(a, b)


def process_fidelity(chi1: ProcessMap, chi2: ProcessMap) -> float:
    if chi1.n_qubits != chi2.n_qubits:
        raise DimensionError(
            f"process maps act on {chi1.n_qubits} and {chi2.n_qubits} qubits"
        )
    return matrix_fidelity(chi1.chi, chi2.chi)
