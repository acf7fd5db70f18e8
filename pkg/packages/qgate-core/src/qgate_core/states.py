"""Density matrices on composite Hilbert spaces."""

import logging
from math import prod
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from qgate_common import DimensionError

from .operators import ket_to_dm, kron_all

logger = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-8
EIGEN_TOL = 1e-8


def _frozen_square(value) -> np.ndarray:
    arr = np.array(value, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be square, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class QuantumState(BaseModel):
    """Density matrix with declared subsystem dimensions.

    Validated on construction: Hermitian within 1e-10, unit trace within
    1e-8 and no eigenvalue below -1e-8.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    matrix: np.ndarray
    subsystem_dims: tuple[int, ...]

    @model_validator(mode="before")
    @classmethod
    def default_dims(cls, data):
        if isinstance(data, dict) and data.get("subsystem_dims") is None:
            matrix = np.asarray(data.get("matrix"))
            data = {**data, "subsystem_dims": (matrix.shape[0],)}
        return data

    @field_validator("matrix", mode="before")
    @classmethod
    def validate_matrix(cls, v):
        return _frozen_square(v)

    @field_validator("subsystem_dims")
    @classmethod
    def validate_dims(cls, v):
        if not v or any(d < 1 for d in v):
            raise ValueError("subsystem_dims must be a non-empty list of positive integers")
        return tuple(int(d) for d in v)

    @model_validator(mode="after")
    def validate_physical(self):
        dim = self.matrix.shape[0]
        if prod(self.subsystem_dims) != dim:
            raise ValueError(
                f"subsystem_dims {self.subsystem_dims} do not multiply to matrix dimension {dim}"
            )
        if np.max(np.abs(self.matrix - self.matrix.conj().T)) > HERMITIAN_TOL:
            raise ValueError("matrix is not Hermitian")
        trace = np.trace(self.matrix).real
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {trace:.3e} differs from 1")
        if np.linalg.eigvalsh(self.matrix).min() < -EIGEN_TOL:
            raise ValueError("matrix has negative eigenvalues")
        return self

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @classmethod
    def from_matrix(
        cls,
        matrix,
        subsystem_dims: Sequence[int] | None = None,
        renormalize: bool = False,
    ) -> "QuantumState":
        """Build a state, optionally Hermitizing and fixing the trace first.

        Integrator output drifts at the 1e-8 level; ``renormalize`` absorbs that.
        """
        m = np.array(matrix, dtype=complex)
        if renormalize:
            m = 0.5 * (m + m.conj().T)
            m = m / np.trace(m).real
        dims = tuple(subsystem_dims) if subsystem_dims is not None else (m.shape[0],)
        return cls(matrix=m, subsystem_dims=dims)

    @classmethod
    def from_ket(cls, vector, subsystem_dims: Sequence[int] | None = None) -> "QuantumState":
        vec = np.asarray(vector, dtype=complex).reshape(-1)
        vec = vec / np.linalg.norm(vec)
        return cls.from_matrix(ket_to_dm(vec), subsystem_dims)

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.trace(self.matrix @ op))


def _as_matrix(item) -> tuple[np.ndarray, tuple[int, ...]]:
    if isinstance(item, QuantumState):
        return item.matrix, item.subsystem_dims
    arr = np.asarray(item, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"tensor factors must be square, got shape {arr.shape}")
    return arr, (arr.shape[0],)


def tensor(factors: Iterable):
    """Tensor product of states or square operators.

    Returns a QuantumState when every factor is a QuantumState (dims
    concatenated), otherwise a plain matrix.
    """
    factors = list(factors)
    if not factors:
        raise DimensionError("tensor requires at least one factor")
    matrices, dims = zip(*(_as_matrix(f) for f in factors))
    product = kron_all(list(matrices))
    if all(isinstance(f, QuantumState) for f in factors):
        flat_dims = tuple(d for group in dims for d in group)
        return QuantumState.from_matrix(product, flat_dims)
    return product


def partial_trace_matrix(matrix: np.ndarray, dims: Sequence[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``."""
    dims = [int(d) for d in dims]
    n = len(dims)
    keep = sorted(set(keep))
    for k in keep:
        if not 0 <= k < n:
            raise DimensionError(f"subsystem index {k} out of range for {n} subsystems")
    if prod(dims) != matrix.shape[0]:
        raise DimensionError(f"dims {dims} do not match matrix dimension {matrix.shape[0]}")

    tensor_form = np.asarray(matrix).reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    for count, axis in enumerate(sorted(traced, reverse=True)):
        current = n - count
        tensor_form = np.trace(tensor_form, axis1=axis, axis2=axis + current)
    kept_dim = int(prod(dims[k] for k in keep)) if keep else 1
    return np.asarray(tensor_form).reshape(kept_dim, kept_dim)


def partial_trace(state: QuantumState, keep: Iterable[int]) -> QuantumState:
    keep = sorted(set(keep))
    reduced = partial_trace_matrix(state.matrix, state.subsystem_dims, keep)
    kept_dims = tuple(state.subsystem_dims[k] for k in keep) or (1,)
    return QuantumState.from_matrix(reduced, kept_dims, renormalize=True)


def basis_state(dims: Sequence[int], levels: Sequence[int]) -> QuantumState:
    """Pure product state |l0, l1, ...⟩."""
    if len(dims) != len(levels):
        raise DimensionError("one level per subsystem is required")
    vec = np.zeros(int(prod(dims)), dtype=complex)
    vec[np.ravel_multi_index(tuple(levels), tuple(dims))] = 1.0
    return QuantumState.from_ket(vec, dims)


_SQRT_HALF = 1.0 / np.sqrt(2.0)

CARDINAL_KETS: dict[str, np.ndarray] = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "1": np.array([0.0, 1.0], dtype=complex),
    "+": np.array([_SQRT_HALF, _SQRT_HALF], dtype=complex),
    "-": np.array([_SQRT_HALF, -_SQRT_HALF], dtype=complex),
    "+i": np.array([_SQRT_HALF, 1j * _SQRT_HALF], dtype=complex),
    "-i": np.array([_SQRT_HALF, -1j * _SQRT_HALF], dtype=complex),
}


def cardinal_states(n_qubits: int = 1, labels: Sequence[str] | None = None) -> dict[str, QuantumState]:
    """Product cardinal single-rail inputs keyed by comma-joined labels."""
    labels = list(labels) if labels is not None else list(CARDINAL_KETS)
    states = {lab: QuantumState.from_ket(CARDINAL_KETS[lab]) for lab in labels}
    if n_qubits == 1:
        return states
    if n_qubits != 2:
        raise DimensionError("cardinal inputs are provided for one or two qubits")
    return {
        f"{a},{b}": tensor([states[a], states[b]]) for a in labels for b in labels
    }
