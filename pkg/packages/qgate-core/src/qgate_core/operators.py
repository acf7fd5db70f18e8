"""Elementary operators on truncated Fock spaces and composite-space embedding."""

from functools import reduce
from math import prod
from typing import Sequence

import numpy as np

from qgate_common import DimensionError


def destroy(dim: int) -> np.ndarray:
    """Truncated annihilation operator on ``dim`` levels."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


def number(dim: int) -> np.ndarray:
    return np.diag(np.arange(dim, dtype=float)).astype(complex)


def projector(dim: int, row: int, col: int | None = None) -> np.ndarray:
    """Matrix unit |row⟩⟨col| (|row⟩⟨row| when col is omitted)."""
    col = row if col is None else col
    out = np.zeros((dim, dim), dtype=complex)
    out[row, col] = 1.0
    return out


def ket(dim: int, index: int) -> np.ndarray:
    out = np.zeros(dim, dtype=complex)
    out[index] = 1.0
    return out


def ket_to_dm(vector: Sequence[complex]) -> np.ndarray:
    vec = np.asarray(vector, dtype=complex).reshape(-1)
    return np.outer(vec, vec.conj())


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    if not factors:
        raise DimensionError("Cannot form a tensor product of an empty factor list")
    return reduce(np.kron, factors)


def embed(op: np.ndarray, dims: Sequence[int], index: int) -> np.ndarray:
    """Place a local operator on subsystem ``index`` of a composite space."""
    dims = list(dims)
    if not 0 <= index < len(dims):
        raise DimensionError(f"Subsystem index {index} out of range for dims {dims}")
    if op.shape != (dims[index], dims[index]):
        raise DimensionError(
            f"Operator of shape {op.shape} does not act on a {dims[index]}-level subsystem"
        )
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[index] = np.asarray(op, dtype=complex)
    return kron_all(factors)


def composite_dim(dims: Sequence[int]) -> int:
    return int(prod(dims))


def dagger(op: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(op, -1, -2))


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a
