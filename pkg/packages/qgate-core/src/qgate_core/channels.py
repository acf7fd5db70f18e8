"""Kraus channels and general linear maps on density matrices."""

import logging
from math import comb
from typing import Callable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from qgate_common import DimensionError, map_ordered

from .operators import dagger
from .states import QuantumState

logger = logging.getLogger(__name__)

COMPLETENESS_TOL = 1e-10


class KrausChannel(BaseModel):
    """Trace-preserving channel given by its Kraus operators."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    operators: tuple[np.ndarray, ...]
    label: str = ""

    @field_validator("operators", mode="before")
    @classmethod
    def validate_operators(cls, v):
        ops = []
        for op in v:
            arr = np.array(op, dtype=complex)
            if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
                raise ValueError(f"Kraus operator must be square, got shape {arr.shape}")
            arr.setflags(write=False)
            ops.append(arr)
        if not ops:
            raise ValueError("at least one Kraus operator is required")
        if len({op.shape for op in ops}) != 1:
            raise ValueError("Kraus operators must share one dimension")
        return tuple(ops)

    @model_validator(mode="after")
    def validate_completeness(self):
        total = sum(dagger(k) @ k for k in self.operators)
        if np.max(np.abs(total - np.eye(self.dim))) > COMPLETENESS_TOL:
            raise ValueError(f"Kraus operators of '{self.label}' do not sum to the identity")
        return self

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def apply_matrix(self, matrix: np.ndarray) -> np.ndarray:
        if matrix.shape != (self.dim, self.dim):
            raise DimensionError(
                f"channel '{self.label}' acts on dimension {self.dim}, got {matrix.shape}"
            )
        return sum(k @ matrix @ dagger(k) for k in self.operators)

    def to_linear_map(self) -> "LinearMap":
        return LinearMap.from_function(self.apply_matrix, self.dim)


def apply_channel(state: QuantumState, channel: KrausChannel) -> QuantumState:
    out = channel.apply_matrix(state.matrix)
    return QuantumState.from_matrix(out, state.subsystem_dims, renormalize=True)


def loss_channel(eta: float, dim: int = 2) -> KrausChannel:
    """Amplitude damping with transmission probability ``eta``.

    On a single rail (dim 2) the operators are |0⟩⟨0| + √η|1⟩⟨1| and
    √(1-η)|0⟩⟨1|. Larger ``dim`` applies the binomial photon-loss channel.
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmission probability must lie in [0, 1], got {eta}")

    ops = []
    for lost in range(dim):
        k = np.zeros((dim, dim), dtype=complex)
        for n in range(lost, dim):
            k[n - lost, n] = np.sqrt(comb(n, lost) * eta ** (n - lost) * (1.0 - eta) ** lost)
        ops.append(k)
    return KrausChannel(operators=ops, label=f"loss(eta={eta:g})")


def unitary_channel(unitary: np.ndarray, label: str = "unitary") -> KrausChannel:
    return KrausChannel(operators=[unitary], label=label)


class LinearMap:
    """Linear map on matrices stored through its action on matrix units.

    ``images[i, j]`` holds the image of |i⟩⟨j|. Instances are treated as
    immutable once built.
    """

    def __init__(self, images: np.ndarray):
        images = np.array(images, dtype=complex)
        if images.ndim != 4 or images.shape[0] != images.shape[1] or images.shape[2] != images.shape[3]:
            raise DimensionError(f"images must have shape (d, d, D, D), got {images.shape}")
        images.setflags(write=False)
        self.images = images

    @property
    def dim_in(self) -> int:
        return self.images.shape[0]

    @property
    def dim_out(self) -> int:
        return self.images.shape[2]

    @classmethod
    def from_function(
        cls,
        func: Callable[[np.ndarray], np.ndarray],
        dim_in: int,
        hermitian: bool = True,
        workers: int | None = 1,
    ) -> "LinearMap":
        """Tabulate ``func`` on every |i⟩⟨j|, on ``workers`` threads.

        With ``hermitian`` the map is assumed Hermiticity preserving and the
        image of |j⟩⟨i| is taken as the adjoint of the image of |i⟩⟨j|.
        """
        pairs = [(i, j) for i in range(dim_in) for j in range(dim_in) if not (hermitian and j < i)]

        def image(pair: tuple[int, int]) -> np.ndarray:
            unit = np.zeros((dim_in, dim_in), dtype=complex)
            unit[pair] = 1.0
            return np.asarray(func(unit), dtype=complex)

        outputs = map_ordered(image, pairs, workers)
        images = np.zeros((dim_in, dim_in) + outputs[0].shape, dtype=complex)
        for (i, j), out in zip(pairs, outputs):
            images[i, j] = out
            if hermitian and j > i:
                images[j, i] = dagger(out)
        return cls(images)

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls.from_function(lambda m: m, dim)

    def apply(self, matrix: np.ndarray) -> np.ndarray:
        if matrix.shape != (self.dim_in, self.dim_in):
            raise DimensionError(f"map acts on dimension {self.dim_in}, got {matrix.shape}")
        return np.tensordot(matrix, self.images, axes=([0, 1], [0, 1]))

    def apply_state(self, state: QuantumState, subsystem_dims: Sequence[int] | None = None) -> QuantumState:
        return QuantumState.from_matrix(self.apply(state.matrix), subsystem_dims, renormalize=True)

    def then(self, other: "LinearMap") -> "LinearMap":
        """Composite map applying ``self`` first and ``other`` second."""
        if other.dim_in != self.dim_out:
            raise DimensionError(f"cannot compose: {self.dim_out} -> {other.dim_in}")
        return LinearMap(np.tensordot(self.images, other.images, axes=([2, 3], [0, 1])))

    def apply_to_subsystem(
        self, matrix: np.ndarray, dims: Sequence[int], index: int
    ) -> tuple[np.ndarray, tuple[int, ...]]:
        """Act on subsystem ``index`` of a composite matrix.

        Returns the new matrix and the updated subsystem dimensions.
        """
        dims = [int(d) for d in dims]
        n = len(dims)
        if not 0 <= index < n:
            raise DimensionError(f"subsystem index {index} out of range for dims {dims}")
        if dims[index] != self.dim_in:
            raise DimensionError(
                f"subsystem {index} has dimension {dims[index]}, map expects {self.dim_in}"
            )
        t = np.asarray(matrix).reshape(dims + dims)
        t = np.moveaxis(t, (index, n + index), (0, 1))
        out = np.tensordot(self.images, t, axes=([0, 1], [0, 1]))
        out = np.moveaxis(out, (0, 1), (index, n + index))
        new_dims = list(dims)
        new_dims[index] = self.dim_out
        size = int(np.prod(new_dims))
        return out.reshape(size, size), tuple(new_dims)

    def trace_deficit(self) -> float:
        """Largest deviation of Tr(map(|i⟩⟨i|)) from 1 over the basis."""
        traces = np.einsum("iikk->i", self.images).real
        return float(np.max(np.abs(traces - 1.0)))
