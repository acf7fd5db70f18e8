"""JSON form of complex matrices: {dims, real, imag}."""

from typing import Any, Sequence

import numpy as np

from qgate_common import DimensionError


def matrix_to_json(matrix: np.ndarray, dims: Sequence[int] | None = None) -> dict[str, Any]:
    m = np.asarray(matrix, dtype=complex)
    return {
        "dims": [int(d) for d in (dims if dims is not None else [m.shape[0]])],
        "real": m.real.tolist(),
        "imag": m.imag.tolist(),
    }


def matrix_from_json(data: dict[str, Any]) -> tuple[np.ndarray, tuple[int, ...]]:
    try:
        real = np.asarray(data["real"], dtype=float)
        imag = np.asarray(data["imag"], dtype=float)
        dims = tuple(int(d) for d in data["dims"])
    except KeyError as e:
        raise ValueError(f"matrix JSON is missing field {e}") from e
    if real.shape != imag.shape:
        raise DimensionError("real and imaginary parts differ in shape")
    if int(np.prod(dims)) != real.shape[0]:
        raise DimensionError(f"dims {list(dims)} do not match matrix size {real.shape[0]}")
    return real + 1j * imag, dims
