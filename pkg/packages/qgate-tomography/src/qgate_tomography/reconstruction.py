"""Single-rail density matrices from field moments."""

import logging

import numpy as np

from qgate_common import DimensionError
from qgate_core import QuantumState, embed, nearest_psd

from .moments import MomentSet, _ladder

logger = logging.getLogger(__name__)

PSD_WARN_TOL = 1e-9


def _physical(matrix: np.ndarray, dims: tuple[int, ...], what: str) -> QuantumState:
    projected = nearest_psd(matrix)
    distance = float(np.linalg.norm(projected - matrix))
    if distance > PSD_WARN_TOL:
        logger.warning(f"Reconstructed {what} was unphysical; projected by {distance:.3g}")
    return QuantumState.from_matrix(projected, dims)


def reconstruct_qubit_state(moments: MomentSet) -> QuantumState:
    """ρ = [[1 − ⟨a†a⟩, ⟨a†⟩], [⟨a⟩, ⟨a†a⟩]] in the {|0⟩, |1⟩} single-rail basis.

    The coherence follows ⟨a⟩ = ρ10.
    """
    if moments.n_modes != 1:
        raise DimensionError("single-mode moments are required")
    n = moments.photon_number
    a = moments.mean_field
    if n < 0:
        logger.warning(f"Negative photon number {n:.3g} in moments")
    rho = np.array([[1.0 - n, np.conj(a)], [a, n]], dtype=complex)
    return _physical(rho, (2,), "qubit state")


def reconstruct_two_mode_state(moments: MomentSet) -> QuantumState:
    """Linear inversion of joint moments onto the two-qubit single-rail basis.

    Moments with more than one creation or annihilation per mode vanish on
    the truncated space and do not constrain the inversion.
    """
    if moments.n_modes != 2:
        raise DimensionError("joint two-mode moments are required")
    dims = (2, 2)
    rows, rhs = [], []
    for (n, m, p, q), value in sorted(moments.values.items()):
        op = embed(_ladder(2, n, m), dims, 0) @ embed(_ladder(2, p, q), dims, 1)
        if not np.any(op):
            continue
        rows.append(op.T.ravel())
        rhs.append(value)
    rows.append(np.eye(4).ravel())
    rhs.append(1.0)
    solution, *_ = np.linalg.lstsq(np.array(rows), np.array(rhs, dtype=complex), rcond=None)
    rho = solution.reshape(4, 4)
    return _physical(0.5 * (rho + rho.conj().T), dims, "two-mode state")
