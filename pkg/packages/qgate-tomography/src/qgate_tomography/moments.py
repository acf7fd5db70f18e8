"""Normally ordered field moments of single and joint photonic modes."""

import itertools
import logging
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_serializer, field_validator, model_validator

from qgate_common import ConfigError, DimensionError
from qgate_core import QuantumState, dagger, destroy, embed, partial_trace
from qgate_dynamics import TrajectoryResult
from qgate_pulses import TemporalMode, mode_overlap

logger = logging.getLogger(__name__)

MOMENT_TOL = 1e-8
DEFAULT_MAX_ORDER = 4
JOINT_MAX_ORDER = 2

MomentKey = tuple[int, ...]


class MomentSet(BaseModel):
    """⟨(a†)^n a^m⟩ keyed by (n, m), or ⟨(a†)^n a^m (b†)^p b^q⟩ keyed by (n, m, p, q)."""

    model_config = ConfigDict(frozen=True)

    values: dict[MomentKey, complex]
    n_modes: int = 1
    reference: str = "ideal"

    @field_validator("values", mode="before")
    @classmethod
    def parse_keys(cls, v):
        out = {}
        for key, value in dict(v).items():
            if isinstance(key, str):
                key = tuple(int(k) for k in key.split(","))
            out[tuple(key)] = complex(value)
        return out

    @model_validator(mode="after")
    def validate_moments(self):
        width = 2 * self.n_modes
        for key, value in self.values.items():
            if len(key) != width:
                raise ValueError(f"moment key {key} does not address {self.n_modes} mode(s)")
            mirrored = tuple(itertools.chain.from_iterable((key[i + 1], key[i]) for i in range(0, width, 2)))
            if mirrored in self.values and abs(self.values[mirrored] - value.conjugate()) > MOMENT_TOL:
                raise ValueError(f"moments {key} and {mirrored} are not complex conjugates")
        return self

    @field_serializer("values")
    def serialize_values(self, values: dict):
        return {",".join(map(str, k)): {"real": v.real, "imag": v.imag} for k, v in sorted(values.items())}

    def get(self, *key: int) -> complex:
        try:
            return self.values[tuple(key)]
        except KeyError:
            raise ConfigError(f"moment {key} was not extracted") from None

    @property
    def mean_field(self) -> complex:
        return self.get(0, 1)

    @property
    def photon_number(self) -> float:
        return self.get(1, 1).real

    def g2(self) -> float:
        """Second-order correlation ⟨(a†)²a²⟩/⟨a†a⟩² of a single mode."""
        n = self.photon_number
        if n <= 0:
            return float("nan")
        return float(self.get(2, 2).real / n**2)


def _ladder(dim: int, n: int, m: int) -> np.ndarray:
    a = destroy(dim)
    return np.linalg.matrix_power(dagger(a), n) @ np.linalg.matrix_power(a, m)


def moments_from_state(
    state: QuantumState, max_order: int = DEFAULT_MAX_ORDER, reference: str = "ideal"
) -> MomentSet:
    """Ideal moments of a Fock-truncated single mode for n + m ≤ ``max_order``."""
    if len(state.subsystem_dims) != 1:
        raise DimensionError(f"expected a single mode, got dims {state.subsystem_dims}")
    dim = state.dim
    values = {
        (n, m): state.expect(_ladder(dim, n, m))
        for n in range(max_order + 1)
        for m in range(max_order + 1 - n)
    }
    return MomentSet(values=values, n_modes=1, reference=reference)


def joint_moments_from_state(
    state: QuantumState, max_order: int = JOINT_MAX_ORDER, reference: str = "ideal"
) -> MomentSet:
    """Joint moments of two modes with n + m ≤ ``max_order`` and p + q ≤ ``max_order``."""
    dims = tuple(state.subsystem_dims)
    if len(dims) != 2:
        raise DimensionError(f"expected two modes, got dims {dims}")
    orders = [(n, m) for n in range(max_order + 1) for m in range(max_order + 1 - n)]
    values = {}
    for (n, m), (p, q) in itertools.product(orders, orders):
        op = embed(_ladder(dims[0], n, m), dims, 0) @ embed(_ladder(dims[1], p, q), dims, 1)
        values[(n, m, p, q)] = state.expect(op)
    return MomentSet(values=values, n_modes=2, reference=reference)


def normalize_moments(moments: MomentSet, reference_photons: float, reference: str = "reference") -> MomentSet:
    """Scale each moment by reference_photons^(-(order)/2).

    With a reference Fock |1⟩ of measured ⟨a†a⟩ = n_ref this removes the
    common detection efficiency from every moment.
    """
    if reference_photons <= 0:
        raise ConfigError("reference photon number must be positive")
    values = {k: v / reference_photons ** (0.5 * sum(k)) for k, v in moments.values.items()}
    return MomentSet(values=values, n_modes=moments.n_modes, reference=reference)


def project_moments(moments: MomentSet, overlap: complex) -> MomentSet:
    """Moments of A = c·b when the rest of A's mode is in vacuum: c̄ⁿcᵐ⟨(b†)ⁿbᵐ⟩."""
    if moments.n_modes != 1:
        raise DimensionError("projection onto a reference mode addresses a single mode")
    values = {(n, m): v * np.conj(overlap) ** n * overlap**m for (n, m), v in moments.values.items()}
    return MomentSet(values=values, n_modes=1, reference=moments.reference)


def extract_moments(
    source: TrajectoryResult | QuantumState,
    reference_mode: TemporalMode | None = None,
    modes: Sequence[str] = ("d",),
    max_order: int | None = None,
    capture_mode: TemporalMode | None = None,
) -> MomentSet:
    """Moments of the mode-matched field A = ∫ξ*(t)a_out(t)dt.

    A trajectory recorded with a capture mode holds the field of that mode
    in its detector mode; ``modes`` selects it (two names for joint
    moments). A state passed directly is the captured field state, filled
    from ``capture_mode``. With ``reference_mode`` set, the captured field
    is projected onto it through the overlap c = ⟨ξ_ref|ξ_capture⟩; field
    outside the captured mode is taken to be vacuum.

    Raises:
        ConfigError: a reference mode without a known capture mode.
        DimensionError: joint moments with a reference mode, or a reference
            mode on another time grid than the capture mode.
    """
    if isinstance(source, TrajectoryResult):
        keep = [source.mode_names.index(name) for name in modes]
        state = partial_trace(source.final_state, keep)
        capture_mode = capture_mode or source.capture_mode
    else:
        state = source
    n_modes = len(state.subsystem_dims)
    if n_modes == 1:
        moments = moments_from_state(state, max_order or DEFAULT_MAX_ORDER)
    else:
        moments = joint_moments_from_state(state, max_order or JOINT_MAX_ORDER)
    if reference_mode is None:
        return moments
    if capture_mode is None:
        raise ConfigError("projecting onto a reference mode needs the mode the field was captured in")
    if abs(reference_mode.energy() - 1.0) > 0.05:
        logger.warning(f"Reference mode energy {reference_mode.energy():.3f} is not normalized")
    overlap = mode_overlap(reference_mode, capture_mode) / np.sqrt(capture_mode.energy())
    logger.debug(f"Reference overlap with the capture mode: {abs(overlap):.4f}")
    return project_moments(moments, overlap)
