"""Cascaded two-chip model: Hilbert-space layout, Hamiltonian and collapse operators.

Chips are chained source → gate → (capture). Following the series product of
cascaded open systems, the total output is c1 = Σ L_i and every upstream /
downstream pair contributes H_c = (i/2)(L_up† L_down − L_down† L_up).
"""

import logging
from typing import Literal, Mapping

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from qgate_common import ConfigError
from qgate_core import dagger, destroy, embed, projector

from .params import DeviceParams, gate_device, source_device

logger = logging.getLogger(__name__)

TRANSMON_DIM = 3
CONVERTER_DIM = 2
CAPTURE_DIM = 2

LayoutName = Literal["link", "source", "gate"]

LAYOUT_CHIPS: dict[str, tuple[str, ...]] = {
    "link": ("source", "gate"),
    "source": ("source",),
    "gate": ("gate",),
}

CONTROL_CHANNELS = (
    "coupling.source",
    "coupling.gate",
    "drive.rate",
    "drive.detuning",
    "drive.active",
    "capture",
)

_SUFFIX = {"source": "S", "gate": "G"}


class Mode(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    dim: int
    kind: Literal["transmon", "converter", "capture", "spectator"]


class CascadedModel(BaseModel):
    """Device parameters, link efficiency and simulation layout.

    Layouts: ``link`` (a_S, b_S, a_G, b_G), ``source`` (a_S, b_S) for a
    source whose field bypasses the gate, ``gate`` (a_G, b_G). ``capture``
    appends an ideal detector mode d; ``spectators`` appends idle qubits.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    source: DeviceParams = Field(default_factory=source_device)
    gate: DeviceParams = Field(default_factory=gate_device)
    eta_loss: float = 0.75
    layout: LayoutName = "link"
    capture: bool = False
    spectators: int = Field(default=0, ge=0)
    decoherence: bool = True
    converter_detuning: float = 0.0
    dt: float = Field(default=1.0, gt=0)

    @field_validator("eta_loss")
    @classmethod
    def validate_eta(cls, v):
        if not 0.0 <= v <= 1.0:
            raise ValueError("eta_loss must lie in [0, 1]")
        return v

    @property
    def chips(self) -> tuple[str, ...]:
        return LAYOUT_CHIPS[self.layout]

    @property
    def modes(self) -> tuple[Mode, ...]:
        modes = []
        for chip in self.chips:
            s = _SUFFIX[chip]
            modes.append(Mode(name=f"a_{s}", dim=TRANSMON_DIM, kind="transmon"))
            modes.append(Mode(name=f"b_{s}", dim=CONVERTER_DIM, kind="converter"))
        if self.capture:
            modes.append(Mode(name="d", dim=CAPTURE_DIM, kind="capture"))
        for k in range(self.spectators):
            modes.append(Mode(name=f"p{k}", dim=2, kind="spectator"))
        return tuple(modes)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.dim for m in self.modes)

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))

    def index(self, name: str) -> int:
        for i, mode in enumerate(self.modes):
            if mode.name == name:
                return i
        raise ConfigError(f"mode '{name}' is not part of the {self.layout} layout")

    def local(self, name: str, op: np.ndarray) -> np.ndarray:
        return embed(op, self.dims, self.index(name))

    def device(self, chip: str) -> DeviceParams:
        return self.source if chip == "source" else self.gate

    def output_ops(self) -> dict[str, np.ndarray]:
        """Field contributions L_i of each chip, upstream first."""
        ops = {}
        if "source" in self.chips:
            ops["source"] = np.sqrt(self.eta_loss * self.source.kappa) * self.local("b_S", destroy(2))
        if "gate" in self.chips:
            ops["gate"] = np.sqrt(self.gate.kappa) * self.local("b_G", destroy(2))
        return ops

    def chip_output(self) -> np.ndarray:
        """Σ L_i leaving the chips, excluding any capture mode."""
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for op in self.output_ops().values():
            total = total + op
        return total


def cascade_term(upstream: np.ndarray, downstream: np.ndarray) -> np.ndarray:
    return 0.5j * (dagger(upstream) @ downstream - dagger(downstream) @ upstream)


def swap_operators(model: CascadedModel, chip: str) -> tuple[np.ndarray, np.ndarray]:
    """(X, Y) with J·e^{iφ}: H = J cosφ·X + J sinφ·Y = J(e^{iφ} a b† + e^{-iφ} a† b)."""
    s = _SUFFIX[chip]
    a = model.local(f"a_{s}", destroy(TRANSMON_DIM))
    b = model.local(f"b_{s}", destroy(CONVERTER_DIM))
    ab_dag = a @ dagger(b)
    return ab_dag + dagger(ab_dag), 1j * (ab_dag - dagger(ab_dag))


def cphase_drive_operator(model: CascadedModel) -> np.ndarray:
    """|f0⟩⟨e1| + h.c. on the gate transmon and converter."""
    fe = model.local("a_G", projector(TRANSMON_DIM, 2, 1))
    b = model.local("b_G", destroy(CONVERTER_DIM))
    op = fe @ b
    return op + dagger(op)


def capture_operators(model: CascadedModel) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian channels driven by Re λ and Im λ of the capture coupling."""
    d = model.local("d", destroy(CAPTURE_DIM))
    up = model.chip_output()
    h_re = cascade_term(up, d)
    h_im = -0.5 * (dagger(up) @ d + dagger(d) @ up)
    return h_re, h_im


def static_hamiltonian(model: CascadedModel) -> np.ndarray:
    """Anharmonicity, converter detuning and the source→gate cascade term."""
    h = np.zeros((model.dim, model.dim), dtype=complex)
    for chip in model.chips:
        s = _SUFFIX[chip]
        h -= model.device(chip).alpha * model.local(f"a_{s}", projector(TRANSMON_DIM, 2))
    if "gate" in model.chips and model.converter_detuning:
        b = model.local("b_G", destroy(CONVERTER_DIM))
        h += model.converter_detuning * dagger(b) @ b
    outputs = model.output_ops()
    if "source" in outputs and "gate" in outputs:
        h += cascade_term(outputs["source"], outputs["gate"])
    return h


def control_operators(model: CascadedModel) -> dict[str, tuple[np.ndarray, np.ndarray | None]]:
    """Operators multiplying (Re u, Im u) of each control channel."""
    ops: dict[str, tuple[np.ndarray, np.ndarray | None]] = {}
    for chip in model.chips:
        ops[f"coupling.{chip}"] = swap_operators(model, chip)
    if "gate" in model.chips:
        ops["drive.rate"] = (cphase_drive_operator(model), None)
        ops["drive.frame"] = (model.local("a_G", projector(TRANSMON_DIM, 2)), None)
    if model.capture:
        ops["capture"] = capture_operators(model)
    return ops


def effective_controls(model: CascadedModel, controls: Mapping[str, complex]) -> dict[str, complex]:
    """Map raw schedule channels onto operator coefficients.

    While the |f0⟩↔|e1⟩ drive is active the gate f level is referenced to the
    drive frame, which cancels the anharmonicity up to the drive detuning.
    """
    out = {k: complex(v) for k, v in controls.items() if k in ("coupling.source", "coupling.gate", "drive.rate", "capture")}
    active = complex(controls.get("drive.active", 0.0)).real
    if active and "gate" in model.chips:
        out["drive.frame"] = active * (model.gate.alpha + complex(controls.get("drive.detuning", 0.0)).real)
    return out


def build_hamiltonian(model: CascadedModel, controls: Mapping[str, complex] | None = None) -> np.ndarray:
    """Hermitian generator in the rotating frame for instantaneous control values."""
    h = static_hamiltonian(model)
    ops = control_operators(model)
    for channel, value in effective_controls(model, controls or {}).items():
        if channel not in ops:
            if value:
                raise ConfigError(f"control '{channel}' has no operator in the {model.layout} layout")
            continue
        re_op, im_op = ops[channel]
        h = h + value.real * re_op
        if im_op is not None:
            h = h + value.imag * im_op
    return h


def decoherence_ops(model: CascadedModel) -> dict[str, np.ndarray]:
    ops: dict[str, np.ndarray] = {}
    if not model.decoherence:
        return ops
    for chip in model.chips:
        s = _SUFFIX[chip]
        dev = model.device(chip)
        name = f"a_{s}"
        ops[f"relax_e_{s}"] = np.sqrt(dev.gamma1_e) * model.local(name, projector(TRANSMON_DIM, 0, 1))
        ops[f"relax_f_{s}"] = np.sqrt(dev.gamma1_f) * model.local(name, projector(TRANSMON_DIM, 1, 2))
        ops[f"dephase_e_{s}"] = np.sqrt(2.0 * dev.gamma_phi_e) * model.local(name, projector(TRANSMON_DIM, 1))
        ops[f"dephase_f_{s}"] = np.sqrt(2.0 * dev.gamma_phi_f) * model.local(name, projector(TRANSMON_DIM, 2))
    return ops


def collapse_ops(model: CascadedModel) -> dict[str, np.ndarray]:
    """Named collapse operators: c1 (chip output), c2 (link loss) and transmon decoherence.

    With a capture mode, c1 gains the time-dependent term λ(t)·d during
    propagation; the operator returned here is its static part.
    """
    ops = {"c1": model.chip_output()}
    if "source" in model.chips:
        b_s = model.local("b_S", destroy(CONVERTER_DIM))
        ops["c2"] = np.sqrt(model.source.kappa * (1.0 - model.eta_loss)) * b_s
    ops.update(decoherence_ops(model))
    return ops


def excitation_number(model: CascadedModel) -> np.ndarray:
    """Total excitation operator Σ a†a + b†b (+ d†d) over chips and capture."""
    total = np.zeros((model.dim, model.dim), dtype=complex)
    for mode in model.modes:
        if mode.kind == "spectator":
            continue
        op = model.local(mode.name, destroy(mode.dim))
        total += dagger(op) @ op
    return total
