"""Piecewise-constant Lindblad propagation of the cascaded model."""

import logging
from typing import Literal, Mapping, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.integrate import solve_ivp, trapezoid
from scipy.linalg import expm

from qgate_common import ConfigError, DimensionError, NumericalError
from qgate_core import LinearMap, QuantumState, dagger, destroy, embed, partial_trace_matrix, projector
from qgate_pulses import PulseSchedule, RotationEvent, TemporalMode, drag_envelope

from .emission import capture_coupling
from .model import (
    CAPTURE_DIM,
    TRANSMON_DIM,
    CascadedModel,
    collapse_ops,
    control_operators,
    effective_controls,
    static_hamiltonian,
)
from .params import DeviceParams

logger = logging.getLogger(__name__)

RTOL = 1e-8
ATOL = 1e-10
TRACE_DRIFT_TOL = 1e-6

Rotation = tuple[int, np.ndarray]


def rotation_unitary(angle: float, axis_phase: float, dim: int = TRANSMON_DIM) -> np.ndarray:
    """exp(−iθ/2(cosφ σx + sinφ σy)) on {|g⟩, |e⟩}; identity on higher levels."""
    u = np.eye(dim, dtype=complex)
    c, s = np.cos(0.5 * angle), np.sin(0.5 * angle)
    u[0, 0] = c
    u[1, 1] = c
    u[0, 1] = -1j * s * np.exp(-1j * axis_phase)
    u[1, 0] = -1j * s * np.exp(1j * axis_phase)
    return u


def drag_unitary(envelope: np.ndarray, anharmonicity: float, dt: float, dim: int = TRANSMON_DIM) -> np.ndarray:
    """Propagator of a transmon driven by a complex Rabi envelope, one sample per cell.

    H(t) = −α|f⟩⟨f| + (E(t)a† + E*(t)a)/2. The result is returned in the
    frame of the undriven transmon, so a following idle of the pulse length
    restores the lab-frame evolution.
    """
    a = destroy(dim)
    static = -anharmonicity * projector(dim, 2)
    u = np.eye(dim, dtype=complex)
    for value in np.asarray(envelope, dtype=complex):
        h = static + 0.5 * (value * dagger(a) + np.conj(value) * a)
        u = expm(-1j * h * dt) @ u
    return expm(1j * static * dt * len(envelope)) @ u


class LindbladGenerator:
    """Operators of the master equation, split into static and controlled parts.

    The right-hand side is written with the effective Hamiltonian
    H_eff = H − (i/2)Σ L†L, which holds for any (also non-Hermitian) input
    matrix: dρ/dt = −i(H_eff ρ − ρ H_eff†) + Σ L ρ L†.
    """

    def __init__(self, model: CascadedModel):
        self.model = model
        self.dim = model.dim
        self.control_ops = control_operators(model)
        jumps = collapse_ops(model)
        self.c1 = jumps.pop("c1")
        static = [op for op in jumps.values() if np.any(op)]
        if not model.capture:
            static.append(self.c1)
        self.static_jumps = np.array(static) if static else np.zeros((0, self.dim, self.dim), dtype=complex)
        self.static_jumps_dag = dagger(self.static_jumps)
        decay = np.einsum("kji,kjl->il", self.static_jumps.conj(), self.static_jumps)
        h_eff = static_hamiltonian(model) - 0.5j * decay
        self.d = None
        if model.capture:
            d = model.local("d", destroy(CAPTURE_DIM))
            c1 = self.c1
            h_eff = h_eff - 0.5j * dagger(c1) @ c1
            self.d = d
            self.capture_re_decay = dagger(c1) @ d + dagger(d) @ c1
            self.capture_im_decay = 1j * (dagger(c1) @ d - dagger(d) @ c1)
            self.capture_number = dagger(d) @ d
        self.h_eff_static = h_eff

    def check_controls(self, controls: Mapping[str, np.ndarray]) -> None:
        for channel, values in controls.items():
            if channel in ("drive.detuning", "drive.active") or channel in self.control_ops:
                continue
            if np.any(np.asarray(values) != 0):
                raise ConfigError(f"control '{channel}' has no operator in the {self.model.layout} layout")

    def h_eff(self, values: Mapping[str, complex]) -> np.ndarray:
        h = self.h_eff_static.copy()
        for channel, value in effective_controls(self.model, values).items():
            if channel not in self.control_ops or not value:
                continue
            re_op, im_op = self.control_ops[channel]
            h += value.real * re_op
            if im_op is not None and value.imag:
                h += value.imag * im_op
        lam = complex(values.get("capture", 0.0))
        if self.d is not None and lam:
            h -= 0.5j * (
                lam.real * self.capture_re_decay + lam.imag * self.capture_im_decay + abs(lam) ** 2 * self.capture_number
            )
        return h

    def output_operator(self, lam: complex = 0.0) -> np.ndarray:
        """c1(t), including λ(t)·d when a capture mode is present."""
        if self.d is None or not lam:
            return self.c1
        return self.c1 + lam * self.d

    def rhs(self, rho: np.ndarray, h_eff: np.ndarray, c1: np.ndarray | None) -> np.ndarray:
        out = -1j * (h_eff @ rho - rho @ dagger(h_eff))
        if len(self.static_jumps):
            out += (self.static_jumps @ rho @ self.static_jumps_dag).sum(axis=0)
        if c1 is not None:
            out += c1 @ rho @ dagger(c1)
        return out


def _runs(controls: Mapping[str, np.ndarray], n_steps: int, breaks: set[int]) -> list[tuple[int, int]]:
    """Split [0, n_steps) into runs of cells with identical control values."""
    if n_steps == 0:
        return []
    if controls:
        table = np.vstack([np.asarray(v, dtype=complex) for v in controls.values()])
        change = np.any(table[:, 1:] != table[:, :-1], axis=0)
        edges = set((np.nonzero(change)[0] + 1).tolist())
    else:
        edges = set()
    edges |= {b for b in breaks if 0 < b < n_steps}
    bounds = [0] + sorted(edges) + [n_steps]
    return list(zip(bounds[:-1], bounds[1:]))


def propagate(
    model: CascadedModel,
    rho0: np.ndarray,
    controls: Mapping[str, np.ndarray],
    n_steps: int,
    t_origin: float = 0.0,
    rotations: Sequence[Rotation] = (),
    store: Literal["all", "final"] = "final",
    generator: LindbladGenerator | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the master equation over ``n_steps`` cells of ``model.dt``.

    ``controls`` holds one complex value per cell for each channel;
    ``rotations`` are (boundary index, unitary) pairs applied as U ρ U† at
    that cell boundary. The input matrix need not be a density matrix.

    Returns:
        (times, states): boundaries and the states there, every boundary with
        ``store="all"``, otherwise only the final one.

    Raises:
        NumericalError: the integrator fails.
    """
    gen = generator or LindbladGenerator(model)
    dim = gen.dim
    rho = np.array(rho0, dtype=complex)
    if rho.shape != (dim, dim):
        raise DimensionError(f"state has shape {rho.shape}, model dimension is {dim}")
    dt = model.dt
    controls = {k: np.asarray(v, dtype=complex) for k, v in controls.items()}
    for channel, values in controls.items():
        if values.size != n_steps:
            raise DimensionError(f"control '{channel}' has {values.size} samples, expected {n_steps}")
    gen.check_controls(controls)

    by_index: dict[int, list[np.ndarray]] = {}
    for index, unitary in rotations:
        if not 0 <= index <= n_steps:
            raise ConfigError(f"rotation at boundary {index} lies outside the {n_steps}-cell window")
        by_index.setdefault(int(index), []).append(unitary)

    def rotate(matrix: np.ndarray, index: int) -> np.ndarray:
        for u in by_index.get(index, ()):
            matrix = u @ matrix @ dagger(u)
        return matrix

    times = t_origin + dt * np.arange(n_steps + 1)
    stored = [] if store == "all" else None
    rho = rotate(rho, 0)
    if stored is not None:
        stored.append(rho.copy())

    for lo, hi in _runs(controls, n_steps, set(by_index)):
        values = {k: v[lo] for k, v in controls.items()}
        h_eff = gen.h_eff(values)
        c1 = gen.output_operator(values.get("capture", 0.0)) if model.capture else None

        def fun(_t, y, h_eff=h_eff, c1=c1):
            return gen.rhs(y.reshape(dim, dim), h_eff, c1).ravel()

        t_a, t_b = times[lo], times[hi]
        t_eval = times[lo + 1 : hi + 1] if stored is not None else [t_b]
        sol = solve_ivp(fun, (t_a, t_b), rho.ravel(), method="RK45", t_eval=t_eval, rtol=RTOL, atol=ATOL)
        if not sol.success:
            raise NumericalError(f"integration failed at t={sol.t[-1] if sol.t.size else t_a:.3f} ns: {sol.message}")
        states = sol.y.T.reshape(-1, dim, dim)
        rho = rotate(states[-1], hi)
        if stored is not None:
            stored.extend(states[:-1])
            stored.append(rho.copy())

    if stored is None:
        return times[-1:], rho[None]
    return times, np.array(stored)


class TrajectoryResult(BaseModel):
    """Sampled trajectory of the cascaded model.

    ``output_amplitude`` is ⟨c1⟩ of the chip output; ``populations`` maps a
    mode name to its level populations (n_times, dim). ``capture_mode`` is the
    envelope the detector mode d was filled from.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    times: np.ndarray
    states: np.ndarray | None
    final_state: QuantumState
    dims: tuple[int, ...]
    mode_names: tuple[str, ...]
    output_amplitude: np.ndarray
    populations: dict[str, np.ndarray]
    emitted_excitation: float
    max_trace_error: float
    capture_mode: TemporalMode | None = None

    def reduced(self, names: Sequence[str]) -> QuantumState:
        keep = [self.mode_names.index(n) for n in names]
        matrix = partial_trace_matrix(self.final_state.matrix, self.dims, keep)
        return QuantumState.from_matrix(matrix, tuple(self.dims[k] for k in keep), renormalize=True)

    def to_csv(self) -> str:
        """Time, output field and mean occupation of every mode."""
        header = ["t", "output_re", "output_im"] + [f"n_{name}" for name in self.populations]
        columns = [self.times, self.output_amplitude.real, self.output_amplitude.imag]
        for pops in self.populations.values():
            columns.append(pops @ np.arange(pops.shape[1]))
        lines = [",".join(header)]
        for row in np.column_stack(columns):
            lines.append(",".join(f"{x:.17g}" for x in row))
        return "\n".join(lines) + "\n"


def event_unitary(event: RotationEvent, device: DeviceParams, dt: float) -> np.ndarray:
    """Transmon unitary of a scheduled rotation: DRAG-shaped when the event has a width."""
    if event.sigma is None:
        return rotation_unitary(event.angle, event.axis_phase)
    envelope = drag_envelope(
        event.angle, event.axis_phase, event.sigma, event.n_sigma, dt, anharmonicity=device.alpha
    )
    return drag_unitary(envelope, device.alpha, dt)


def _schedule_rotations(
    model: CascadedModel, schedule: PulseSchedule, t_origin: float, n_steps: int
) -> list[Rotation]:
    # A rotation on the closing boundary belongs to the next window.
    rotations = []
    for event in schedule.of_kind("rotation"):
        if event.channel not in model.chips:
            raise ConfigError(f"rotation on '{event.channel}' has no qubit in the {model.layout} layout")
        index = int(round((event.t_start - t_origin) / model.dt))
        if not 0 <= index < n_steps:
            continue
        name = "a_S" if event.channel == "source" else "a_G"
        unitary = event_unitary(event, model.device(event.channel), model.dt)
        op = embed(unitary, model.dims, model.index(name))
        rotations.append((index, op))
    return rotations


class ControlGrid(BaseModel):
    """Rasterized controls of a schedule window on the model grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    t_origin: float
    n_steps: int
    controls: dict[str, np.ndarray]
    rotations: list[tuple[int, np.ndarray]]


def schedule_controls(
    model: CascadedModel,
    schedule: PulseSchedule,
    t_span: tuple[float, float] | None = None,
    capture_mode: TemporalMode | None = None,
) -> ControlGrid:
    """Controls, capture coupling and rotations of ``schedule`` over ``t_span``.

    Raises:
        ConfigError: empty window, or a capture layout without reference mode.
    """
    t0, t1 = t_span if t_span is not None else (0.0, schedule.duration)
    n_steps = int(round((t1 - t0) / model.dt))
    if n_steps <= 0:
        raise ConfigError(f"empty time window ({t0}, {t1})")
    controls = schedule.control_samples(t0, model.dt, n_steps)
    if model.capture:
        if capture_mode is None:
            raise ConfigError("a capture mode requires a reference temporal mode")
        controls["capture"] = capture_coupling(capture_mode, t0, model.dt, n_steps)
    rotations = _schedule_rotations(model, schedule, t0, n_steps)
    return ControlGrid(t_origin=t0, n_steps=n_steps, controls=controls, rotations=rotations)


def output_amplitude(trajectory: TrajectoryResult, model: CascadedModel) -> np.ndarray:
    """⟨c1⟩(t) = Tr(c1 ρ(t)) of the field leaving the chips.

    Raises:
        ConfigError: the trajectory was recorded without states.
    """
    if trajectory.states is None:
        raise ConfigError("trajectory has no stored states; evolve with store_states=True")
    return np.einsum("ij,kji->k", model.chip_output(), trajectory.states)


def emitted_excitation(
    model: CascadedModel,
    times: np.ndarray,
    states: np.ndarray,
    capture: np.ndarray | None = None,
) -> float:
    """∫(⟨c1†c1⟩ + ⟨c2†c2⟩)dt over consecutive sampled states.

    ``capture`` holds the per-cell capture coupling; c1 then includes λ·d,
    so light absorbed by the detector mode does not count as emitted.
    Each cell is integrated with the trapezoid rule at its own coupling.
    """
    gen = LindbladGenerator(model)
    c2 = collapse_ops(model).get("c2")
    lost = dagger(c2) @ c2 if c2 is not None else 0.0
    if capture is None:
        rate = dagger(gen.c1) @ gen.c1 + lost
        flux = np.einsum("ij,kji->k", rate, states).real
        return float(trapezoid(flux, times))
    total = 0.0
    for k in range(times.size - 1):
        op = gen.output_operator(capture[k])
        rate = dagger(op) @ op + lost
        ends = np.einsum("ij,kji->k", rate, states[k : k + 2]).real
        total += 0.5 * (times[k + 1] - times[k]) * ends.sum()
    return float(total)


def evolve(
    model: CascadedModel,
    schedule: PulseSchedule,
    initial: QuantumState,
    t_span: tuple[float, float] | None = None,
    dt_out: float | None = None,
    capture_mode: TemporalMode | None = None,
    store_states: bool = False,
) -> TrajectoryResult:
    """Run ``schedule`` on ``model`` from ``initial`` and record observables.

    Observables are sampled every ``dt_out`` (default: every cell); the
    emitted excitation is always integrated at full resolution.

    Raises:
        DimensionError: ``initial`` does not match the model layout.
        ConfigError: capture requested without a reference mode, or a control
            targets a chip absent from the layout.
        NumericalError: integration failure or trace drift above 1e-6.
    """
    if tuple(initial.subsystem_dims) != model.dims:
        raise DimensionError(f"initial state dims {initial.subsystem_dims} do not match model dims {model.dims}")
    grid = schedule_controls(model, schedule, t_span, capture_mode)
    t0, n_steps, controls = grid.t_origin, grid.n_steps, grid.controls
    stride = 1 if dt_out is None else max(int(round(dt_out / model.dt)), 1)
    gen = LindbladGenerator(model)
    logger.debug(f"Evolving {model.layout} layout, dim={model.dim}, {n_steps} cells from t={t0:g} ns")
    times, states = propagate(
        model, initial.matrix, controls, n_steps, t0, grid.rotations, store="all", generator=gen
    )

    traces = np.einsum("kii->k", states).real
    drift = float(np.max(np.abs(traces - 1.0)))
    if drift > TRACE_DRIFT_TOL:
        raise NumericalError(f"trace drifted by {drift:.2e} during evolution")
    emitted = emitted_excitation(model, times, states, controls.get("capture"))

    keep = np.arange(0, times.size, stride)
    if keep[-1] != times.size - 1:
        keep = np.append(keep, times.size - 1)
    times, sampled = times[keep], states[keep]
    amplitude = np.einsum("ij,kji->k", gen.c1, sampled)
    populations = {}
    for i, mode in enumerate(model.modes):
        reduced = np.array([partial_trace_matrix(s, model.dims, [i]) for s in sampled])
        populations[mode.name] = np.einsum("kii->ki", reduced).real
    final = QuantumState.from_matrix(states[-1], model.dims, renormalize=True)
    return TrajectoryResult(
        times=times,
        states=sampled if store_states else None,
        final_state=final,
        dims=model.dims,
        mode_names=tuple(m.name for m in model.modes),
        output_amplitude=amplitude,
        populations=populations,
        emitted_excitation=emitted,
        max_trace_error=drift,
        capture_mode=capture_mode if model.capture else None,
    )


def qutrit_liouvillian(device: DeviceParams, decoherence: bool = True) -> np.ndarray:
    """Column-stacked Liouvillian of an idle transmon qutrit."""
    h = -device.alpha * projector(TRANSMON_DIM, 2)
    eye = np.eye(TRANSMON_DIM)
    liou = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    if decoherence:
        jumps = [
            np.sqrt(device.gamma1_e) * projector(TRANSMON_DIM, 0, 1),
            np.sqrt(device.gamma1_f) * projector(TRANSMON_DIM, 1, 2),
            np.sqrt(2.0 * device.gamma_phi_e) * projector(TRANSMON_DIM, 1),
            np.sqrt(2.0 * device.gamma_phi_f) * projector(TRANSMON_DIM, 2),
        ]
        for op in jumps:
            ltl = dagger(op) @ op
            liou = liou + np.kron(op.conj(), op) - 0.5 * np.kron(eye, ltl) - 0.5 * np.kron(ltl.T, eye)
    return liou


def idle_channel(device: DeviceParams, duration: float, decoherence: bool = True) -> LinearMap:
    """Free evolution of a transmon qutrit for ``duration`` ns."""
    if duration < 0:
        raise ConfigError("idle duration must be non-negative")
    prop = expm(qutrit_liouvillian(device, decoherence) * duration)

    def apply(matrix: np.ndarray) -> np.ndarray:
        vec = matrix.reshape(-1, order="F")
        return (prop @ vec).reshape(TRANSMON_DIM, TRANSMON_DIM, order="F")

    return LinearMap.from_function(apply, TRANSMON_DIM)
