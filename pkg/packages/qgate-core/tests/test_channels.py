import numpy as np
import pytest

from qgate_common import DimensionError
from qgate_core import (
    KrausChannel,
    LinearMap,
    QuantumState,
    apply_channel,
    loss_channel,
    tensor,
)


def random_state(rng, dim):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m)


class TestLossChannel:
    def test_unit_transmission_is_identity(self):
        rho = QuantumState.from_ket([0.6, 0.8j])
        out = apply_channel(rho, loss_channel(1.0))
        assert np.allclose(out.matrix, rho.matrix)

    def test_excited_state_decays(self):
        out = apply_channel(QuantumState.from_ket([0, 1]), loss_channel(0.75))
        assert np.allclose(out.matrix, np.diag([0.25, 0.75]))

    def test_vacuum_invariant(self):
        vac = QuantumState.from_ket([1, 0])
        assert np.allclose(apply_channel(vac, loss_channel(0.3)).matrix, vac.matrix)

    def test_coherence_scales_with_sqrt_eta(self):
        plus = QuantumState.from_ket([1, 1])
        out = apply_channel(plus, loss_channel(0.64))
        assert np.isclose(out.matrix[0, 1].real, 0.5 * 0.8)

    def test_rejects_eta_outside_unit_interval(self):
        with pytest.raises(ValueError):
            loss_channel(1.5)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            apply_channel(QuantumState.from_ket([1, 0, 0]), loss_channel(0.5))


def test_incomplete_kraus_rejected():
    with pytest.raises(ValueError, match="identity"):
        KrausChannel(operators=[np.diag([1.0, 0.5])], label="leaky")


def test_channels_preserve_trace_and_hermiticity():
    rng = np.random.default_rng(2024)
    for _ in range(100):
        eta = rng.uniform()
        rho = QuantumState.from_matrix(random_state(rng, 3))
        out = loss_channel(eta, dim=3).apply_matrix(rho.matrix)
        assert abs(np.trace(out) - 1.0) < 1e-8
        assert np.max(np.abs(out - out.conj().T)) < 1e-10


class TestLinearMap:
    def test_matches_kraus_application(self):
        rng = np.random.default_rng(3)
        channel = loss_channel(0.4)
        lmap = channel.to_linear_map()
        rho = random_state(rng, 2)
        assert np.allclose(lmap.apply(rho), channel.apply_matrix(rho))

    def test_subsystem_application(self):
        rng = np.random.default_rng(4)
        a = random_state(rng, 3)
        b = random_state(rng, 2)
        lmap = loss_channel(0.5).to_linear_map()
        out, dims = lmap.apply_to_subsystem(np.kron(a, b), (3, 2), 1)
        assert dims == (3, 2)
        assert np.allclose(out, np.kron(a, lmap.apply(b)))

    def test_dimension_changing_map_on_first_subsystem(self):
        rng = np.random.default_rng(5)
        embed = LinearMap.from_function(lambda m: np.pad(m, (0, 1)), 2)
        a = random_state(rng, 2)
        b = random_state(rng, 2)
        out, dims = embed.apply_to_subsystem(np.kron(a, b), (2, 2), 0)
        assert dims == (3, 2)
        assert np.allclose(out, np.kron(np.pad(a, (0, 1)), b))

    def test_composition_order(self):
        first = loss_channel(0.25).to_linear_map()
        flip = LinearMap.from_function(lambda m: np.array([[0, 1], [1, 0]]) @ m @ np.array([[0, 1], [1, 0]]), 2)
        composite = first.then(flip)
        excited = np.diag([0.0, 1.0]).astype(complex)
        assert np.allclose(composite.apply(excited), np.diag([0.25, 0.75]))

    def test_trace_deficit_of_channel_is_zero(self):
        assert loss_channel(0.3).to_linear_map().trace_deficit() < 1e-12

    def test_state_wrapper(self):
        lmap = LinearMap.identity(4)
        bell = QuantumState.from_ket(np.array([1, 0, 0, 1]) / np.sqrt(2), (2, 2))
        out = lmap.apply_state(bell, (2, 2))
        assert np.allclose(out.matrix, bell.matrix)
        assert tensor([out]).subsystem_dims == (2, 2)
