import numpy as np
import pytest
from pydantic import ValidationError

from qgate_common import ConfigError, DimensionError
from qgate_core import QuantumState, apply_channel, basis_state, cardinal_states, loss_channel, tensor
from qgate_dynamics import CascadedModel, emitted_reference_mode, evolve
from qgate_pulses import PulseSchedule, emission_coupling, sech_mode
from qgate_pulses.schedule import CouplingEvent
from qgate_tomography import (
    MomentSet,
    extract_moments,
    joint_moments_from_state,
    moments_from_state,
    normalize_moments,
    project_moments,
)


def theta_state(theta):
    return QuantumState.from_ket([np.sin(theta / 2), np.cos(theta / 2)])


class TestMomentsFromState:
    def test_vacuum_has_no_moments(self):
        moments = moments_from_state(QuantumState.from_ket([1, 0]))
        assert all(abs(v) < 1e-15 for k, v in moments.values.items() if k != (0, 0))

    def test_single_photon(self):
        moments = moments_from_state(QuantumState.from_ket([0, 1]))
        assert moments.photon_number == pytest.approx(1.0)
        assert moments.mean_field == pytest.approx(0.0)
        assert moments.g2() == pytest.approx(0.0)

    def test_orders_up_to_four(self):
        moments = moments_from_state(QuantumState.from_ket([1, 0, 0]))
        assert max(sum(k) for k in moments.values) == 4
        assert len(moments.values) == 15

    @pytest.mark.parametrize("theta", [0.3, np.pi / 2, 2.0, np.pi])
    def test_loss_scales_with_order(self, theta):
        state = theta_state(theta)
        ideal = moments_from_state(state)
        lossy = moments_from_state(apply_channel(state, loss_channel(0.75)))
        for key, value in ideal.values.items():
            assert lossy.values[key] == pytest.approx(value * 0.75 ** (sum(key) / 2), abs=1e-12)

    def test_conjugate_symmetry_enforced(self):
        with pytest.raises(ValidationError, match="conjugates"):
            MomentSet(values={(0, 1): 0.5, (1, 0): 0.2})

    def test_string_keys_accepted(self):
        moments = MomentSet(values={"1,1": 0.4, "0,1": 0.1j, "1,0": -0.1j})
        assert moments.get(1, 1) == pytest.approx(0.4)

    def test_missing_moment(self):
        with pytest.raises(ConfigError):
            moments_from_state(QuantumState.from_ket([1, 0]), max_order=1).get(2, 2)


class TestJointMoments:
    def test_product_state_factorizes(self):
        plus = cardinal_states(1)["+"]
        joint = joint_moments_from_state(tensor([plus, plus]))
        assert joint.get(0, 1, 0, 1) == pytest.approx(0.25)
        assert joint.get(1, 1, 1, 1) == pytest.approx(0.25)
        assert joint.n_modes == 2

    def test_requires_two_modes(self):
        with pytest.raises(DimensionError):
            joint_moments_from_state(QuantumState.from_ket([1, 0]))


class TestNormalization:
    def test_reference_photon_number_removed(self):
        lossy = moments_from_state(apply_channel(theta_state(1.0), loss_channel(0.6)))
        normalized = normalize_moments(lossy, 0.6)
        ideal = moments_from_state(theta_state(1.0))
        assert normalized.get(0, 1) == pytest.approx(ideal.get(0, 1))
        assert normalized.get(1, 1) == pytest.approx(ideal.get(1, 1))
        assert normalized.reference == "reference"

    def test_rejects_non_positive_reference(self):
        with pytest.raises(ConfigError):
            normalize_moments(moments_from_state(theta_state(1.0)), 0.0)


KAPPA_S = 2 * np.pi * 1.8e-3


def capture_mode():
    return sech_mode(0.05).normalized()


class TestExtractMoments:
    def test_state_passthrough(self):
        moments = extract_moments(QuantumState.from_ket([0, 1]))
        assert moments.photon_number == pytest.approx(1.0)

    def test_matched_reference_keeps_photon(self):
        mode = capture_mode()
        moments = extract_moments(QuantumState.from_ket([0, 1]), reference_mode=mode, capture_mode=mode)
        assert moments.photon_number == pytest.approx(1.0, abs=1e-9)

    def test_orthogonal_reference_sees_vacuum(self):
        mode = capture_mode()
        moments = extract_moments(
            QuantumState.from_ket([0, 1]), reference_mode=mode.shifted(1000.0), capture_mode=mode
        )
        assert moments.photon_number == pytest.approx(0.0, abs=1e-12)
        assert moments.get(0, 0) == pytest.approx(1.0)

    def test_reference_phase_rotates_field(self):
        mode = capture_mode()
        state = theta_state(1.0)
        plain = moments_from_state(state)
        rotated = extract_moments(state, reference_mode=mode.with_phase(0.4), capture_mode=mode)
        assert rotated.mean_field == pytest.approx(np.exp(-0.4j) * plain.mean_field, abs=1e-9)
        assert rotated.photon_number == pytest.approx(plain.photon_number, abs=1e-9)

    def test_partial_overlap_acts_as_loss(self):
        state = theta_state(2.0)
        projected = project_moments(moments_from_state(state), np.sqrt(0.6))
        lossy = moments_from_state(apply_channel(state, loss_channel(0.6)))
        for key, value in lossy.values.items():
            assert projected.values[key] == pytest.approx(value, abs=1e-12)

    def test_reference_needs_capture_mode(self):
        with pytest.raises(ConfigError, match="captured"):
            extract_moments(QuantumState.from_ket([0, 1]), reference_mode=capture_mode())

    def test_joint_moments_reject_reference(self):
        plus = cardinal_states(1)["+"]
        mode = capture_mode()
        with pytest.raises(DimensionError):
            extract_moments(tensor([plus, plus]), reference_mode=mode, capture_mode=mode)

    def test_emitted_photon_from_trajectory(self):
        model = CascadedModel(layout="gate", capture=True, decoherence=False)
        waveform = emission_coupling(KAPPA_S, model.gate.kappa)
        schedule = PulseSchedule(events=[CouplingEvent(t_start=0.0, channel="gate", waveform=waveform)])
        reference = emitted_reference_mode(KAPPA_S, model.dt, t_start=0.0)
        result = evolve(model, schedule, basis_state(model.dims, [1, 0, 0]), capture_mode=reference)

        matched = extract_moments(result, reference_mode=reference)
        assert matched.photon_number > 0.9
        assert matched.mean_field == pytest.approx(0.0, abs=1e-6)
        assert matched.g2() == pytest.approx(0.0, abs=1e-12)

        late = extract_moments(result, reference_mode=reference.shifted(5000.0))
        assert late.photon_number == pytest.approx(0.0, abs=1e-12)
