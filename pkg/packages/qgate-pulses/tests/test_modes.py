import numpy as np
import pytest

from qgate_common import ConfigError, DimensionError
from qgate_pulses import TemporalMode, mode_overlap, sech_mode

GAMMA = 2 * np.pi * 1.8e-3


class TestSechMode:
    def test_truncated_norm_matches_closed_form(self):
        mode = sech_mode(GAMMA, dt=1.0, t_cut=4.6 / GAMMA)
        assert mode.energy() == pytest.approx(np.tanh(2.3), abs=1e-4)
        assert np.tanh(2.3) == pytest.approx(0.98007, abs=1e-5)

    def test_peak_at_zero(self):
        mode = sech_mode(GAMMA)
        peak = np.argmax(np.abs(mode.samples))
        assert abs(mode.times[peak]) <= mode.dt
        assert np.abs(mode.samples).max() == pytest.approx(np.sqrt(GAMMA) / 2, rel=1e-4)

    def test_fwhm_of_intensity(self):
        mode = sech_mode(GAMMA, dt=0.1)
        intensity = np.abs(mode.samples) ** 2
        above = mode.times[intensity >= intensity.max() / 2]
        expected = 2 * np.arccosh(np.sqrt(2)) * 2 / GAMMA
        assert above[-1] - above[0] == pytest.approx(expected, abs=0.3)

    def test_rejects_gross_truncation(self):
        with pytest.raises(ConfigError):
            sech_mode(GAMMA, t_cut=0.5 / GAMMA)

    def test_untruncated_norm_close_to_one(self):
        assert sech_mode(GAMMA, dt=0.5, t_cut=15 / GAMMA).energy() == pytest.approx(1.0, abs=1e-5)


class TestTemporalMode:
    def test_rejects_norm_above_one(self):
        with pytest.raises(ValueError, match="norm"):
            TemporalMode(samples=np.ones(10), dt=1.0, t0=0.0, bandwidth=1.0)

    def test_with_phase_keeps_energy(self):
        mode = sech_mode(GAMMA)
        rotated = mode.with_phase(1.3)
        assert rotated.energy() == pytest.approx(mode.energy())
        assert np.allclose(rotated.samples, mode.samples * np.exp(1.3j))

    def test_sample_lookup_outside_support_is_zero(self):
        mode = sech_mode(GAMMA)
        assert mode.sample_at(np.array([mode.t0 - 10.0]))[0] == 0


class TestModeOverlap:
    def test_self_overlap_is_energy(self):
        mode = sech_mode(GAMMA)
        assert mode_overlap(mode, mode) == pytest.approx(mode.energy())

    def test_shifted_modes_zero_padded(self):
        mode = sech_mode(GAMMA)
        far = mode.shifted(5000.0)
        assert abs(mode_overlap(mode, far)) < 1e-12

    def test_partial_shift_reduces_overlap(self):
        mode = sech_mode(GAMMA)
        shifted = mode.shifted(50.0)
        assert 0.5 < abs(mode_overlap(mode, shifted)) < mode.energy()

    def test_misaligned_grid(self):
        mode = sech_mode(GAMMA)
        with pytest.raises(DimensionError):
            mode_overlap(mode, mode.shifted(0.5))
