import numpy as np
import pytest

from qgate_common import ConfigError
from qgate_dynamics import reflect_mode, reflection_spectrum
from qgate_pulses import mode_overlap, sech_mode

KAPPA_G = 2 * np.pi * 2.1e-3
KAPPA_S = 2 * np.pi * 1.8e-3
G_CPHASE = 2 * np.pi * 1.6e-3


class TestReflectionSpectrum:
    def test_ground_state_gives_pi_shift(self):
        assert reflection_spectrum(KAPPA_G, G_CPHASE, "g", 0.0) == pytest.approx(-1.0)

    def test_strong_drive_on_excited_qubit_gives_no_shift(self):
        s11 = reflection_spectrum(KAPPA_G, 20 * KAPPA_G, "e", 0.0, gamma=1e-6)
        assert s11 == pytest.approx(1.0, abs=1e-6)

    def test_lossless_resonance_special_case(self):
        assert reflection_spectrum(KAPPA_G, G_CPHASE, "e", 0.0) == pytest.approx(1.0)

    def test_zero_drive_matches_bare_converter(self):
        delta = np.linspace(-0.05, 0.05, 41)
        assert np.allclose(
            reflection_spectrum(KAPPA_G, 0.0, "e", delta), reflection_spectrum(KAPPA_G, 0.0, "g", delta)
        )

    def test_dressed_response_is_symmetric(self):
        delta = np.linspace(0.0005, 0.05, 60)
        plus = reflection_spectrum(KAPPA_G, G_CPHASE, "e", delta, gamma=1e-4)
        minus = reflection_spectrum(KAPPA_G, G_CPHASE, "e", -delta, gamma=1e-4)
        assert np.allclose(np.abs(plus), np.abs(minus))

    @pytest.mark.parametrize("state", ["g", "e"])
    def test_passive(self, state):
        delta = np.linspace(-0.05, 0.05, 201)
        s11 = reflection_spectrum(KAPPA_G, G_CPHASE, state, delta, gamma=2e-4)
        assert np.all(np.abs(s11) <= 1.0 + 1e-12)

    def test_invalid_state(self):
        with pytest.raises(ConfigError):
            reflection_spectrum(KAPPA_G, G_CPHASE, "f", 0.0)


class TestReflectMode:
    def test_constant_minus_one_flips_sign(self):
        mode = sech_mode(KAPPA_S)
        assert np.allclose(reflect_mode(mode, -1.0).samples, -mode.samples)

    def test_unit_response_is_identity(self):
        mode = sech_mode(KAPPA_S)
        out = reflect_mode(mode, lambda d: np.ones_like(d, dtype=complex))
        assert np.allclose(out.samples, mode.samples, atol=1e-12)

    def test_dressed_reflection_distorts_mode(self):
        mode = sech_mode(KAPPA_S)
        out = reflect_mode(mode, lambda d: reflection_spectrum(KAPPA_G, G_CPHASE, "e", d))
        assert out.energy() <= mode.energy() + 1e-9
        overlap = abs(mode_overlap(mode.normalized(), out.normalized()))
        assert overlap < 0.99

    def test_pad_factor_validated(self):
        with pytest.raises(ConfigError):
            reflect_mode(sech_mode(KAPPA_S), -1.0, pad_factor=0)
