import numpy as np
import pytest
from numpy.testing import assert_allclose

from qgate_common import ConfigError
from qgate_pulses import amplitude_for_coupling
from qgate_fitting import (
    MollowTrace,
    calibration_from_fit,
    fit_chevron,
    fit_coupling_vs_amplitude,
    fit_lorentzian_s21,
    fit_mollow_global,
    fit_rabi_decay,
    gaussian_model,
    link_efficiency,
    lorentzian_s21_model,
    mollow_psd_model,
    multi_start_least_squares,
    rabi_decay_model,
    synthetic_dataset,
)

SEEDS = range(20)


class TestOptimizer:
    def test_recovers_line(self):
        x = np.linspace(0, 1, 20)
        y = 3.0 * x - 1.0
        fit = multi_start_least_squares(lambda p: p[0] * x + p[1] - y, [1.0, 1.0], ["slope", "offset"], "line")
        assert fit.converged
        assert fit["slope"] == pytest.approx(3.0, abs=1e-8)
        assert fit["offset"] == pytest.approx(-1.0, abs=1e-8)
        assert fit.residual_norm >= 0

    def test_report_has_stderr(self):
        rng = np.random.default_rng(0)
        x = np.linspace(0, 1, 50)
        y = 2.0 * x + rng.normal(0, 0.01, x.size)
        fit = multi_start_least_squares(lambda p: p[0] * x - y, [1.0], ["slope"], "line", units={"slope": "1"})
        report = fit.to_report()
        assert np.isfinite(report["stderr"]["slope"])
        assert report["units"] == {"slope": "1"}


class TestLorentzian:
    def test_peak_and_half_width(self):
        assert float(lorentzian_s21_model(0.0, 0.7, 2.1)) == pytest.approx(0.7)
        assert float(lorentzian_s21_model(1.05, 1.0, 2.1)) == pytest.approx(1 / np.sqrt(2))

    @pytest.mark.parametrize("seed", SEEDS)
    def test_round_trip(self, seed):
        params = {"s0": 1.0, "kappa_mhz": 2.1, "center_mhz": 0.2}
        x, y = synthetic_dataset(lorentzian_s21_model, np.linspace(-10, 10, 201), params, seed)
        fit = fit_lorentzian_s21(x, y)
        assert fit.converged
        assert fit["kappa_mhz"] == pytest.approx(2.1, rel=0.02)


def make_traces(seed, scale=1.0):
    rng = np.random.default_rng(seed)
    delta = np.linspace(-15, 15, 301)
    traces = []
    for device, p0, kappa in (("source", 0.75, 1.8), ("gate", 1.0, 2.1)):
        for omega in (2.0, 4.0, 6.0):
            clean = scale * mollow_psd_model(delta, p0, omega, kappa)
            noisy = clean + rng.normal(0, 0.01 * clean.max(), delta.size)
            traces.append(MollowTrace(device=device, omega_mhz=1.1 * omega, delta_mhz=delta, psd=noisy))
    return traces


class TestMollow:
    def test_symmetric_about_center(self):
        x = np.linspace(0, 8, 41)
        left = mollow_psd_model(0.5 - x, 1.0, 3.0, 2.1, f0_mhz=0.5)
        right = mollow_psd_model(0.5 + x, 1.0, 3.0, 2.1, f0_mhz=0.5)
        assert_allclose(left, right, rtol=1e-12)

    @pytest.mark.parametrize("omega", [0.1, 0.5, 0.6, 2.0, 10.0])
    def test_real_and_non_negative(self, omega):
        psd = mollow_psd_model(np.linspace(-30, 30, 601), 1.0, omega, 2.1)
        assert np.isrealobj(psd)
        assert np.all(np.isfinite(psd))
        assert np.all(psd >= 0)

    def test_triplet_sidebands_for_strong_drive(self):
        delta = np.linspace(-30, 30, 6001)
        psd = mollow_psd_model(delta, 1.0, 10.0, 2.1)
        positive = delta > 5.0
        side = delta[positive][np.argmax(psd[positive])]
        assert side == pytest.approx(10.0, rel=0.05)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_link_efficiency_round_trip(self, seed):
        fit = fit_mollow_global(make_traces(seed), {"source": 1.8, "gate": 2.1})
        assert fit.converged
        assert 0.735 <= link_efficiency(fit) <= 0.765

    def test_invariant_under_common_scaling(self):
        base = fit_mollow_global(make_traces(3), {"source": 1.8, "gate": 2.1})
        scaled = fit_mollow_global(make_traces(3, scale=8.0), {"source": 1.8, "gate": 2.1})
        assert link_efficiency(scaled) == pytest.approx(link_efficiency(base), abs=1e-6)

    def test_missing_kappa_guess(self):
        with pytest.raises(ConfigError):
            fit_mollow_global(make_traces(0), {"gate": 2.1})


class TestChevron:
    @pytest.mark.parametrize("seed", SEEDS)
    def test_dip_center(self, seed):
        x = np.linspace(-5, 5, 101)
        params = {"baseline": 0.9, "amplitude": -0.6, "center": 0.3, "width": 1.0}
        _, y = synthetic_dataset(gaussian_model, x, params, seed)
        fit = fit_chevron(x, y)
        assert fit.converged
        assert fit["center"] == pytest.approx(0.3, abs=0.1)
        assert fit["baseline"] == pytest.approx(0.9, abs=0.02)

    def test_flat_input_rejected(self):
        fit = fit_chevron(np.linspace(-5, 5, 51), np.full(51, 0.4))
        assert not fit.converged
        assert fit.warnings


class TestRabi:
    def test_no_coupling_keeps_population(self):
        assert_allclose(rabi_decay_model(np.linspace(0, 500, 11), 0.0, 2.1), 1.0, atol=1e-12)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_recovers_coupling_and_kappa(self, seed):
        tau = np.linspace(0, 600, 301)
        _, y = synthetic_dataset(rabi_decay_model, tau, {"coupling_mhz": 1.0, "kappa_mhz": 2.1}, seed)
        fit = fit_rabi_decay(tau, y)
        assert fit.converged
        assert fit["coupling_mhz"] == pytest.approx(1.0, rel=0.03)
        assert fit["kappa_mhz"] == pytest.approx(2.1, rel=0.03)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_interaction_strength_with_fixed_kappa(self, seed):
        tau = np.linspace(0, 600, 301)
        _, y = synthetic_dataset(rabi_decay_model, tau, {"coupling_mhz": 1.6, "kappa_mhz": 2.1}, seed)
        fit = fit_rabi_decay(tau, y, kappa_mhz=2.1)
        assert fit.names == ["coupling_mhz"]
        assert fit["coupling_mhz"] == pytest.approx(1.6, abs=0.1)


class TestCouplerCalibration:
    def test_exact_quadratic(self):
        a = np.array([0.2, 0.4, 0.6, 0.8, 1.0])
        fit = fit_coupling_vs_amplitude(a, 0.004 * a + 0.011 * a**2)
        assert fit.converged
        assert fit.residual_norm == pytest.approx(0.0, abs=1e-14)
        assert fit["linear"] == pytest.approx(0.004)
        assert fit["quadratic"] == pytest.approx(0.011)

    def test_non_monotone_flagged(self):
        a = np.array([0.2, 0.5, 0.8, 1.0])
        fit = fit_coupling_vs_amplitude(a, 0.01 * a - 0.02 * a**2)
        assert not fit.converged
        assert fit.warnings
        with pytest.raises(ConfigError):
            calibration_from_fit(fit)

    def test_too_few_points(self):
        with pytest.raises(ConfigError):
            fit_coupling_vs_amplitude([0.5, 1.0], [0.01, 0.02])

    def test_inversion_round_trip(self):
        a = np.linspace(0.1, 1.0, 10)
        fit = fit_coupling_vs_amplitude(a, 0.004 * a + 0.011 * a**2)
        calib = calibration_from_fit(fit)
        assert_allclose(amplitude_for_coupling(calib, 0.004 * a + 0.011 * a**2), a, atol=1e-9)
