import math

import numpy as np
import pytest

from qgate_core import partial_trace_matrix, projector
from qgate_experiments import ExperimentSpec, GatePipeline, Sweep, run_experiment
from qgate_experiments.profiles import held_reemission
from qgate_experiments.transfer import transfer_population


def spec(name: str, **link) -> ExperimentSpec:
    base = ExperimentSpec(name=name, workers=1)
    return base.with_link(**link) if link else base


class TestFastScenarios:
    def test_reflection_phases(self):
        report = run_experiment(spec("fig3a"))
        assert report.metrics["s11_g_at_resonance"] == pytest.approx(-1.0)
        assert report.metrics["s11_e_strong_drive"].real > 0.9
        flipped = {p["gate_state"]: p["sign_flipped"] for p in report.points}
        assert flipped == {"g": True, "e": False}
        assert len(report.traces["modes"]) > 0

    def test_linewidths(self):
        report = run_experiment(spec("fig5"))
        assert report.metrics["kappa_relative_error_source"] < 0.02
        assert report.metrics["kappa_relative_error_gate"] < 0.02
        assert set(report.traces) == {"s21_source", "s21_gate"}

    def test_mollow_link_efficiency(self):
        report = run_experiment(spec("fig9"))
        assert report.metrics["eta_loss"] == pytest.approx(0.75, abs=0.015)
        assert len(report.traces) == 6

    def test_deterministic_payload(self):
        first = run_experiment(spec("fig5")).to_json()
        assert run_experiment(spec("fig5")).to_json() == first

    def test_held_reemission_postpones_gate_emission(self):
        pipeline = GatePipeline(spec("fig2c"), workers=1)
        timing = pipeline.timing("I")
        schedule, t_emit, t_end = held_reemission(pipeline, 100.0)
        gate = [e for e in schedule.of_kind("coupling") if e.channel == "gate"]
        assert gate[0].t_start == pytest.approx(timing.absorb_start)
        assert gate[-1].t_start == pytest.approx(timing.emit_start + 100.0)
        assert t_emit == pytest.approx(timing.emit_start + 100.0)
        assert t_end == pytest.approx(timing.end + 100.0)


@pytest.mark.slow
class TestTransferScenarios:
    def test_lossless_transfer(self):
        lossless = spec("transfer", eta_loss=1.0, decoherence=False, waveform_kappa="spectroscopic")
        assert transfer_population(lossless) >= 0.94

    def test_transfer_efficiency(self):
        report = run_experiment(spec("transfer"))
        assert 0.55 <= report.metrics["population"] <= 0.75
        assert report.metrics["population"] < report.metrics["population_lossless"]

    def test_detuning_sweep_peaks_on_resonance(self):
        sweep = Sweep(axis="detuning_mhz", values=(-4.0, 0.0, 4.0))
        report = run_experiment(spec("fig7a").model_copy(update={"sweep": sweep}))
        populations = [p["population"] for p in report.points]
        assert populations[1] == max(populations)
        assert report.metrics["detuning_at_max_mhz"] == 0.0

    def test_phase_fringe(self):
        report = run_experiment(spec("fig7c"))
        assert len(report.points) == 13
        assert report.metrics["contrast_lossless"] > 0.85
        assert report.metrics["contrast"] < report.metrics["contrast_lossless"]


@pytest.mark.slow
class TestEmissionScenarios:
    def test_profiles(self):
        report = run_experiment(spec("fig2c"))
        assert set(report.traces) == {"gate-direct", "source-detuned", "absorb-reemit"}
        assert 0.85 <= report.metrics["ratio_source_to_gate"] <= 0.89
        assert 0.15 <= report.metrics["reemit_reduction"] <= 0.23

    def test_moments(self):
        sweep = Sweep(axis="theta", values=(0.0, math.pi / 2, math.pi))
        report = run_experiment(spec("fig-moments").model_copy(update={"sweep": sweep}))
        gate = [p for p in report.points if p["chip"] == "gate"]
        source = [p for p in report.points if p["chip"] == "source"]
        assert gate[0]["photon_number"] == pytest.approx(0.0, abs=1e-6)
        assert gate[0]["g2"] is None
        assert gate[2]["photon_number"] > gate[1]["photon_number"] > 0
        assert source[2]["photon_number"] < gate[2]["photon_number"]
        assert gate[2]["second_order"] == pytest.approx(0.0, abs=1e-12)

    def test_reference_normalization(self):
        sweep = Sweep(axis="theta", values=(math.pi,))
        normalized = spec("fig-moments", normalization="reference").model_copy(update={"sweep": sweep})
        report = run_experiment(normalized)
        gate = [p for p in report.points if p["chip"] == "gate"]
        assert gate[0]["photon_number"] == pytest.approx(1.0, rel=1e-6)


@pytest.mark.slow
class TestGateScenarios:
    def test_identity_tomography_ideal_limit(self):
        ideal = spec(
            "qpt-i", eta_loss=1.0, decoherence=False, waveform_kappa="spectroscopic", t_cut_factor=10.0
        )
        report = run_experiment(ideal)
        assert report.metrics["F_tot"] >= 0.99
        assert 0.0 <= report.metrics["F_int"] <= 1.0

    @pytest.mark.parametrize("name", ["qpt-i", "qpt-x", "qpt-y", "qpt-t"])
    def test_single_qubit_fidelities(self, name):
        metrics = run_experiment(spec(name)).metrics
        assert 0.70 <= metrics["F_tot"] <= 0.80
        assert 0.82 <= metrics["F_int"] <= 0.92
        assert metrics["F_int_no_decoherence"] >= 0.97

    def test_cphase_fidelities(self):
        metrics = run_experiment(spec("qpt-cphase")).metrics
        assert 0.50 <= metrics["F_tot"] <= 0.64
        assert 0.68 <= metrics["F_int"] <= 0.80
        assert metrics["F_tot"] < metrics["F_int"]

    def test_vacuum_p2_stays_vacuum(self):
        pipeline = GatePipeline(spec("qpt-cphase"), workers=1)
        rho = np.kron(np.full((2, 2), 0.5), projector(2, 0))
        out = pipeline.cphase_map().apply(rho)
        p2 = partial_trace_matrix(out, (2, 2), [1])
        np.testing.assert_allclose(p2 / np.trace(p2), projector(2, 0), atol=1e-9)

    def test_bell_budget(self):
        report = run_experiment(spec("bell"))
        metrics = report.metrics
        assert 0.0 <= metrics["fidelity"] <= metrics["fidelity_no_decoherence"] + 1e-6
        assert metrics["fidelity_no_decoherence"] <= metrics["fidelity_ideal"] + 1e-6
        assert [p["variant"] for p in report.points] == ["full", "no_decoherence", "ideal"]
        assert 0.62 <= metrics["fidelity"] <= 0.76
        assert metrics["loss_infidelity"] > metrics["decoherence_infidelity"]
        assert 0.09 <= metrics["loss_infidelity"] <= 0.27


@pytest.mark.slow
class TestCalibrationScenarios:
    def test_cphase_drive_rate(self):
        report = run_experiment(spec("fig10", decoherence=False))
        assert report.metrics["drive_rate_fit_mhz"] == pytest.approx(1.6, abs=0.1)
        assert abs(report.metrics["resonance_mhz"]) < 0.5

    def test_coupler_calibration(self):
        sweep = Sweep(axis="amplitude", values=(0.75, 0.9, 1.0))
        report = run_experiment(spec("fig6", decoherence=False).model_copy(update={"sweep": sweep}))
        assert len(report.points) == 3
        for point in report.points:
            assert point["coupling_fit_mhz"] == pytest.approx(point["coupling_true_mhz"], rel=0.1)
        assert report.metrics["monotone"]
