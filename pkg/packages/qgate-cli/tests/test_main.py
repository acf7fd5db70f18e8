import json
import sys

import pytest
import yaml

from qgate_common import NumericalError
from qgate_cli import cli
from qgate_experiments import ExperimentEntry, registry


@pytest.fixture(autouse=True)
def quiet(monkeypatch):
    """Keep the test session's logging untouched."""
    monkeypatch.setattr(sys.modules["qgate_cli.main"], "configure_logging", lambda: None)
    monkeypatch.delenv("QGATE_EXPERIMENT_LIST", raising=False)
    monkeypatch.delenv("QGATE_WORKERS", raising=False)


class TestRun:
    def test_writes_report_and_traces(self, tmp_path, capsys):
        assert cli(["run", "fig5", "--out", str(tmp_path)]) == 0
        target = tmp_path / "fig5"
        assert {p.name for p in target.iterdir()} == {"report.json", "timing.json", "s21_gate.csv", "s21_source.csv"}
        payload = json.loads((target / "report.json").read_text())
        assert payload["experiment"] == "fig5"
        assert payload["metadata"]["config"]["run"]["experiment"] == "fig5"
        assert "report.json" in capsys.readouterr().out

    def test_same_seed_same_payload(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        assert cli(["run", "fig5", "--out", str(first), "--seed", "4"]) == 0
        assert cli(["run", "fig5", "--out", str(second), "--seed", "4"]) == 0
        assert (first / "fig5" / "report.json").read_bytes() == (second / "fig5" / "report.json").read_bytes()

    def test_json_only(self, tmp_path):
        assert cli(["run", "fig3a", "--out", str(tmp_path), "--format", "json"]) == 0
        assert {p.name for p in (tmp_path / "fig3a").iterdir()} == {"report.json", "timing.json"}

    def test_config_file_and_override(self, tmp_path):
        config = tmp_path / "run.yaml"
        config.write_text("link:\n  eta_loss: 0.5\nrun:\n  seed: 2\n")
        out = tmp_path / "out"
        code = cli(["run", "fig9", "--config", str(config), "--set", "link.eta_loss=0.6", "--out", str(out)])
        assert code == 0
        payload = json.loads((out / "fig9" / "report.json").read_text())
        assert payload["metrics"]["eta_loss_true"] == 0.6
        assert payload["metadata"]["seed"] == 2

    def test_unknown_experiment_exit_code(self, tmp_path, capsys):
        assert cli(["run", "fig99", "--out", str(tmp_path)]) == 2
        assert "run.experiment" in capsys.readouterr().err

    def test_invalid_parameter_exit_code(self, tmp_path, capsys):
        assert cli(["run", "fig5", "--set", "link.eta_loss=1.5", "--out", str(tmp_path)]) == 2
        assert "link.eta_loss" in capsys.readouterr().err

    def test_numerical_failure_exit_code(self, tmp_path, monkeypatch):
        def singular(spec):
            raise NumericalError("singular inversion")

        entry = ExperimentEntry(name="scratch-singular", description="scratch", runner=singular)
        monkeypatch.setitem(registry._REGISTRY, "scratch-singular", entry)
        assert cli(["run", "scratch-singular", "--out", str(tmp_path)]) == 3

    def test_bad_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QGATE_WORKERS", "many")
        assert cli(["run", "fig5", "--out", str(tmp_path)]) == 2


class TestListAndValidate:
    def test_list(self, capsys):
        assert cli(["list"]) == 0
        out = capsys.readouterr().out
        for name in ("fig2c", "qpt-cphase", "bell", "fig-moments"):
            assert name in out

    def test_validate_prints_effective_config(self, capsys):
        assert cli(["validate", "--set", "link.eta_loss=1.0"]) == 0
        effective = yaml.safe_load(capsys.readouterr().out)
        assert effective["link"]["eta_loss"] == 1.0
        assert effective["gate"]["anharmonicity_mhz"] == pytest.approx(301.7)

    def test_validate_rejects_unknown_key(self, capsys):
        assert cli(["validate", "--set", "link.eta=0.5"]) == 2
        assert "link.eta" in capsys.readouterr().err

    def test_validate_checks_experiment_name(self):
        assert cli(["validate", "--set", "run.experiment=nope"]) == 2
