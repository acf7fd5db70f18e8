import pytest
import yaml

from qgate_common import ConfigError
from qgate_cli import EnvConfig, apply_overrides, get_config, load_config_data, parse_config, parse_config_text


class TestEnvConfig:
    def test_defaults(self, monkeypatch):
        monkeypatch.delenv("QGATE_OUT_DIR", raising=False)
        monkeypatch.delenv("QGATE_WORKERS", raising=False)
        config = get_config()
        assert config.out_dir == "./results"
        assert config.workers == 1

    @pytest.mark.parametrize("raw", ["zero", "0", "-2"])
    def test_invalid_workers(self, monkeypatch, raw):
        monkeypatch.setenv("QGATE_WORKERS", raw)
        with pytest.raises(ConfigError):
            EnvConfig().validate()


class TestParseConfig:
    def test_empty_gives_measured_defaults(self):
        config = parse_config_text("")
        assert config.gate.anharmonicity_mhz == pytest.approx(301.7)
        assert config.source.kappa_mhz == pytest.approx(1.8)
        assert config.link.eta_loss == 0.75
        assert config.run.formats == ("json", "csv")

    def test_partial_device_override(self):
        config = parse_config_text("gate:\n  t1_f_us: 5.0\n")
        assert config.gate.t1_f_us == 5.0
        assert config.gate.kappa_mhz == pytest.approx(2.1)

    def test_eta_upper_boundary_accepted(self):
        assert parse_config_text("link:\n  eta_loss: 1.0\n").link.eta_loss == 1.0

    @pytest.mark.parametrize(
        "text, key_path",
        [
            ("link:\n  eta_loss: 1.5\n", "link.eta_loss"),
            ("link:\n  eta: 0.5\n", "link.eta"),
            ("gate:\n  kappa_mhz: -2.1\n", "gate.kappa_mhz"),
            ("detector:\n  gain: 2\n", "detector"),
            ("run:\n  formats: [pdf]\n", "run.formats.0"),
        ],
    )
    def test_errors_name_key_path(self, text, key_path):
        with pytest.raises(ConfigError) as info:
            parse_config_text(text)
        assert info.value.key_path == key_path

    def test_malformed_yaml(self):
        with pytest.raises(ConfigError):
            load_config_data("link: [unclosed")

    def test_top_level_must_be_mapping(self):
        with pytest.raises(ConfigError):
            load_config_data("- a\n- b\n")

    def test_formats_from_string(self):
        assert parse_config_text("run:\n  formats: csv\n").run.formats == ("csv",)

    def test_missing_experiment(self):
        with pytest.raises(ConfigError) as info:
            parse_config_text("").to_spec()
        assert info.value.key_path == "run.experiment"

    def test_to_spec(self):
        config = parse_config_text(
            "run:\n  experiment: fig7b\n  seed: 3\n  sweep:\n    axis: delay_ns\n    values: [0, 50]\n"
        )
        spec = config.to_spec(default_workers=2)
        assert spec.name == "fig7b"
        assert spec.seed == 3
        assert spec.workers == 2
        assert spec.sweep.values == (0.0, 50.0)

    def test_effective_config_round_trip(self):
        config = parse_config_text("link:\n  eta_loss: 0.8\nrun:\n  experiment: bell\n")
        again = parse_config(yaml.safe_load(config.to_yaml()))
        assert again == config
        assert again.to_spec() == config.to_spec()


class TestOverrides:
    def test_typed_values(self):
        data = apply_overrides({}, ["link.eta_loss=1.0", "link.decoherence=false", "run.sweep.values=[1, 2]"])
        assert data == {"link": {"eta_loss": 1.0, "decoherence": False}, "run": {"sweep": {"values": [1, 2]}}}

    def test_override_wins_over_file(self):
        data = apply_overrides(load_config_data("link:\n  eta_loss: 0.5\n"), ["link.eta_loss=0.9"])
        assert parse_config(data).link.eta_loss == 0.9

    @pytest.mark.parametrize("assignment", ["eta_loss=1.0", "link.eta_loss", "=1"])
    def test_malformed_assignment(self, assignment):
        with pytest.raises(ConfigError):
            apply_overrides({}, [assignment])
