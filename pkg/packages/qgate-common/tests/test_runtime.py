import io
import json
import logging

import pytest

from qgate_common import (
    ConfigError,
    NumericalError,
    QGateError,
    configure_logging,
    load_dotenv_file,
    resolve_log_level,
)


class TestLogLevel:
    def test_development_defaults_to_debug(self, monkeypatch):
        monkeypatch.delenv("ENV", raising=False)
        monkeypatch.delenv("LOG_LEVEL", raising=False)
        assert resolve_log_level() == "DEBUG"

    def test_production_defaults_to_info(self, monkeypatch):
        monkeypatch.setenv("ENV", "production")
        monkeypatch.delenv("LOG_LEVEL", raising=False)
        assert resolve_log_level() == "INFO"

    def test_explicit_level_wins(self, monkeypatch):
        monkeypatch.setenv("ENV", "production")
        monkeypatch.setenv("LOG_LEVEL", "warning")
        assert resolve_log_level() == "WARNING"

    def test_invalid_level_rejected(self, monkeypatch):
        monkeypatch.setenv("LOG_LEVEL", "LOUD")
        with pytest.raises(ValueError, match="LOG_LEVEL"):
            resolve_log_level()


class TestConfigureLogging:
    def test_production_emits_json_lines(self, monkeypatch):
        monkeypatch.setenv("ENV", "production")
        monkeypatch.delenv("LOG_LEVEL", raising=False)
        stream = io.StringIO()
        configure_logging(stream)
        logging.getLogger("qgate_core.test").info("hello %s", "world")
        record = json.loads(stream.getvalue().strip().splitlines()[-1])
        assert record["message"] == "hello world"
        assert record["level"] == "INFO"

    def test_development_emits_plain_text(self, monkeypatch):
        monkeypatch.setenv("ENV", "development")
        stream = io.StringIO()
        configure_logging(stream)
        logging.getLogger("qgate_fitting.x").debug("plain")
        assert "plain" in stream.getvalue()
        assert not stream.getvalue().lstrip().startswith("{")


class TestDotenv:
    def test_dotenv_file_loaded_with_override(self, tmp_path, monkeypatch):
        env_file = tmp_path / "run.env"
        env_file.write_text("QGATE_WORKERS=3\n")
        monkeypatch.setenv("QGATE_WORKERS", "1")
        monkeypatch.setenv("DOTENV_FILE", str(env_file))
        load_dotenv_file()
        import os

        assert os.environ["QGATE_WORKERS"] == "3"


class TestErrors:
    def test_config_error_carries_key_path(self):
        err = ConfigError("must be in [0, 1]", key_path="link.eta_loss")
        assert err.key_path == "link.eta_loss"
        assert str(err).startswith("link.eta_loss:")
        assert isinstance(err, ValueError)
        assert isinstance(err, QGateError)

    def test_numerical_error_is_runtime_error(self):
        assert issubclass(NumericalError, RuntimeError)
