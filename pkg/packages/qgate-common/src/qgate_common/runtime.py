"""Runtime setup shared by the qgate entry points."""

import json
import logging
import os
from dotenv import load_dotenv

_PLAIN_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


class JsonLineFormatter(logging.Formatter):
    """Render each record as a single JSON object."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "time": self.formatTime(record, "%Y-%m-%dT%H:%M:%S"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exc_info"] = self.formatException(record.exc_info)
        return json.dumps(payload, ensure_ascii=False)


def load_dotenv_file() -> None:
    """Load environment variables from dotenv file.

    This function should be called at the beginning of main.py files
    to ensure environment variables are loaded before any other code runs.
    """
    dotenv_file = os.getenv("DOTENV_FILE")
    if dotenv_file:
        load_dotenv(dotenv_file, override=True)


def is_production() -> bool:
    """Return True when ENV is set to production."""
    return os.getenv("ENV", "development").lower() == "production"


def resolve_log_level() -> str:
    """Logging level from LOG_LEVEL, defaulting on the environment mode.

    Returns:
        "DEBUG" in development and "INFO" in production unless LOG_LEVEL is set.

    Raises:
        ValueError: LOG_LEVEL names no logging level.
    """
    level = os.getenv("LOG_LEVEL", "INFO" if is_production() else "DEBUG").upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        raise ValueError(
            f"Invalid LOG_LEVEL: {level}. Must be DEBUG, INFO, WARNING or ERROR"
        )
    return level


def configure_logging(stream=None) -> logging.Logger:
    """Configure the ``qgate`` logger hierarchy from environment variables.

    Production mode switches to one JSON object per line so logs can be
    collected by structured log shippers.

    Args:
        stream: Optional stream for the handler, defaults to stderr.

    Returns:
        The configured parent logger.
    """
    root = logging.getLogger("qgate")
    level = resolve_log_level()

    handler = logging.StreamHandler(stream)
    if is_production():
        handler.setFormatter(JsonLineFormatter())
    else:
        handler.setFormatter(logging.Formatter(_PLAIN_FORMAT))

    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False

    # package loggers are named qgate_<pkg>.*; route them through the same handler
    for name in (
        "qgate_core",
        "qgate_pulses",
        "qgate_dynamics",
        "qgate_tomography",
        "qgate_fitting",
        "qgate_experiments",
        "qgate_cli",
    ):
        child = logging.getLogger(name)
        child.handlers.clear()
        child.addHandler(handler)
        child.setLevel(level)
        child.propagate = False

    return root
