"""Common qgate utilities - environment loading, logging setup and error types."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .concurrency import default_workers, map_ordered
from .errors import (
    ConfigError,
    DimensionError,
    ExperimentError,
    NumericalError,
    QGateError,
)
from .runtime import (
    configure_logging,
    is_production,
    load_dotenv_file,
    resolve_log_level,
)

__all__ = [
    "ConfigError",
    "DimensionError",
    "ExperimentError",
    "NumericalError",
    "QGateError",
    "configure_logging",
    "default_workers",
    "is_production",
    "load_dotenv_file",
    "map_ordered",
    "resolve_log_level",
]
