"""qgate-cli - command line front end: run experiments, list them, validate configurations."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .config import (
    EnvConfig,
    RunConfig,
    RunSection,
    apply_overrides,
    get_config,
    load_config_data,
    load_config_file,
    parse_config,
    parse_config_text,
)
from .main import cli, main
from .output import write_report

__all__ = [
    "EnvConfig",
    "RunConfig",
    "RunSection",
    "apply_overrides",
    "cli",
    "get_config",
    "load_config_data",
    "load_config_file",
    "main",
    "parse_config",
    "parse_config_text",
    "write_report",
]
