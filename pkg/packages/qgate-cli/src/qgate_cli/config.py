"""Configuration management for qgate.

Two layers: environment settings read once per process (``get_config``),
and the YAML run configuration with ``source``, ``gate``, ``link`` and
``run`` sections (``parse_config``).
"""

import os
from pathlib import Path
from typing import Any, Literal, Sequence

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from qgate_common import ConfigError
from qgate_dynamics import DeviceParams, gate_device, source_device
from qgate_experiments import ExperimentSpec, LinkSettings, Sweep

SECTIONS = ("source", "gate", "link", "run")
OutputFormat = Literal["json", "csv"]


class EnvConfig:
    """Process-wide settings from environment variables."""

    def __init__(self):
        self.out_dir: str = os.getenv("QGATE_OUT_DIR", "./results")
        self.workers_raw: str = os.getenv("QGATE_WORKERS", "1")

    @property
    def workers(self) -> int:
        return int(self.workers_raw)

    def validate(self) -> None:
        """Validate configuration values."""
        try:
            workers = self.workers
        except ValueError:
            raise ConfigError(f"Invalid QGATE_WORKERS: {self.workers_raw}. Must be an integer") from None
        if workers < 1:
            raise ConfigError(f"QGATE_WORKERS must be at least 1, got {workers}")
        if not self.out_dir:
            raise ConfigError("QGATE_OUT_DIR must not be empty")


def get_config() -> EnvConfig:
    """Get qgate configuration from environment variables."""
    config = EnvConfig()
    config.validate()
    return config


class RunSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    experiment: str | None = None
    seed: int = 0
    out_dir: str | None = None
    formats: tuple[OutputFormat, ...] = ("json", "csv")
    sweep: Sweep | None = None
    workers: int | None = Field(default=None, ge=1)

    @field_validator("formats", mode="before")
    @classmethod
    def validate_formats(cls, v):
        if isinstance(v, str):
            v = [part.strip() for part in v.split(",") if part.strip()]
        if not v:
            raise ValueError("at least one output format is required")
        return v


class RunConfig(BaseModel):
    """Validated run configuration; device sections default to the measured parameter set."""

    model_config = ConfigDict(extra="forbid")

    source: DeviceParams = Field(default_factory=source_device)
    gate: DeviceParams = Field(default_factory=gate_device)
    link: LinkSettings = Field(default_factory=LinkSettings)
    run: RunSection = Field(default_factory=RunSection)

    def to_spec(self, default_workers: int | None = None) -> ExperimentSpec:
        """Experiment spec of this run.

        Raises:
            ConfigError: no experiment named.
        """
        if not self.run.experiment:
            raise ConfigError("an experiment name is required", key_path="run.experiment")
        return ExperimentSpec(
            name=self.run.experiment,
            source=self.source,
            gate=self.gate,
            link=self.link,
            sweep=self.run.sweep,
            seed=self.run.seed,
            workers=self.run.workers or default_workers,
        )

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.model_dump(mode="json"), sort_keys=False, allow_unicode=True)


def _key_path(loc: Sequence[Any]) -> str:
    return ".".join(str(part) for part in loc)


def load_config_data(text: str | None) -> dict[str, Any]:
    """Parse YAML text into a section mapping.

    Raises:
        ConfigError: malformed YAML or a top level that is not a mapping.
    """
    if not text:
        return {}
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ConfigError(f"invalid YAML: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping of sections")
    return data


def load_config_file(path: str | Path | None) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read configuration file {path}: {e}") from e
    return load_config_data(text)


def apply_overrides(data: dict[str, Any], assignments: Sequence[str]) -> dict[str, Any]:
    """Apply ``section.key=value`` assignments; values are typed with ``yaml.safe_load``.

    Raises:
        ConfigError: an assignment without ``=`` or without a section.
    """
    for assignment in assignments:
        path, sep, raw = assignment.partition("=")
        keys = [k for k in path.strip().split(".") if k]
        if not sep or len(keys) < 2:
            raise ConfigError(f"override '{assignment}' must look like section.key=value")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"invalid value: {e}", key_path=".".join(keys)) from e
        node = data
        for key in keys[:-1]:
            child = node.setdefault(key, {})
            if not isinstance(child, dict):
                raise ConfigError("cannot set a key below a scalar", key_path=".".join(keys))
            node = child
        node[keys[-1]] = value
    return data


def parse_config(data: dict[str, Any]) -> RunConfig:
    """Validate section data over the default devices.

    Device sections are partial overrides of the measured defaults.

    Raises:
        ConfigError: unknown section or key, or an invalid value, naming the dotted key path.
    """
    merged = dict(data)
    for chip, defaults in (("source", source_device), ("gate", gate_device)):
        overrides = merged.get(chip) or {}
        if not isinstance(overrides, dict):
            raise ConfigError("device section must be a mapping", key_path=chip)
        merged[chip] = {**defaults().model_dump(), **overrides}
    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        error = e.errors()[0]
        raise ConfigError(error["msg"], key_path=_key_path(error["loc"])) from e


def parse_config_text(text: str | None, assignments: Sequence[str] = ()) -> RunConfig:
    return parse_config(apply_overrides(load_config_data(text), assignments))
