"""Experiment registry addressed by stable names."""

import logging
import os
from typing import Callable

from pydantic import BaseModel, ConfigDict

from qgate_common import ConfigError, ExperimentError, QGateError

from .report import ExperimentReport
from .spec import ExperimentSpec

logger = logging.getLogger(__name__)

Runner = Callable[[ExperimentSpec], ExperimentReport]


class ExperimentEntry(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str
    sweep_axis: str | None = None
    runner: Runner


_REGISTRY: dict[str, ExperimentEntry] = {}


def experiment(name: str, description: str, sweep_axis: str | None = None) -> Callable[[Runner], Runner]:
    """Register ``runner`` under ``name``.

    Raises:
        ValueError: the name is already taken.
    """

    def decorator(runner: Runner) -> Runner:
        if name in _REGISTRY:
            raise ValueError(f"experiment '{name}' is registered twice")
        _REGISTRY[name] = ExperimentEntry(name=name, description=description, sweep_axis=sweep_axis, runner=runner)
        return runner

    return decorator


def list_experiments() -> list[ExperimentEntry]:
    return list(_REGISTRY.values())


def get_experiment(name: str) -> ExperimentEntry:
    entry = _REGISTRY.get(name)
    if entry is None:
        raise ConfigError(
            f"Unknown experiment '{name}'. Valid experiments: {', '.join(_REGISTRY)}", key_path="run.experiment"
        )
    return entry


def get_enabled_experiments() -> set[str]:
    """Parse QGATE_EXPERIMENT_LIST to determine which experiments may run."""
    valid = set(_REGISTRY)
    listed = os.environ.get("QGATE_EXPERIMENT_LIST", "")
    if not listed:
        return valid

    enabled = {name.strip().lower() for name in listed.split(",") if name.strip()}
    invalid = enabled - valid
    if invalid:
        logger.warning(f"Invalid experiments in QGATE_EXPERIMENT_LIST: {sorted(invalid)}. Valid options: {sorted(valid)}")
    return enabled & valid


def run_experiment(spec: ExperimentSpec) -> ExperimentReport:
    """Run the experiment named by ``spec``.

    Known qgate errors propagate unchanged; anything else is wrapped.

    Raises:
        ConfigError: unknown or disabled experiment, or invalid parameters.
        NumericalError: integration, inversion or fit failure.
        ExperimentError: any other failure inside the scenario.
    """
    entry = get_experiment(spec.name)
    if spec.name not in get_enabled_experiments():
        raise ConfigError(f"experiment '{spec.name}' is disabled by QGATE_EXPERIMENT_LIST", key_path="run.experiment")
    if spec.sweep is not None and entry.sweep_axis is None:
        raise ConfigError(f"experiment '{spec.name}' takes no sweep", key_path="run.sweep")
    if spec.sweep is not None and spec.sweep.axis != entry.sweep_axis:
        raise ConfigError(
            f"experiment '{spec.name}' sweeps '{entry.sweep_axis}', not '{spec.sweep.axis}'", key_path="run.sweep.axis"
        )
    logger.info(f"Running experiment {spec.name}")
    try:
        report = entry.runner(spec)
    except QGateError:
        raise
    except Exception as e:
        logger.exception(f"Experiment {spec.name} failed")
        raise ExperimentError(f"experiment '{spec.name}' failed: {e}") from e
    metadata = {"parameters": spec.model_dump(mode="json"), "seed": spec.seed, **report.metadata}
    logger.info(f"Experiment {spec.name} finished with {len(report.points)} points")
    return report.model_copy(update={"metadata": metadata})
