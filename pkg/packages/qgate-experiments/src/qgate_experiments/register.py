"""Experiment registration for qgate-experiments."""

import importlib
import logging

from .registry import list_experiments

logger = logging.getLogger(__name__)

SCENARIO_MODULES = ("profiles", "transfer", "gates", "calibration", "moments")


def register_experiments() -> list[str]:
    """Import every scenario module so its experiments land in the registry.

    Repeated calls are no-ops; the names are returned in registration order.
    """
    for module in SCENARIO_MODULES:
        importlib.import_module(f"{__package__}.{module}")
    names = [entry.name for entry in list_experiments()]
    logger.debug(f"Registered experiments: {names}")
    return names
