"""qgate-experiments - named simulation scenarios built on the photonic gate pipeline."""

__version__ = "0.1.0"
__author__ = "gkzhb"
__email__ = "gkzhb98@gmail.com"

from .pipeline import GatePipeline, conditional_reflection, embed_input, physical_state, stage_map
from .register import register_experiments
from .registry import (
    ExperimentEntry,
    experiment,
    get_enabled_experiments,
    get_experiment,
    list_experiments,
    run_experiment,
)
from .report import ExperimentReport, Trace, to_jsonable
from .spec import ExperimentSpec, LinkSettings, Sweep

register_experiments()

__all__ = [
    "ExperimentEntry",
    "ExperimentReport",
    "ExperimentSpec",
    "GatePipeline",
    "LinkSettings",
    "Sweep",
    "Trace",
    "conditional_reflection",
    "embed_input",
    "experiment",
    "get_enabled_experiments",
    "get_experiment",
    "list_experiments",
    "physical_state",
    "register_experiments",
    "run_experiment",
    "stage_map",
    "to_jsonable",
]
