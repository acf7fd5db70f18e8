"""Main entry point for the qgate command line."""

import argparse
import logging
import sys
import time
from typing import Sequence

from qgate_common import (
    ConfigError,
    NumericalError,
    QGateError,
    configure_logging,
    load_dotenv_file,
)
from qgate_experiments import get_enabled_experiments, get_experiment, list_experiments, run_experiment

from .config import EnvConfig, apply_overrides, get_config, load_config_file, parse_config
from .output import write_report

# Load environment variables from dotenv file at startup
load_dotenv_file()

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qgate", description="Pulse-level simulator of a photonic qubit gate set")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one experiment and write its report")
    run.add_argument("experiment", help="registered experiment name, see `qgate list`")
    run.add_argument("--config", help="YAML file with source, gate, link and run sections")
    run.add_argument("--out", help="output directory (default: QGATE_OUT_DIR)")
    run.add_argument("--seed", type=int, help="noise seed")
    run.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override, e.g. link.eta_loss=1.0")
    run.add_argument("--format", help="comma-separated output formats: json, csv")
    run.set_defaults(handler=cmd_run)

    listing = commands.add_parser("list", help="list registered experiments")
    listing.set_defaults(handler=cmd_list)

    validate = commands.add_parser("validate", help="print the effective configuration")
    validate.add_argument("--config", help="YAML file with source, gate, link and run sections")
    validate.add_argument("--set", action="append", default=[], metavar="KEY=VALUE")
    validate.set_defaults(handler=cmd_validate)
    return parser


def _config_from_args(args: argparse.Namespace):
    data = apply_overrides(load_config_file(args.config), args.set)
    run = data.setdefault("run", {})
    if not isinstance(run, dict):
        raise ConfigError("run section must be a mapping", key_path="run")
    if getattr(args, "experiment", None):
        run["experiment"] = args.experiment
    if getattr(args, "seed", None) is not None:
        run["seed"] = args.seed
    if getattr(args, "out", None):
        run["out_dir"] = args.out
    if getattr(args, "format", None):
        run["formats"] = args.format
    return parse_config(data)


def cmd_run(args: argparse.Namespace, env: EnvConfig) -> int:
    config = _config_from_args(args)
    spec = config.to_spec(default_workers=env.workers)

    started = time.perf_counter()
    report = run_experiment(spec)
    elapsed = time.perf_counter() - started

    # The output location is not part of the result.
    effective = config.model_dump(mode="json", exclude={"run": {"out_dir"}})
    report = report.model_copy(update={"metadata": {**report.metadata, "config": effective}})
    out_dir = config.run.out_dir or env.out_dir
    paths = write_report(report, out_dir, config.run.formats, timing={"wall_clock_s": elapsed})
    for path in paths:
        print(path)
    logger.info(f"{spec.name} finished in {elapsed:.1f} s")
    return EXIT_OK


def cmd_list(args: argparse.Namespace, env: EnvConfig) -> int:
    enabled = get_enabled_experiments()
    for entry in list_experiments():
        mark = " " if entry.name in enabled else "-"
        print(f"{mark} {entry.name:<12} {entry.sweep_axis or '':<13} {entry.description}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace, env: EnvConfig) -> int:
    config = _config_from_args(args)
    if config.run.experiment:
        get_experiment(config.run.experiment)
    print(config.to_yaml(), end="")
    return EXIT_OK


def cli(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and dispatch; returns the process exit code."""
    args = build_parser().parse_args(argv)
    try:
        env = get_config()
        configure_logging()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.handler(args, env)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except QGateError as e:
        logger.error(f"Experiment failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


def main():
    """Main function to run the qgate command line."""
    sys.exit(cli())


if __name__ == "__main__":
    main()
