"""Result persistence: report JSON, wall-clock timing and one CSV per trace."""

import json
import logging
from pathlib import Path
from typing import Sequence

from qgate_experiments import ExperimentReport

logger = logging.getLogger(__name__)


def write_report(
    report: ExperimentReport,
    out_dir: str | Path,
    formats: Sequence[str] = ("json", "csv"),
    timing: dict[str, float] | None = None,
) -> list[Path]:
    """Write ``report`` under ``<out_dir>/<experiment>/`` and return the written paths.

    ``report.json`` is deterministic for a fixed configuration and seed;
    run-dependent values go to ``timing.json``.
    """
    target = Path(out_dir) / report.experiment
    target.mkdir(parents=True, exist_ok=True)
    written = []
    if "json" in formats:
        path = target / "report.json"
        path.write_text(report.to_json(), encoding="utf-8")
        written.append(path)
    if "csv" in formats:
        for name, trace in sorted(report.traces.items()):
            path = target / f"{name}.csv"
            path.write_text(trace.to_csv(), encoding="utf-8")
            written.append(path)
    if timing is not None:
        path = target / "timing.json"
        path.write_text(json.dumps(timing, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        written.append(path)
    logger.info(f"Wrote {len(written)} files to {target}")
    return written
