"""Experiment results: scalar metrics, per-point records and plot traces."""

import json
import math
from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars/arrays and complex numbers into JSON types.

    Complex values become ``{"re": .., "im": ..}``; non-finite floats become
    strings so the output stays valid JSON.
    """
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(value.real)), "im": to_jsonable(float(value.imag))}
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else str(value)
    return value


class Trace(BaseModel):
    """Equal-length named columns, written as one CSV file."""

    model_config = ConfigDict(frozen=True)

    columns: dict[str, list[float]]

    @model_validator(mode="after")
    def validate_lengths(self):
        lengths = {len(v) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValueError(f"trace columns differ in length: {sorted(lengths)}")
        return self

    @classmethod
    def from_arrays(cls, **columns) -> "Trace":
        return cls(columns={k: np.asarray(v, dtype=float).tolist() for k, v in columns.items()})

    def __len__(self) -> int:
        return len(next(iter(self.columns.values()), []))

    def to_csv(self) -> str:
        names = list(self.columns)
        lines = [",".join(names)]
        for row in zip(*(self.columns[n] for n in names)):
            lines.append(",".join(f"{x:.17g}" for x in row))
        return "\n".join(lines) + "\n"


class ExperimentReport(BaseModel):
    """Result of one experiment run.

    ``points`` holds one record per sweep point, ``metrics`` the summary
    numbers, ``metadata`` the effective parameters and seed.
    """

    model_config = ConfigDict(frozen=True)

    experiment: str
    metrics: dict[str, Any] = Field(default_factory=dict)
    points: list[dict[str, Any]] = Field(default_factory=list)
    traces: dict[str, Trace] = Field(default_factory=dict)
    metadata: dict[str, Any] = Field(default_factory=dict)

    def to_payload(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "metrics": to_jsonable(self.metrics),
            "points": to_jsonable(self.points),
            "traces": sorted(self.traces),
            "metadata": to_jsonable(self.metadata),
        }

    def to_json(self) -> str:
        """Deterministic JSON: stable key order, floats in round-trip precision."""
        return json.dumps(self.to_payload(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"
