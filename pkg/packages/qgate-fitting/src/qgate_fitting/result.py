"""Fit results shared by every model."""

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer


class FitResult(BaseModel):
    """Named parameter estimates with units, covariance and convergence flag."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    model: str
    params: dict[str, float]
    units: dict[str, str] = Field(default_factory=dict)
    covariance: np.ndarray
    residual_norm: float = Field(ge=0)
    converged: bool
    warnings: tuple[str, ...] = ()

    @field_serializer("covariance")
    def serialize_covariance(self, cov: np.ndarray):
        return cov.tolist()

    def __getitem__(self, name: str) -> float:
        return self.params[name]

    @property
    def names(self) -> list[str]:
        return list(self.params)

    def stderr(self, name: str) -> float:
        i = self.names.index(name)
        return float(np.sqrt(self.covariance[i, i])) if np.isfinite(self.covariance[i, i]) else float("inf")

    def to_report(self) -> dict:
        return {
            "model": self.model,
            "params": dict(self.params),
            "stderr": {n: self.stderr(n) for n in self.names},
            "units": dict(self.units),
            "residual_norm": self.residual_norm,
            "converged": self.converged,
            "warnings": list(self.warnings),
        }
