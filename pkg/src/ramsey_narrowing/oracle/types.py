"""Shared result type for the independent oracle evaluators."""

import math
from dataclasses import dataclass

from ..errors import ParameterError

__all__ = ["OracleEstimate"]


@dataclass(frozen=True)
class OracleEstimate:
    """An oracle value with its error bound.

    ``error`` is the reported statistical standard error for the Monte
    Carlo oracle (including the analytic time-cutoff bias bound) or the
    quadrature error bound for the Fourier oracle; ``n_effective`` counts
    trajectories or integrand evaluations.
    """

    value: complex
    error: float
    n_effective: int
    kind: str = "quadrature"

    def __post_init__(self):
        if not (self.error >= 0 and math.isfinite(self.error)):
            raise ParameterError("error bound must be finite and >= 0")
        if self.kind not in ("quadrature", "mc"):
            raise ParameterError(f"unknown estimate kind {self.kind!r}")

    @property
    def std_error(self) -> float:
        return self.error

    @property
    def error_bound(self) -> float:
        return self.error
