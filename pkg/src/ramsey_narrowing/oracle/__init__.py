"""Independent ground-truth evaluators and arbitration records.

Two oracles verify the closed forms and arbitrate the inherited
ambiguities: exact Fourier-space quadrature (:mod:`.fourier`) and
stochastic strong-collision transport (:mod:`.mc`).
"""

from .arbitrate import ArbitrationItem, ValidationReport, arbitrate
from .fourier import lambda_hat, s_inf_fourier
from .mc import MCConfig, lambda_total, mc_signal
from .types import OracleEstimate

__all__ = [
    "ArbitrationItem",
    "MCConfig",
    "OracleEstimate",
    "ValidationReport",
    "arbitrate",
    "lambda_hat",
    "lambda_total",
    "mc_signal",
    "s_inf_fourier",
]
