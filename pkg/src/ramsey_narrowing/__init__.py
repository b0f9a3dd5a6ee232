"""Diffusion-induced Ramsey narrowing: line shapes for atoms crossing a
Gaussian beam in a buffer gas, in the strong-collision kinetic model.

Closed-form and Green-function evaluators for the complex spectral signal
in infinite and bounded 1-D/2-D/3-D geometries, two independent oracles
(exact Fourier-space quadrature and stochastic transport), and analysis
tools for widths and narrowing metrics.
"""

__version__ = "0.1.0"

from .analysis import HalfWidthResult, hwhm, narrowing_report, normalize, scan_r
from .errors import (
    AnalysisError,
    ConfigError,
    DivergenceError,
    DomainError,
    ParameterError,
    RegimeWarning,
)
from .finite import (
    ModeScales,
    RadialProfile,
    cs_integrals,
    green_1d,
    n_profile,
    s_r_1d,
    s_r_2d,
    s_r_3d,
    script_i,
)
from .infinite import (
    LineShape,
    SpectralSample,
    kernel_f,
    s_inf_1d,
    s_inf_2d,
    s_inf_lorentz_limit,
    s_inf_ramsey,
    taylor_signal,
    voigt_fhat,
)
from .model import (
    DEFAULT_PARAMS,
    DerivedScales,
    Geometry,
    ModelParams,
    derive_scales,
    lambda_profile,
    maxwell_density,
    validate_regime,
)
from .oracle import MCConfig, OracleEstimate, arbitrate, mc_signal, s_inf_fourier
from .quadrature import QuadratureConfig

__all__ = [
    "__version__",
    "AnalysisError",
    "ConfigError",
    "DEFAULT_PARAMS",
    "DerivedScales",
    "DivergenceError",
    "DomainError",
    "Geometry",
    "HalfWidthResult",
    "LineShape",
    "MCConfig",
    "ModeScales",
    "ModelParams",
    "OracleEstimate",
    "ParameterError",
    "QuadratureConfig",
    "RadialProfile",
    "RegimeWarning",
    "SpectralSample",
    "arbitrate",
    "cs_integrals",
    "derive_scales",
    "green_1d",
    "hwhm",
    "kernel_f",
    "lambda_profile",
    "maxwell_density",
    "mc_signal",
    "n_profile",
    "narrowing_report",
    "normalize",
    "s_inf_1d",
    "s_inf_2d",
    "s_inf_fourier",
    "s_inf_lorentz_limit",
    "s_inf_ramsey",
    "s_r_1d",
    "s_r_2d",
    "s_r_3d",
    "scan_r",
    "script_i",
    "taylor_signal",
    "validate_regime",
    "voigt_fhat",
]
