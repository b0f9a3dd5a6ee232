"""Adaptive quadrature helpers for complex-valued integrands.

Thin wrappers around QUADPACK's adaptive Gauss-Kronrod rule
(:func:`scipy.integrate.quad`): real and imaginary parts are integrated
separately and the two error estimates are combined.  Semi-infinite
line-shape integrals go through the exponential substitution
``tau = scale (exp(u) - 1)``, which turns the decaying-exponential-times-
algebraic integrands of this problem into well-behaved ones on ``[0, inf)``.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import ParameterError

__all__ = ["QuadratureConfig", "quad_complex", "quad_halfline"]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances for the adaptive rules.

    ``rel_tol``/``abs_tol`` map to QUADPACK's epsrel/epsabs;
    ``max_subdivisions`` caps interval bisections.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ParameterError("quadrature tolerances must be positive")
        if self.max_subdivisions < 10:
            raise ParameterError("max_subdivisions must be at least 10")


DEFAULT_QUAD = QuadratureConfig()


def quad_complex(f, a, b, cfg: QuadratureConfig = DEFAULT_QUAD, points=None):
    """Integrate a complex-valued ``f`` over ``[a, b]``.

    Returns ``(value, error_bound)``.  ``points`` marks interior break
    points (ignored for infinite limits, as in scipy).
    """
    kw = dict(epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions)
    if points is not None and math.isfinite(a) and math.isfinite(b):
        pts = sorted(p for p in points if a < p < b)
        if pts:
            kw["points"] = pts
    re, re_err = integrate.quad(lambda x: f(x).real, a, b, **kw)
    im, im_err = integrate.quad(lambda x: f(x).imag, a, b, **kw)
    return complex(re, im), float(math.hypot(re_err, im_err))


def quad_halfline(f, scale: float, cfg: QuadratureConfig = DEFAULT_QUAD):
    """Integrate ``f`` over ``[0, inf)`` via ``tau = scale (exp(u) - 1)``.

    ``scale`` should be the characteristic decay scale of the integrand
    (e.g. the diffusion time for the return-weight integrals); the
    substitution compresses the far tail so the adaptive rule sees a
    rapidly decaying integrand in ``u``.
    """
    if not (scale > 0 and math.isfinite(scale)):
        raise ParameterError(f"halfline scale must be finite positive, got {scale}")

    def g(u):
        # integrands here decay exponentially on the tau scale `scale`;
        # dozens of e-foldings out they are identically zero in doubles
        if u > 700.0:
            return 0.0 + 0.0j
        eu = math.exp(u)
        return f(scale * (eu - 1.0)) * scale * eu

    return quad_complex(g, 0.0, np.inf, cfg)
