"""Dispatch from evaluator names to ``delta_omega -> complex`` callables.

Shared by the CLI, the analysis helpers and the validation suite so they
all agree on what, say, "closed_form" means for a given geometry.
"""

import math
from typing import Callable

from .errors import ParameterError
from .finite import s_r_1d, s_r_2d, s_r_3d
from .infinite import (
    s_inf_1d,
    s_inf_2d,
    s_inf_lorentz_limit,
    s_inf_ramsey,
    s_inf_screened,
)
from .model import Geometry, ModelParams
from .oracle.fourier import s_inf_fourier
from .quadrature import DEFAULT_QUAD, QuadratureConfig

__all__ = ["EVALUATOR_NAMES", "get_evaluator"]

EVALUATOR_NAMES = (
    "closed_form",
    "ramsey_integral",
    "lorentz_limit",
    "fourier_exact",
    "fourier_truncated",
    "green_finite",
    "screened",
)


def get_evaluator(
    name: str,
    params: ModelParams,
    geometry: Geometry,
    quad: QuadratureConfig = DEFAULT_QUAD,
    n_terms: int = 16,
) -> tuple[Callable[[float], complex], str]:
    """Return ``(callable, provenance_tag)`` for an evaluator name.

    "closed_form" picks the natural evaluator for the geometry: the
    erfcx/E1 closed forms for an unbounded 1-D/2-D region, the
    Green-function quadratures for a bounded one, the mode series for the
    cylinder.  The infinite-region-only names raise for finite geometry
    rather than silently ignoring the boundary.
    """
    dim, R = geometry.dim, geometry.radius

    def infinite_only():
        if geometry.finite_radius:
            raise ParameterError(f"evaluator {name!r} is defined for the infinite region only")
        if dim == 3:
            raise ParameterError(f"evaluator {name!r} is not defined for the cylinder")

    if name == "closed_form":
        if dim == 3:
            l = geometry.half_height
            return (lambda dw: s_r_3d(params, dw, R, l, n_terms, quad).value), "green_finite"
        if geometry.finite_radius:
            fn = s_r_1d if dim == 1 else s_r_2d
            return (lambda dw: fn(params, dw, R, quad)), "green_finite"
        fn = s_inf_1d if dim == 1 else s_inf_2d
        return (lambda dw: fn(params, dw)), "closed_form"

    if name == "green_finite":
        if dim == 3:
            l = geometry.half_height
            return (lambda dw: s_r_3d(params, dw, R, l, n_terms, quad).value), "green_finite"
        if not geometry.finite_radius:
            raise ParameterError("green_finite requires a finite radius (or dim=3)")
        fn = s_r_1d if dim == 1 else s_r_2d
        return (lambda dw: fn(params, dw, R, quad)), "green_finite"

    if name == "ramsey_integral":
        infinite_only()
        return (lambda dw: s_inf_ramsey(dim, params, dw, quad)), "ramsey_integral"

    if name == "lorentz_limit":
        infinite_only()
        return (lambda dw: s_inf_lorentz_limit(dim, params, dw)), "lorentz_limit"

    if name == "fourier_exact":
        infinite_only()
        return (lambda dw: s_inf_fourier(dim, params, dw, "exact", quad).value), "fourier_oracle"

    if name == "fourier_truncated":
        infinite_only()
        return (
            lambda dw: s_inf_fourier(dim, params, dw, "truncated", quad).value
        ), "fourier_oracle"

    if name == "screened":
        infinite_only()
        return (lambda dw: s_inf_screened(params, dw, dim)), "closed_form"

    raise ParameterError(f"unknown evaluator {name!r}; choose from {EVALUATOR_NAMES}")
