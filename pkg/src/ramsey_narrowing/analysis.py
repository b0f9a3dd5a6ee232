"""Profile normalization, half-width extraction and narrowing metrics.

Widths are defined on the real part of the signal (the absorption-like,
even, positive component; the magnitude is exported for plots but never
used for widths).  The half-width is the *smallest* positive detuning
where ``Re S`` crosses half its zero-detuning value, located by a growing
bracket walk plus bisection -- robust to the non-monotonic wings a Ramsey
structure can produce.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable

from .errors import AnalysisError, ParameterError
from .evaluators import get_evaluator
from .infinite import LineShape, SpectralSample, lorentz_width
from .model import Geometry, ModelParams, derive_scales, validate_regime
from .quadrature import DEFAULT_QUAD, QuadratureConfig

__all__ = [
    "HalfWidthResult",
    "ScanRResult",
    "NarrowingReport",
    "normalize",
    "hwhm",
    "scan_r",
    "narrowing_report",
]


@dataclass(frozen=True)
class HalfWidthResult:
    """Half width at half maximum of ``Re S``, with its final bracket."""

    hwhm: float
    bracket: tuple
    iterations: int
    evaluator: str


def normalize(line: LineShape) -> LineShape:
    """Scale a line shape so ``Re S = 1`` at the sample nearest zero detuning.

    The grid must actually reach zero detuning (within one grid spacing).
    Every sample is scaled by the same real factor, so widths and the
    Im/Re structure are unchanged.
    """
    if not line.samples:
        raise ParameterError("cannot normalize an empty line shape")
    dws = line.delta_omegas
    i0 = int(abs(dws).argmin())
    spacing = float(min(b - a for a, b in zip(dws, dws[1:]))) if len(dws) > 1 else math.inf
    if abs(dws[i0]) > spacing:
        raise ParameterError("no sample at (or near) delta_omega = 0 to normalize against")
    peak = line.samples[i0].value.real
    if peak <= 0:
        raise ParameterError(f"cannot normalize: Re S(0) = {peak:g} <= 0")
    scale = 1.0 / peak
    samples = tuple(
        SpectralSample(s.delta_omega, s.value * scale, s.evaluator) for s in line.samples
    )
    return replace(line, samples=samples, normalized=True)


def hwhm(
    evaluator: Callable[[float], complex],
    params: ModelParams,
    geometry: Geometry,
    evaluator_tag: str = "closed_form",
    rel_tol: float = 1e-8,
) -> HalfWidthResult:
    """Locate the smallest positive half-maximum crossing of ``Re S``.

    Walks outward from zero detuning on a geometrically growing grid until
    the value drops below half maximum (extending as far as ``nu/2``),
    then bisects.  Raises AnalysisError if no crossing exists below
    ``nu/2`` -- widths at the collision scale are outside the model.
    """
    s0 = evaluator(0.0).real
    if s0 <= 0:
        raise AnalysisError(f"Re S(0) = {s0:g} <= 0; no half maximum")
    target = 0.5 * s0

    dim_w = 1 if geometry.dim == 1 else 2
    step = (params.gamma + lorentz_width(dim_w, params)) / 16.0
    cap = 0.5 * params.nu
    lo, hi = 0.0, step
    iterations = 0
    while evaluator(hi).real > target:
        lo = hi
        hi = min(hi * 1.4 + step, cap)
        iterations += 1
        if lo == hi:
            raise AnalysisError(
                f"Re S does not cross half maximum below nu/2 = {cap:g} (regime violation)"
            )
    bracket = (lo, hi)
    while hi - lo > rel_tol * hi:
        mid = 0.5 * (lo + hi)
        iterations += 1
        if evaluator(mid).real > target:
            lo = mid
        else:
            hi = mid
    return HalfWidthResult(
        hwhm=0.5 * (lo + hi), bracket=bracket, iterations=iterations, evaluator=evaluator_tag
    )


@dataclass(frozen=True)
class ScanRResult:
    """Half-widths for a list of radii plus the infinite-region reference."""

    radii: tuple
    results: tuple
    infinite: HalfWidthResult
    trend: str  # "increasing" | "decreasing" | "mixed" in R

    def ratios_to_infinite(self) -> tuple:
        return tuple(r.hwhm / self.infinite.hwhm for r in self.results)


def scan_r(
    evaluator_name: str,
    params: ModelParams,
    dim: int,
    radii,
    l: float | None = None,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> ScanRResult:
    """Half-width as a function of the boundary radius.

    One row per radius (must exceed ``a/2``; tighter walls than the beam
    make no sense in this model), plus the ``R = inf`` reference and the
    direction of the trend, which is reported, not presumed.
    """
    radii = tuple(float(R) for R in radii)
    if not radii:
        raise ParameterError("scan_r needs at least one radius")
    if any(R <= 0.5 * params.a for R in radii):
        raise ParameterError("scan_r radii must exceed a/2")

    results = []
    for R in radii:
        geometry = Geometry(dim=dim, radius=R, half_height=l if dim == 3 else None)
        fn, tag = get_evaluator("closed_form", params, geometry, quad)
        results.append(hwhm(fn, params, geometry, tag))
    geo_inf = Geometry(dim=dim, radius=math.inf, half_height=l if dim == 3 else None)
    fn, tag = get_evaluator("closed_form", params, geo_inf, quad)
    infinite = hwhm(fn, params, geo_inf, tag)

    widths = [r.hwhm for r in results]
    if all(b > a for a, b in zip(widths, widths[1:])):
        trend = "increasing"
    elif all(b < a for a, b in zip(widths, widths[1:])):
        trend = "decreasing"
    else:
        trend = "mixed"
    return ScanRResult(radii=radii, results=tuple(results), infinite=infinite, trend=trend)


@dataclass(frozen=True)
class NarrowingReport:
    """Measured width against the no-return Lorentzian prediction."""

    hwhm: HalfWidthResult
    gamma: float
    no_return_width: float
    narrowing_ratio: float
    tau_d: float
    tau_d_flight: float
    epsilon0: complex
    A0: complex
    diagnostics: tuple

    def as_text(self) -> str:
        lines = [
            f"hwhm(Re S)            = {self.hwhm.hwhm:.8g}",
            f"gamma                 = {self.gamma:.8g}",
            f"no-return width       = {self.no_return_width:.8g}  (gamma + diffusive loss)",
            f"narrowing ratio       = {self.narrowing_ratio:.6f}  (< 1 means Ramsey narrowing)",
            f"tau_d (a^2/|D|)       = {self.tau_d:.8g}",
            f"tau_d (nu tau_a^2)    = {self.tau_d_flight:.8g}",
            f"epsilon(0) vs A(0)    = {self.epsilon0:.6g} vs {self.A0:.6g}",
        ]
        if self.diagnostics:
            lines.append("regime warnings:")
            lines.extend(f"  {d.message}" for d in self.diagnostics)
        else:
            lines.append("regime warnings: none")
        return "\n".join(lines)


def narrowing_report(
    params: ModelParams,
    geometry: Geometry,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> NarrowingReport:
    """Quantify the narrowing at these parameters.

    Tabulates the measured half-width, the no-return Lorentzian width
    ``gamma + 1/(2 nu tau_a^2)`` (1-D) or ``gamma + 1/(nu tau_a^2)``
    (2-D/cylinder), their ratio, both diffusion-time conventions and the
    regime diagnostics.
    """
    fn, tag = get_evaluator("closed_form", params, geometry, quad)
    result = hwhm(fn, params, geometry, tag)
    dim_w = 1 if geometry.dim == 1 else 2
    predicted = params.gamma + lorentz_width(dim_w, params)
    sc = derive_scales(params, geometry, 0.0)
    return NarrowingReport(
        hwhm=result,
        gamma=params.gamma,
        no_return_width=predicted,
        narrowing_ratio=result.hwhm / predicted,
        tau_d=sc.tau_d,
        tau_d_flight=sc.tau_d_flight,
        epsilon0=sc.epsilon,
        A0=sc.A,
        diagnostics=tuple(validate_regime(params, geometry, result.hwhm * 2)),
    )
