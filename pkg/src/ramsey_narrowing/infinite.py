"""Closed-form and integral-representation signals for the unbounded problem.

The complex signal is ``S(dw) = int lam(r) N(r) dr`` where ``N`` is the
velocity-integrated coherence density driven by the Gaussian beam.  For an
infinite region it has closed forms built on ``erfcx`` (1-D) and the scaled
exponential integral (2-D):

* 1-D: ``S = (pi a lam0^2 / (sqrt(2) alpha0)) A erfcx(A)``
* 2-D: ``S = (pi a^2 lam0^2 / (2 alpha0)) A^2 exp(A^2) E1(A^2)``

with ``A^2 = alpha alpha0 a^2/v0^2``.  (The source prints the 1-D form
without the ``1/alpha0``; the form used here is the one its own integral
representation, dimensional analysis and the Fourier-space oracle all give.)

Both are exactly the weighted superposition of decaying profiles

    ``S = c_dim int_0^inf exp(-alpha0 tau) (1 + tau/tau_r)^(-dim/2) dtau``

with the complex return time ``tau_r = A^2/alpha0 = alpha a^2/v0^2``; the
Ramsey-integral evaluator computes that representation directly by
quadrature.  The module also provides the Lorentzian no-return limit, the
velocity-averaged Fourier kernel (Voigt profile), its real-space transform
``F(r)`` with moment checks, and numerical Taylor coefficients of any
evaluator around zero detuning (the printed small-detuning expansions are
not implemented: they are dimensionally suspect, and the numeric
coefficients replace them).
"""

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence
import warnings

import numpy as np

from . import specfun
from .errors import DivergenceError, DomainError, ParameterError, RegimeWarning
from .model import Geometry, ModelParams, derive_scales
from .quadrature import DEFAULT_QUAD, QuadratureConfig, quad_complex, quad_halfline

__all__ = [
    "EVALUATOR_TAGS",
    "SpectralSample",
    "LineShape",
    "s_inf_1d",
    "s_inf_2d",
    "s_inf_screened",
    "s_inf_ramsey",
    "ramsey_weight",
    "s_inf_lorentz_limit",
    "lorentz_width",
    "voigt_fhat",
    "kernel_f",
    "kernel_moments",
    "taylor_signal",
    "sample_line_shape",
]

#: Provenance tags a SpectralSample may carry.
EVALUATOR_TAGS = (
    "closed_form",
    "ramsey_integral",
    "lorentz_limit",
    "fourier_oracle",
    "mc_oracle",
    "green_finite",
)


@dataclass(frozen=True)
class SpectralSample:
    """One point of a spectral line: detuning, complex signal, provenance."""

    delta_omega: float
    value: complex
    evaluator: str

    def __post_init__(self):
        if self.evaluator not in EVALUATOR_TAGS:
            raise ParameterError(f"unknown evaluator tag {self.evaluator!r}")
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ParameterError("sample value must be finite")


@dataclass(frozen=True)
class LineShape:
    """An ordered sweep of SpectralSamples for one parameter set."""

    params: ModelParams
    geometry: Geometry
    samples: tuple = ()
    normalized: bool = False

    def __post_init__(self):
        dws = [s.delta_omega for s in self.samples]
        if any(b <= a for a, b in zip(dws, dws[1:])):
            raise ParameterError("samples must be strictly increasing in delta_omega")

    @property
    def delta_omegas(self) -> np.ndarray:
        return np.array([s.delta_omega for s in self.samples])

    @property
    def values(self) -> np.ndarray:
        return np.array([s.value for s in self.samples], dtype=complex)


def _require_alpha0(alpha0: complex):
    if alpha0 == 0:
        raise DivergenceError(
            "signal diverges at gamma = 0, delta_omega = 0 (no coherence decay)"
        )


def _closed_form(dim: int, z2: complex, alpha0: complex, params: ModelParams) -> complex:
    """Shared closed form: dim 1 uses erfcx(sqrt(z2)), dim 2 the scaled E1."""
    _require_alpha0(alpha0)
    lam0, a = params.lambda0, params.a
    if dim == 1:
        z = cmath.sqrt(z2)
        return math.pi * a * lam0**2 / (math.sqrt(2.0) * alpha0) * z * specfun.erfcx(z)
    if dim == 2:
        return math.pi * a**2 * lam0**2 / (2.0 * alpha0) * z2 * specfun.e1_scaled(z2)
    raise ParameterError("closed forms exist for dim 1 and 2 only")


def s_inf_1d(params: ModelParams, delta_omega: float) -> complex:
    """Infinite-region 1-D signal ``(pi a lam0^2/(sqrt(2) alpha0)) A erfcx(A)``."""
    sc = derive_scales(params, Geometry(dim=1), delta_omega)
    return _closed_form(1, sc.A2, sc.alpha0, params)


def s_inf_2d(params: ModelParams, delta_omega: float) -> complex:
    """Infinite-region 2-D signal ``(pi a^2 lam0^2/(2 alpha0)) A^2 e^{A^2} E1(A^2)``."""
    sc = derive_scales(params, Geometry(dim=2), delta_omega)
    return _closed_form(2, sc.A2, sc.alpha0, params)


def s_inf_screened(
    params: ModelParams,
    delta_omega: float,
    dim: int,
    beta2_convention: str = "adopted",
) -> complex:
    """Infinite-region signal of the *screened diffusion equation*.

    Same closed forms with ``A^2`` replaced by ``beta^2 a^2/2``.  This is
    the exact ``R -> inf`` limit of the finite-region Green-function
    evaluators and the quantity the beta^2-convention arbitration compares
    against the Fourier oracle; it differs from :func:`s_inf_1d` /
    :func:`s_inf_2d` at relative order ``alpha0/nu``.
    """
    sc = derive_scales(params, Geometry(dim=min(dim, 2)), delta_omega, beta2_convention)
    z2 = 0.5 * sc.beta2 * params.a**2
    return _closed_form(dim, z2, sc.alpha0, params)


def screened_closed_form(dim: int, beta: complex, alpha0: complex, params: ModelParams) -> complex:
    """Closed screened signal for an explicit screening constant ``beta``.

    Used by the cylinder mode series, where each axial mode sees the shifted
    constant ``beta_m`` but the source strength keeps the unshifted
    ``beta^2/alpha0``; callers apply that ratio themselves.
    """
    return _closed_form(dim, 0.5 * beta**2 * params.a**2, alpha0, params)


def _return_time(params: ModelParams, delta_omega: float) -> complex:
    # A^2/alpha0 = alpha a^2/v0^2: the (complex) time scale of the
    # return-weight factor in the superposition representation.
    return complex(params.nu + params.gamma, delta_omega) * params.a**2 / params.v0**2


def ramsey_weight(dim: int, params: ModelParams, delta_omega: float, tau) -> complex:
    """Integrand of the superposition representation at dark time ``tau``."""
    sc = derive_scales(params, Geometry(dim=dim), delta_omega)
    _require_alpha0(sc.alpha0)
    tau_r = _return_time(params, delta_omega)
    return cmath.exp(-sc.alpha0 * tau) * (1.0 + tau / tau_r) ** (-0.5 * dim)


def s_inf_ramsey(
    dim: int,
    params: ModelParams,
    delta_omega: float,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> complex:
    """Signal as the superposition of profiles weighted by the dark time.

    Evaluates ``c_dim int_0^inf exp(-alpha0 tau) (1+tau/tau_r)^{-dim/2} dtau``
    with the exact complex ``tau_r = A^2/alpha0``, for which the
    representation is an identity with the closed forms (to quadrature
    tolerance) -- the self-consistency check used throughout the tests.
    """
    if dim not in (1, 2):
        raise ParameterError("ramsey representation implemented for dim 1 and 2")
    sc = derive_scales(params, Geometry(dim=dim), delta_omega)
    if sc.alpha0.real <= 0:
        raise DivergenceError("ramsey integral requires Re alpha0 > 0 (gamma > 0)")
    tau_r = _return_time(params, delta_omega)
    alpha0 = sc.alpha0

    def f(tau):
        return cmath.exp(-alpha0 * tau) * (1.0 + tau / tau_r) ** (-0.5 * dim)

    scale = min(sc.tau_d, 1.0 / abs(alpha0))
    value, _ = quad_halfline(f, scale, quad)
    a, lam0 = params.a, params.lambda0
    c = math.sqrt(math.pi / 2.0) * a * lam0**2 if dim == 1 else 0.5 * math.pi * a**2 * lam0**2
    return c * value


def lorentz_width(dim: int, params: ModelParams) -> float:
    """Diffusive broadening of the no-return Lorentzian.

    ``1/(2 nu tau_a^2)`` in 1-D and ``1/(nu tau_a^2)`` in 2-D; the
    half-width of the limit profile is ``gamma`` plus this.
    """
    flight = params.nu * (params.a / params.v0) ** 2
    if dim == 1:
        return 0.5 / flight
    if dim == 2:
        return 1.0 / flight
    raise ParameterError("Lorentzian limit exists for dim 1 and 2 only")


def s_inf_lorentz_limit(dim: int, params: ModelParams, delta_omega: float) -> complex:
    """No-return Lorentzian limit, valid for ``gamma * nu tau_a^2 >> 1``.

    Emits a RegimeWarning when that product is below 3; the exact
    evaluators remain correct there, only this approximation degrades.
    """
    w = lorentz_width(dim, params)
    flight = params.nu * (params.a / params.v0) ** 2
    if params.gamma * flight < 3.0:
        warnings.warn(
            f"Lorentzian limit used at gamma*nu*tau_a^2 = {params.gamma * flight:.3g} < 3",
            RegimeWarning,
            stacklevel=2,
        )
    alpha0 = complex(params.gamma, delta_omega)
    a, lam0 = params.a, params.lambda0
    c = math.sqrt(math.pi / 2.0) * a * lam0**2 if dim == 1 else 0.5 * math.pi * a**2 * lam0**2
    return c / (alpha0 + w)


def voigt_fhat(k: float, params: ModelParams, delta_omega: float) -> complex:
    """Velocity-averaged free-streaming kernel ``F^(k)`` (a Voigt profile).

    ``F^(k) = int_0^inf exp(-k^2 xi^2 v0^2/4 - alpha xi) dxi
            = (sqrt(pi)/alpha) A_k erfcx(A_k)`` with ``A_k = alpha/(|k| v0)``;
    ``k = 0`` returns ``1/alpha``.  Valid in any dimension (the kernel is
    isotropic).
    """
    alpha = complex(params.nu + params.gamma, delta_omega)
    if k == 0.0:
        return 1.0 / alpha
    a_k = alpha / (abs(k) * params.v0)
    return specfun.SQRT_PI / alpha * a_k * specfun.erfcx(a_k)


def kernel_f(
    r: float,
    params: ModelParams,
    delta_omega: float,
    dim: int,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> complex:
    """Real-space transport kernel ``F(r)``, the transform of ``F^(k)``.

    ``F(r) = W0 int_0^inf exp(-alpha xi - r^2/(xi^2 v0^2)) dxi / xi^dim``,
    singular at ``r = 0`` (logarithmically in 1-D, worse above).
    Evaluated with the log substitution ``xi = exp(s)``, which removes the
    endpoint stiffness on both sides.
    """
    if dim not in (1, 2, 3):
        raise ParameterError("kernel_f requires dim in {1,2,3}")
    if r <= 0.0:
        raise DomainError("F(r) is singular at r = 0; require r > 0")
    alpha = complex(params.nu + params.gamma, delta_omega)
    w0 = (math.sqrt(math.pi) * params.v0) ** (-dim)
    r2v2 = r**2 / params.v0**2

    def integrand(s):
        xi = math.exp(s)
        return cmath.exp(-alpha * xi - r2v2 / xi**2 + (1 - dim) * s)

    # integrand peaks near the saddle xi* = (2 r^2/(alpha v0^2))^(1/3)
    s_star = math.log((2.0 * r2v2 / abs(alpha)) ** (1.0 / 3.0))
    value, _ = quad_complex(integrand, s_star - 40.0, s_star + 40.0, quad,
                            points=[s_star])
    return w0 * value


def kernel_moments(
    params: ModelParams,
    delta_omega: float,
    dim: int,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> tuple[complex, complex]:
    """Zeroth and per-axis second moment of ``F`` over all space.

    Returns ``(int F dV, int x^2 F dV)`` where ``x`` is one Cartesian
    component.  Analytically these are ``1/alpha`` and ``v0^2/alpha^3``
    (the latter equals the printed ``2 <v^2>/(3 alpha^3)`` with the 3-D
    ``<v^2> = 3 v0^2/2``); the quadrature here is the independent check.
    """
    inner = QuadratureConfig(quad.rel_tol * 1e-2, quad.abs_tol * 1e-2, quad.max_subdivisions)
    surface = {1: 2.0, 2: 2.0 * math.pi, 3: 4.0 * math.pi}[dim]
    axis_frac = 1.0 / dim  # isotropy: <x^2> = r^2/dim

    def radial(weight):
        def f(r):
            if r == 0.0:
                return 0.0 + 0.0j
            return weight(r) * kernel_f(r, params, delta_omega, dim, inner)

        scale = params.v0 / abs(complex(params.nu + params.gamma, delta_omega))
        value, _ = quad_halfline(f, scale, quad)
        return value

    m0 = surface * radial(lambda r: r ** (dim - 1))
    m2 = surface * axis_frac * radial(lambda r: r ** (dim + 1))
    return m0, m2


def taylor_signal(
    evaluator: Callable[[float], complex],
    params: ModelParams,
    order: int = 2,
) -> tuple[complex, ...]:
    """Taylor coefficients ``c0, c1, c2`` of a signal around zero detuning.

    Central differences with one Richardson step; the step is a small
    fraction of the Lorentzian width scale so truncation and round-off are
    balanced near 1e-10 relative.  Replaces the printed small-detuning
    coefficient formulas, which are not implemented (see module docstring).
    """
    if not 0 <= order <= 2:
        raise ParameterError("taylor_signal supports order 0..2")
    w_c = params.gamma + lorentz_width(1, params)
    h = 1e-2 * w_c
    f0 = evaluator(0.0)
    coeffs = [f0]
    if order >= 1:
        fp, fm = evaluator(h), evaluator(-h)
        fp2, fm2 = evaluator(h / 2), evaluator(-h / 2)
        d1 = (fp - fm) / (2 * h)
        d1h = (fp2 - fm2) / h
        coeffs.append((4.0 * d1h - d1) / 3.0)
        if order >= 2:
            d2 = (fp - 2 * f0 + fm) / h**2
            d2h = (fp2 - 2 * f0 + fm2) / (h / 2) ** 2
            coeffs.append(0.5 * (4.0 * d2h - d2) / 3.0)
    return tuple(coeffs)


def sample_line_shape(
    evaluator: Callable[[float], complex],
    tag: str,
    params: ModelParams,
    geometry: Geometry,
    delta_omegas: Sequence[float],
) -> LineShape:
    """Evaluate ``evaluator`` on a detuning grid and package a LineShape."""
    dws = sorted(float(d) for d in delta_omegas)
    samples = tuple(SpectralSample(dw, complex(evaluator(dw)), tag) for dw in dws)
    return LineShape(params=params, geometry=geometry, samples=samples)
