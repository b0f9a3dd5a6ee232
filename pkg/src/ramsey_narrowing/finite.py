"""Green-function signals for bounded regions: slab, disk, cylinder.

Inside the absorbing boundary the coherence density solves the screened
diffusion equation ``Lap N - beta^2 N = -(beta^2/alpha0) lam`` with
``N = 0`` on the wall (coherence is destroyed there), and the signal is
``S_R = int lam N dV``.  The three geometries:

* 1-D slab ``|x| < R``: hyperbolic Green function; the overlap integrals
  ``C(x), S(x)`` reduce to shifted error functions.
* 2-D disk ``r < R``: ``I_0/K_0`` Green function.  The construction that
  divides by ``I_0(beta R)`` is used -- it is the one whose density
  actually vanishes at the wall (its competitor in the source, dividing by
  ``K_0(beta R)``, does not reproduce the Green solution; the Monte Carlo
  oracle arbitrates, validation item "2d-denominator").
* 3-D cylinder ``r < R, |z| < l``: expansion in odd axial modes
  ``cos(pi m z / 2l)`` with shifted screening ``beta_m^2 = beta^2 + k_m^2``;
  each mode is a 2-D problem.  The printed global weight ``2l/pi^2`` is
  kept verbatim; the end-to-end Monte Carlo comparison measures the single
  global prefactor it is off by (reported, never silently applied).

All hyperbolic/Bessel ratios are evaluated from exponentially scaled
functions so nothing overflows for ``|beta R|`` into the thousands.

The compact quadrature forms below carry the prefactors that make them
equal ``int lam N dV`` of the reconstructed density itself (checked against
:func:`n_profile` in the tests); where the source prints a different
constant, the density reconstruction and the R -> inf limit win.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Sequence
import warnings

import numpy as np

from .errors import DivergenceError, DomainError, ParameterError, RegimeWarning
from .infinite import s_inf_screened, screened_closed_form
from .model import Geometry, ModelParams, derive_scales
from .quadrature import DEFAULT_QUAD, QuadratureConfig, quad_complex
from .specfun import (
    SQRT_PI,
    ScaledComplex,
    bessel_i_scaled,
    bessel_k_scaled,
    erf,
    erfcx,
)

__all__ = [
    "ModeScales",
    "ModeTerm",
    "ModeSeriesResult",
    "RadialProfile",
    "green_1d",
    "cs_integrals",
    "cs_limits",
    "s_r_1d",
    "s_r_1d_correction",
    "script_i",
    "s_r_2d",
    "s_r_2d_correction",
    "s_r_3d",
    "n_profile",
]

# exp(Re eps^2) beyond this cannot be represented; the affected regimes
# (beam many screening lengths wide) are far outside the model assumptions.
_EXP_GUARD = 650.0


@dataclass(frozen=True)
class ModeScales:
    """One axial cylinder mode: odd index m, wavenumber and screening."""

    m: int
    k_m: float
    beta_m: complex


@dataclass(frozen=True)
class ModeTerm:
    """A single term of the cylinder mode series."""

    mode: ModeScales
    value: complex


@dataclass(frozen=True)
class ModeSeriesResult:
    """Partial sum of the cylinder series with its per-mode breakdown.

    ``value`` is exactly the floating-point sum of ``terms`` in order, so
    truncation error is observable from the reported tail.
    """

    value: complex
    terms: tuple


@dataclass(frozen=True)
class RadialProfile:
    """Coherence density sampled on a grid of radii/abscissae."""

    grid: np.ndarray
    values: np.ndarray


def _scales_finite(params, dim, delta_omega):
    geometry = Geometry(dim=min(dim, 2))
    sc = derive_scales(params, geometry, delta_omega)
    if sc.alpha0 == 0:
        raise DivergenceError("finite-region signal diverges at alpha0 = 0")
    return sc


def _guard_exponent(re_exponent: float, what: str):
    if re_exponent > _EXP_GUARD:
        raise OverflowError(
            f"{what}: scaled exponent {re_exponent:.1f} exceeds double range; "
            "beam is too wide in screening lengths for this formulation"
        )


# ---------------------------------------------------------------------------
# 1-D slab
# ---------------------------------------------------------------------------


def green_1d(x: float, xp: float, beta: complex, R: float) -> complex:
    """Green function of ``N'' - beta^2 N = -f`` with ``N'(0)=0, N(R)=0``.

    ``G = cosh(beta x_<) sinh(beta (R - x_>)) / (beta cosh(beta R))``,
    evaluated from decaying exponentials only, so it is overflow-safe for
    ``|beta R|`` up to ~1e4 and beyond.
    """
    if not (0.0 <= x <= R and 0.0 <= xp <= R):
        raise DomainError("green_1d requires 0 <= x, xp <= R")
    beta = complex(beta)
    xl, xg = (x, xp) if x <= xp else (xp, x)
    # cosh(b xl) sinh(b (R-xg)) / cosh(b R), everything divided by e^{b R}
    e = cmath.exp
    num = (
        e(-beta * (xg - xl))
        - e(-beta * (2.0 * R - xl - xg))
        + e(-beta * (xl + xg))
        - e(-beta * (2.0 * R + xl - xg))
    )
    den = 1.0 + e(-2.0 * beta * R)
    return num / (2.0 * beta * den)


def _sinh_ratio(x: float, beta: complex, R: float) -> complex:
    # sinh(beta (R-x)) / cosh(beta R) without forming large exponentials
    e = cmath.exp
    return (e(-beta * x) - e(-beta * (2.0 * R - x))) / (1.0 + e(-2.0 * beta * R))


def _exp_erf(eps: complex, w: complex, combined_exponent: complex) -> complex:
    """``exp(eps^2) erf(w)`` with ``combined_exponent = eps^2 - w^2`` supplied
    in already-cancelled form, so no large intermediate is formed."""
    sign = 1.0 if w.real >= 0.0 else -1.0
    _guard_exponent((eps * eps).real, "exp(eps^2) erf")
    lead = sign * cmath.exp(eps * eps)
    return lead - sign * cmath.exp(combined_exponent) * erfcx(sign * w)


def _cs_pair(x: float, eps: complex, a: float) -> tuple[complex, complex]:
    """The slab overlap integrals C(x), S(x) for explicit eps = beta a/2.

    ``C(x) = int_0^x exp(-y^2/a^2) cosh(beta y) dy`` and the sinh analogue;
    both are combinations of ``exp(eps^2) erf(x/a -/+ eps)`` in which the
    exponents are cancelled analytically before any exp is taken.
    """
    u = x / a
    # eps^2 - (u -/+ eps)^2 = -u (u -/+ 2 eps)
    em = _exp_erf(eps, u - eps, -u * (u - 2.0 * eps))
    ep = _exp_erf(eps, u + eps, -u * (u + 2.0 * eps))
    # exp(eps^2) erf(eps) = exp(eps^2) - erfcx(eps)
    _guard_exponent((eps * eps).real, "C/S integrals")
    e_eps = cmath.exp(eps * eps) - erfcx(eps)
    c = 0.25 * SQRT_PI * a * (em + ep)
    s = 0.25 * SQRT_PI * a * (em - ep + 2.0 * e_eps)
    return c, s


def cs_integrals(x: float, params: ModelParams, delta_omega: float) -> tuple[complex, complex]:
    """``(C(x), S(x))`` for the model's screening constant at this detuning."""
    if x < 0:
        raise DomainError("C(x), S(x) defined for x >= 0")
    sc = _scales_finite(params, 1, delta_omega)
    return _cs_pair(x, sc.epsilon, params.a)


def cs_limits(params: ModelParams, delta_omega: float) -> tuple[ScaledComplex, ScaledComplex]:
    """Large-x limits as scaled pairs: ``C(inf) = (sqrt(pi)/2) a e^{eps^2}``
    and ``S(inf) = C(inf) erf(eps)``, exponent kept symbolic."""
    sc = _scales_finite(params, 1, delta_omega)
    eps = sc.epsilon
    a = params.a
    c_mantissa = 0.5 * SQRT_PI * a
    return (
        ScaledComplex(c_mantissa, eps * eps),
        ScaledComplex(c_mantissa * erf(eps), eps * eps),
    )


def s_r_1d(
    params: ModelParams,
    delta_omega: float,
    R: float,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> complex:
    """Slab signal ``S_R = (4 beta lam0^2/alpha0)
    int_0^R [sinh beta(R-x)/cosh beta R] e^{-x^2/a^2} C(x) dx``.

    The prefactor 4 (one 2 from the +/-x symmetry of ``int lam N dx``, one
    from symmetrizing the double integral) makes this identical to
    ``2 int_0^R lam N dx`` of the reconstructed density; the source prints
    the integral without it.  Converges to the screened infinite-region
    closed form as ``R -> inf``.
    """
    if not (R > 0 and math.isfinite(R)):
        raise ParameterError("s_r_1d requires finite R > 0")
    sc = _scales_finite(params, 1, delta_omega)
    beta, eps, a = sc.beta, sc.epsilon, params.a

    def integrand(x):
        c, _ = _cs_pair(x, eps, a)
        return _sinh_ratio(x, beta, R) * math.exp(-((x / a) ** 2)) * c

    value, _ = quad_complex(integrand, 0.0, R, quad, points=[min(a, 0.5 * R)])
    return 4.0 * beta * params.lambda0**2 / sc.alpha0 * value


def s_r_1d_correction(params: ModelParams, delta_omega: float, R: float) -> complex:
    """Asymptotic slab signal for ``R >> a``:
    ``S_R ~ S_inf - (pi a^2 beta lam0^2/alpha0) exp(2 eps^2 - 2 beta R)``.

    ``S_inf`` is the screened infinite-region value (the true limit of
    :func:`s_r_1d`).  The exponential-correction coefficient is the one the
    large-R expansion of the evaluator actually produces: the boundary
    *reduces* the signal.  Warns when ``Re(beta R) < 3``.
    """
    sc = _scales_finite(params, 1, delta_omega)
    beta, a = sc.beta, params.a
    if (beta * R).real < 3.0:
        warnings.warn(
            f"1-D boundary correction outside validity: Re(beta R) = {(beta * R).real:.2f} < 3",
            RegimeWarning,
            stacklevel=2,
        )
    exponent = 0.5 * beta**2 * a**2 - 2.0 * beta * R
    _guard_exponent(exponent.real, "s_r_1d_correction")
    term = math.pi * a**2 * beta * params.lambda0**2 / sc.alpha0 * cmath.exp(exponent)
    return s_inf_screened(params, delta_omega, 1) - term


# ---------------------------------------------------------------------------
# 2-D disk
# ---------------------------------------------------------------------------


def script_i(
    r: float,
    beta: complex,
    a: float,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> complex:
    """Radial overlap ``I(r) = int_0^r x I_0(beta x) exp(-x^2/a^2) dx``.

    Uses the scaled ``I_0`` so the integrand's exponent is the cancelled
    ``Re(beta) x - x^2/a^2``, bounded by ``(Re eps)^2``; saturates at
    ``I(inf) = (a^2/2) exp(beta^2 a^2 / 4)``.
    """
    if r < 0:
        raise DomainError("script_i requires r >= 0")
    if r == 0:
        return 0.0 + 0.0j
    beta = complex(beta)
    # integrand exponent Re(beta) x - x^2/a^2 peaks at (Re eps)^2
    _guard_exponent((0.5 * beta.real * a) ** 2, "script_i")

    def integrand(x):
        return x * bessel_i_scaled(0, beta * x) * cmath.exp(
            complex(beta.real * x - (x / a) ** 2, 0.0)
        )

    peak = min(max(0.5 * beta.real * a**2, 0.0), r)
    value, _ = quad_complex(integrand, 0.0, r, quad, points=[peak] if 0 < peak < r else None)
    return value


def script_i_infinity(beta: complex, a: float) -> complex:
    """``I(inf) = (a^2/2) exp(beta^2 a^2/4)`` (plain value; may overflow)."""
    exponent = 0.25 * complex(beta) ** 2 * a**2
    _guard_exponent(exponent.real, "script_i_infinity")
    return 0.5 * a**2 * cmath.exp(exponent)


def _disk_bracket(r: float, beta: complex, R: float) -> complex:
    """``K_0(beta r) - K_0(beta R) I_0(beta r)/I_0(beta R)``: the radial
    Green factor for the source point inside; vanishes at ``r = R``.

    The scaled Bessel values carry the full complex phase; the residual
    scaling factors are pure real decaying exponentials.
    """
    k_r = bessel_k_scaled(0, beta * r) * math.exp(-beta.real * r)
    ratio = bessel_i_scaled(0, beta * r) / bessel_i_scaled(0, beta * R)
    k_R = bessel_k_scaled(0, beta * R) * math.exp(-beta.real * (2.0 * R - r))
    return k_r - k_R * ratio


def _disk_green(rl: float, rg: float, beta: complex, R: float) -> complex:
    """Radial disk Green function ``I_0(beta r_<) [I_0(beta R) K_0(beta r_>)
    - I_0(beta r_>) K_0(beta R)] / I_0(beta R)`` with every scaling exponent
    cancelled analytically (all are real and <= 0)."""
    i_l = bessel_i_scaled(0, beta * rl)
    t1 = i_l * bessel_k_scaled(0, beta * rg) * math.exp(beta.real * (rl - rg))
    t2 = (
        i_l
        * bessel_k_scaled(0, beta * R)
        * (bessel_i_scaled(0, beta * rg) / bessel_i_scaled(0, beta * R))
        * math.exp(beta.real * (rl + rg - 2.0 * R))
    )
    return t1 - t2


def _s_r_2d_beta(
    beta: complex,
    alpha0: complex,
    params: ModelParams,
    R: float,
    quad: QuadratureConfig,
) -> complex:
    inner = QuadratureConfig(
        max(quad.rel_tol * 0.1, 1e-13), quad.abs_tol, quad.max_subdivisions
    )
    a = params.a

    def integrand(r):
        if r == 0.0:
            return 0.0 + 0.0j
        return (
            r
            * math.exp(-((r / a) ** 2))
            * _disk_bracket(r, beta, R)
            * script_i(r, beta, a, inner)
        )

    pts = sorted({0.1 * a, max(R - 1.0 / max(beta.real, 1e-30), 0.2 * R)})
    value, _ = quad_complex(integrand, 0.0, R, quad, points=pts)
    return 4.0 * math.pi * beta**2 * params.lambda0**2 / alpha0 * value


def s_r_2d(
    params: ModelParams,
    delta_omega: float,
    R: float,
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> complex:
    """Disk signal
    ``S_R = (4 pi beta^2 lam0^2/alpha0) int_0^R r e^{-r^2/a^2}
    [K_0(beta r) I_0(beta R) - K_0(beta R) I_0(beta r)]/I_0(beta R) I(r) dr``.

    Built on the Green construction that satisfies ``N(R) = 0`` exactly
    (division by ``I_0(beta R)``); quadrature nodes cluster at the ``K_0``
    log singularity near 0 and in the boundary layer of width ``1/Re beta``
    at the wall.  Reproduces the screened infinite-region form as R grows.
    """
    if not (R > 0 and math.isfinite(R)):
        raise ParameterError("s_r_2d requires finite R > 0")
    sc = _scales_finite(params, 2, delta_omega)
    return _s_r_2d_beta(sc.beta, sc.alpha0, params, R, quad)


def s_r_2d_correction(params: ModelParams, delta_omega: float, R: float) -> complex:
    """Asymptotic disk signal for ``R >> a``:
    ``S_R ~ S_inf - (beta^2 lam0^2/alpha0)
    (2 pi e^{beta R - R^2/a^2} + pi^2 e^{-2 beta R}) I(inf)^2``.

    Kept as printed in the source; the evaluator residual matches it within
    a factor ~1.9 in the validity region (measured ratio is surfaced in the
    validation report).  Warns for ``Re(beta R) < 3`` or ``R < 3a``.
    """
    sc = _scales_finite(params, 2, delta_omega)
    beta, a = sc.beta, params.a
    if (beta * R).real < 3.0 or R < 3.0 * a:
        warnings.warn(
            f"2-D boundary correction outside validity: Re(beta R) = {(beta * R).real:.2f}, "
            f"R/a = {R / a:.2f}",
            RegimeWarning,
            stacklevel=2,
        )
    # I(inf)^2 = (a^4/4) exp(beta^2 a^2/2); fold it into each exponential
    base = 0.5 * beta**2 * a**2
    e1 = base + beta * R - (R / a) ** 2
    e2 = base - 2.0 * beta * R
    _guard_exponent(max(e1.real, e2.real), "s_r_2d_correction")
    pref = 0.25 * a**4 * sc.beta2 * params.lambda0**2 / sc.alpha0
    term = pref * (2.0 * math.pi * cmath.exp(e1) + math.pi**2 * cmath.exp(e2))
    return s_inf_screened(params, delta_omega, 2) - term


def correction_crossover_radius(params: ModelParams, delta_omega: float) -> float:
    """Radius where the two 2-D correction terms trade dominance.

    The Gaussian-tail term beats the reflection term iff
    ``3 Re(beta) R - R^2/a^2 > ln(pi/2)``; the returned radius is the
    larger root of the equality (beyond it the ``e^{-2 beta R}`` term wins).
    """
    sc = _scales_finite(params, 2, delta_omega)
    b, a = sc.beta.real, params.a
    disc = (3.0 * b * a**2) ** 2 - 4.0 * a**2 * math.log(math.pi / 2.0)
    if disc <= 0:
        return 0.0
    return 0.5 * (3.0 * b * a**2 + math.sqrt(disc))


# ---------------------------------------------------------------------------
# 3-D cylinder
# ---------------------------------------------------------------------------


def s_r_3d(
    params: ModelParams,
    delta_omega: float,
    R: float,
    l: float,
    n_terms: int = 16,
    quad: QuadratureConfig = DEFAULT_QUAD,
    rel_stop: float = 1e-10,
) -> ModeSeriesResult:
    """Cylinder signal as the odd-axial-mode series
    ``S = (2l/pi^2) sum_m (beta^2/beta_m^2) S^(2)[beta_m] / m^2``.

    Each odd mode ``m = 2n+1`` has ``k_m = pi m/(2l)`` and
    ``beta_m^2 = beta^2 + k_m^2``; the per-mode factor ``beta^2/beta_m^2``
    is the mode's share of the (beta^2-scaled) source.  ``R`` may be
    infinite, in which case the per-mode 2-D signal is the screened closed
    form.  Summation stops after ``n_terms`` modes or once a term falls
    below ``rel_stop`` of the partial sum.
    """
    if not (l > 0 and math.isfinite(l)):
        raise ParameterError("s_r_3d requires finite half-height l > 0")
    if n_terms < 1:
        raise ParameterError("n_terms must be >= 1")
    sc = _scales_finite(params, 2, delta_omega)
    beta2, alpha0 = sc.beta2, sc.alpha0
    weight = 2.0 * l / math.pi**2

    terms = []
    total = 0.0 + 0.0j
    for n in range(n_terms):
        m = 2 * n + 1
        k_m = math.pi * m / (2.0 * l)
        beta_m = cmath.sqrt(beta2 + k_m**2)
        if beta_m.real < 0:
            beta_m = -beta_m
        if math.isinf(R):
            s2 = screened_closed_form(2, beta_m, alpha0, params)
        else:
            s2 = _s_r_2d_beta(beta_m, alpha0, params, R, quad)
        term = weight * (beta2 / beta_m**2) * s2 / m**2
        terms.append(ModeTerm(ModeScales(m, k_m, beta_m), term))
        total += term
        if abs(term) < rel_stop * abs(total):
            break
    return ModeSeriesResult(value=total, terms=tuple(terms))


# ---------------------------------------------------------------------------
# density profiles
# ---------------------------------------------------------------------------


def n_profile(
    dim: int,
    params: ModelParams,
    delta_omega: float,
    geometry: Geometry,
    grid: Sequence[float],
    quad: QuadratureConfig = DEFAULT_QUAD,
) -> RadialProfile:
    """Coherence density ``N`` on a grid, via the Green-function quadratures.

    Supports the slab (dim 1, N as a function of |x|) and the disk (dim 2,
    radial); the cylinder density is a mode sum over these and is not
    reconstructed pointwise.  Boundary nodes come out at zero by
    construction of the Green functions.
    """
    if dim not in (1, 2):
        raise ParameterError("n_profile supports dim 1 and 2")
    if not geometry.finite_radius:
        raise ParameterError("n_profile needs a finite radius")
    R = geometry.radius
    grid = np.asarray(sorted(float(g) for g in grid))
    if grid.size == 0 or grid[0] < 0 or grid[-1] > R:
        raise DomainError("n_profile grid must lie within [0, R]")
    sc = _scales_finite(params, dim, delta_omega)
    beta, alpha0, a = sc.beta, sc.alpha0, params.a
    f0 = sc.beta2 / alpha0 * params.lambda0

    values = np.empty(grid.size, dtype=complex)
    for i, x in enumerate(grid):
        if dim == 1:
            def integrand(xp, _x=x):
                return green_1d(_x, xp, beta, R) * f0 * math.exp(-((xp / a) ** 2))
        else:
            def integrand(rp, _r=x):
                rl, rg = (_r, rp) if _r <= rp else (rp, _r)
                return rp * _disk_green(rl, rg, beta, R) * f0 * math.exp(-((rp / a) ** 2))

        pts = [p for p in (x, a) if 0.0 < p < R]
        values[i], _ = quad_complex(integrand, 0.0, R, quad, points=pts or None)
    return RadialProfile(grid=grid, values=values)
