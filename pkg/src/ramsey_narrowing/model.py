"""Physical parameters, derived complex scales and regime diagnostics.

All symbols that enter the line-shape formulas live here:

* ``alpha  = nu + gamma + i dw``   -- total relaxation seen by a moving atom,
* ``alpha0 = gamma + i dw``        -- relaxation of the velocity-averaged coherence,
* ``A^2    = alpha alpha0 a^2 / v0^2`` -- argument of the infinite-region closed forms,
* ``beta^2 = 2 alpha0 alpha^2 / (nu v0^2)`` -- screening constant of the diffusion
  equation ``Lap N - beta^2 N = -(beta^2/alpha0) lambda`` (adopted convention;
  an alternative appears in the source with half this value, see
  ``BETA2_CONVENTIONS`` and the validation report),
* ``D = nu v0^2 / (2 alpha^2)``    -- complex diffusion coefficient, ``beta^2 D = alpha0``.

Two inequivalent "diffusion times" are in circulation and both are exposed:
``tau_d = a^2/|D|`` at zero detuning (~ ``2 nu tau_a^2`` for ``nu >> gamma``)
and the flight-based ``nu tau_a^2`` that governs the one-dimensional
Lorentzian limit.  Reports print both rather than picking silently.

Everything here is a pure value computation on frozen dataclasses.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError

__all__ = [
    "ModelParams",
    "Geometry",
    "DerivedScales",
    "RegimeDiagnostic",
    "BETA2_CONVENTIONS",
    "DEFAULT_PARAMS",
    "derive_scales",
    "validate_regime",
    "lambda_profile",
    "maxwell_density",
]

#: Supported conventions for the screening constant beta^2.
#: "adopted" is 2 alpha0 alpha^2/(nu v0^2); "half" is the variant printed in
#: the finite-region derivation with half that value.  The Fourier oracle
#: arbitrates between them (validation item "beta2-convention").
BETA2_CONVENTIONS = ("adopted", "half")


def _require_positive(name: str, value: float):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite positive number, got {value!r}")


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs in reduced units.

    Attributes
    ----------
    nu : float
        Velocity-resampling (strong-collision) rate.
    gamma : float
        Coherence decay rate.
    v0 : float
        Thermal speed of the Maxwell distribution ``W ~ exp(-v^2/v0^2)``.
    a : float
        1/e radius of the Gaussian excitation beam ``lam = lam0 exp(-r^2/a^2)``.
    lambda0 : float
        Excitation amplitude; signals scale as ``lambda0^2``.
    """

    nu: float
    gamma: float
    v0: float
    a: float
    lambda0: float = 1.0

    def __post_init__(self):
        for name in ("nu", "gamma", "v0", "a", "lambda0"):
            value = getattr(self, name)
            if name == "gamma":
                # gamma = 0 is accepted as a degenerate limit; evaluators
                # raise DivergenceError where the signal actually diverges.
                if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                    raise ParameterError(f"gamma must be finite and >= 0, got {value!r}")
            else:
                _require_positive(name, value)


#: Reference parameter set, deep in the narrowing regime
#: (nu tau_a = 10, gamma tau_a = 0.01): the CLI default and the set the
#: bundled validation suite runs at.
DEFAULT_PARAMS = ModelParams(nu=1000.0, gamma=1.0, v0=100.0, a=1.0, lambda0=1.0)


@dataclass(frozen=True)
class Geometry:
    """Spatial configuration: dimension and absorbing boundaries.

    ``radius`` may be ``math.inf`` for the unbounded problem.  The
    three-dimensional configuration is a cylinder of radius ``radius``
    (possibly infinite) bounded by planes at ``z = +/- half_height``; an
    entirely unbounded 3-D geometry is rejected because its signal diverges
    for a beam that does not depend on z.
    """

    dim: int
    radius: float = math.inf
    half_height: float | None = None

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise ParameterError(f"dim must be 1, 2 or 3, got {self.dim!r}")
        if not (self.radius > 0):
            raise ParameterError(f"radius must be positive or inf, got {self.radius!r}")
        if self.dim == 3:
            if self.half_height is None or not (
                math.isfinite(self.half_height) and self.half_height > 0
            ):
                raise ParameterError(
                    "dim=3 requires a finite positive half_height "
                    "(the unbounded 3-D signal diverges)"
                )
        elif self.half_height is not None:
            raise ParameterError("half_height is only meaningful for dim=3")

    @property
    def finite_radius(self) -> bool:
        return math.isfinite(self.radius)


@dataclass(frozen=True)
class DerivedScales:
    """All derived scales at one detuning ``delta_omega``.

    Complex fields use the principal square root with ``Re beta > 0``
    (``beta = 0`` only in the degenerate case ``gamma = 0, dw = 0``).
    ``tau_d`` is ``a^2/|D|`` evaluated at zero detuning, where ``D`` is real.
    """

    alpha: complex
    alpha0: complex
    beta2: complex
    beta: complex
    A2: complex
    epsilon: complex
    D: complex
    tau_a: float
    tau_nu: float
    tau_gamma: float
    tau_d: float
    mean_v2: float
    w0: float

    @property
    def A(self) -> complex:
        """Principal square root of ``A2`` (right half plane)."""
        return cmath.sqrt(self.A2)

    @property
    def tau_d_flight(self) -> float:
        """The flight-based diffusion time ``nu tau_a^2`` (the value the
        source quotes for the one-dimensional problem)."""
        return self.tau_a**2 / self.tau_nu


def derive_scales(
    params: ModelParams,
    geometry: Geometry,
    delta_omega: float,
    beta2_convention: str = "adopted",
) -> DerivedScales:
    """Compute every derived scale at one detuning.

    Parameters
    ----------
    params, geometry
        Model inputs; ``geometry.dim`` selects ``mean_v2`` and the Maxwell
        normalization.
    delta_omega : float
        Two-photon detuning (may be negative; conjugating it conjugates
        every complex scale).
    beta2_convention : str
        "adopted" for ``2 alpha0 alpha^2/(nu v0^2)`` (the convention whose
        diffusion solution reproduces the small-k limit of the exact
        Fourier kernel), "half" for the alternative with half that value.
        Only validation code should ever pass "half".
    """
    if beta2_convention not in BETA2_CONVENTIONS:
        raise ParameterError(f"unknown beta2 convention {beta2_convention!r}")
    nu, gamma, v0, a = params.nu, params.gamma, params.v0, params.a
    alpha = complex(nu + gamma, delta_omega)
    alpha0 = complex(gamma, delta_omega)
    beta2 = 2.0 * alpha0 * alpha**2 / (nu * v0**2)
    if beta2_convention == "half":
        beta2 = 0.5 * beta2
    beta = cmath.sqrt(beta2)
    if beta.real < 0.0:
        beta = -beta
    A2 = alpha * alpha0 * a**2 / v0**2
    D = nu * v0**2 / (2.0 * alpha**2)
    d_at_zero = nu * v0**2 / (2.0 * (nu + gamma) ** 2)
    dim = geometry.dim
    return DerivedScales(
        alpha=alpha,
        alpha0=alpha0,
        beta2=beta2,
        beta=beta,
        A2=A2,
        epsilon=0.5 * beta * a,
        D=D,
        tau_a=a / v0,
        tau_nu=1.0 / nu,
        tau_gamma=math.inf if gamma == 0 else 1.0 / gamma,
        tau_d=a**2 / d_at_zero,
        mean_v2=0.5 * dim * v0**2,
        w0=(math.sqrt(math.pi) * v0) ** (-dim),
    )


@dataclass(frozen=True)
class RegimeDiagnostic:
    """One violated model assumption, with the measured ratio."""

    name: str
    ratio: float
    requirement: str
    message: str


def validate_regime(
    params: ModelParams, geometry: Geometry, delta_omega_max: float
) -> list[RegimeDiagnostic]:
    """Check the kinetic-model inequalities; return one record per violation.

    The diffusion picture needs many collisions per beam transit
    (``nu tau_a >> 1``), slow decay and detuning on the collision scale
    (``gamma, dw << nu``), a transit faster than both decay and diffusion
    escape (``tau_a < tau_gamma, tau_a < tau_d``) and, for a bounded region,
    many collisions out to the wall (``nu R / v0 >> 1``).  Violations are
    reported, never raised: the evaluators still run, the numbers are just
    outside the regime the closed forms were derived for.
    """
    nu, gamma, v0, a = params.nu, params.gamma, params.v0, params.a
    tau_a = a / v0
    tau_d = 2.0 * a**2 * (nu + gamma) ** 2 / (nu * v0**2)  # a^2/|D(0)|
    out: list[RegimeDiagnostic] = []

    def check(name, ratio, requirement, message):
        if not ratio < 1.0:
            out.append(RegimeDiagnostic(name, ratio, requirement, message))

    check("gamma_much_less_than_nu", gamma / nu, "gamma/nu < 1",
          f"gamma/nu = {gamma / nu:.3g}; decay is not slow on the collision scale")
    check("detuning_much_less_than_nu", abs(delta_omega_max) / nu, "|dw_max|/nu < 1",
          f"|dw_max|/nu = {abs(delta_omega_max) / nu:.3g}; detuning reaches the collision rate")
    check("many_collisions_per_transit", 1.0 / (nu * tau_a), "nu tau_a > 1",
          f"nu tau_a = {nu * tau_a:.3g} < 1; too few collisions during a beam transit")
    if gamma > 0:
        check("transit_faster_than_decay", tau_a * gamma, "tau_a < tau_gamma",
              f"tau_a/tau_gamma = {tau_a * gamma:.3g}; coherence decays within a transit")
    check("transit_faster_than_diffusion", tau_a / tau_d, "tau_a < tau_d",
          f"tau_a/tau_d = {tau_a / tau_d:.3g}; diffusion escape faster than a transit")
    if geometry.finite_radius:
        nu_tau_r = nu * geometry.radius / v0
        check("many_collisions_to_wall", 1.0 / nu_tau_r, "nu R/v0 > 1",
              f"nu tau_R = {nu_tau_r:.3g} < 1; ballistic wall losses, diffusion picture fails")
    return out


def lambda_profile(r, params: ModelParams, geometry: Geometry) -> float:
    """Gaussian excitation profile ``lambda0 exp(-|r|^2/a^2)`` at point ``r``.

    ``r`` is a scalar (1-D) or a sequence with ``geometry.dim`` components.
    For the 3-D cylinder the beam runs along z, so only the transverse
    components enter.
    """
    r = np.atleast_1d(np.asarray(r, dtype=float))
    if r.size != geometry.dim:
        raise ParameterError(f"point has {r.size} components, geometry.dim={geometry.dim}")
    if geometry.dim == 3:
        r2 = r[0] ** 2 + r[1] ** 2
    else:
        r2 = float(np.dot(r, r))
    return params.lambda0 * math.exp(-r2 / params.a**2)


def maxwell_density(v, params: ModelParams, geometry: Geometry) -> float:
    """Maxwell velocity density ``W0 exp(-|v|^2/v0^2)``; integrates to 1."""
    v = np.atleast_1d(np.asarray(v, dtype=float))
    if v.size != geometry.dim:
        raise ParameterError(f"velocity has {v.size} components, geometry.dim={geometry.dim}")
    w0 = (math.sqrt(math.pi) * params.v0) ** (-geometry.dim)
    return w0 * math.exp(-float(np.dot(v, v)) / params.v0**2)
