"""Stochastic strong-collision transport oracle.

The stationary kinetic equation has the path representation

    ``S(dw) = Lam * E[ int_0^T lam(r(t)) exp(-(gamma + i dw) t) dt ]``

where ``Lam = int lam dV``, the atom starts at ``r(0) ~ lam/Lam`` with a
Maxwell velocity, flies ballistically, resamples its velocity from the
Maxwell distribution at Poisson rate ``nu`` (a strong collision forgets the
previous velocity completely), and the trajectory ends at the absorbing
wall or at the time cutoff ``t_max``.  Decay and detuning enter as an
analytic weight, not as killing, which keeps the variance down and lets a
single trajectory serve every requested detuning.

Reproducibility contract: each trajectory draws from its own counter-based
stream keyed by ``(seed, trajectory index)`` (splitmix64), trajectories
write only their own accumulator row, and the final reduction runs in
trajectory order -- so results are bit-identical for any thread count and
any partitioning of the trajectory range.

The segment integrals use two-point Gauss-Legendre panels no longer than
``substep`` (default ``min(tau_nu, tau_a)/10``); segments whose closest
approach keeps the beam factor below ~1e-19 are skipped.  The finite
``t_max`` bias is bounded analytically by ``Lam exp(-gamma t_max)/gamma``
and added to the reported standard error.
"""

import math
from dataclasses import dataclass

import numpy as np
from numba import njit, prange

from ..errors import ConfigError, ParameterError
from ..model import Geometry, ModelParams, derive_scales
from .types import OracleEstimate

__all__ = ["MCConfig", "mc_signal", "lambda_total"]

# beam factor exp(-d^2/a^2) below exp(-42) contributes nothing at MC accuracy
_LAMBDA_CUT = 42.0

_U64 = np.uint64
_GOLDEN = _U64(0x9E3779B97F4A7C15)
_TO_DOUBLE = 1.0 / 9007199254740992.0  # 2^-53


@dataclass(frozen=True)
class MCConfig:
    """Monte Carlo run configuration.

    ``substep`` must satisfy ``substep <= min(tau_nu, tau_a)/10``; leaving
    it ``None`` picks exactly that bound.  ``t_max`` defaults to
    ``max(12 tau_gamma, 12 tau_d)``.  ``stream_partition`` is the block
    size used when chunking trajectories for execution; estimates do not
    depend on it (per-trajectory streams), it only shapes scheduling.
    """

    n_trajectories: int
    seed: int = 0
    t_max: float | None = None
    substep: float | None = None
    stream_partition: int = 4096

    def __post_init__(self):
        if self.n_trajectories < 1:
            raise ConfigError("n_trajectories must be >= 1")
        if self.stream_partition < 1:
            raise ConfigError("stream_partition must be >= 1")
        if self.t_max is not None and not self.t_max > 0:
            raise ConfigError("t_max must be positive")
        if self.substep is not None and not self.substep > 0:
            raise ConfigError("substep must be positive")

    def resolve(self, params: ModelParams) -> tuple[float, float]:
        """Return the effective ``(t_max, substep)`` for these params."""
        tau_nu = 1.0 / params.nu
        tau_a = params.a / params.v0
        max_substep = min(tau_nu, tau_a) / 10.0
        substep = max_substep if self.substep is None else self.substep
        if substep > max_substep * (1.0 + 1e-12):
            raise ConfigError(
                f"substep {substep:g} violates the bound min(tau_nu, tau_a)/10 = {max_substep:g}"
            )
        if self.t_max is None:
            tau_d = derive_scales(params, Geometry(dim=1), 0.0).tau_d
            t_max = 12.0 * max(1.0 / params.gamma, tau_d)
        else:
            t_max = self.t_max
        return t_max, substep


def lambda_total(params: ModelParams, geometry: Geometry) -> float:
    """``Lam = int lam dV`` over the domain (truncated at the boundary)."""
    a, lam0 = params.a, params.lambda0
    R = geometry.radius
    if geometry.dim == 1:
        return lam0 * math.sqrt(math.pi) * a * (math.erf(R / a) if math.isfinite(R) else 1.0)
    disk = lam0 * math.pi * a**2
    if math.isfinite(R):
        disk *= 1.0 - math.exp(-((R / a) ** 2))
    if geometry.dim == 2:
        return disk
    return disk * 2.0 * geometry.half_height


@njit(inline="always")
def _mix(z):
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


@njit(inline="always")
def _next_u01(state):
    # splitmix64 step; returns (uniform in [0,1), new state)
    state = state + _GOLDEN
    return (_mix(state) >> _U64(11)) * _TO_DOUBLE, state


@njit(inline="always")
def _two_normals(state):
    u1, state = _next_u01(state)
    u2, state = _next_u01(state)
    r = math.sqrt(-2.0 * math.log(1.0 - u1))
    phi = 2.0 * math.pi * u2
    return r * math.cos(phi), r * math.sin(phi), state


@njit(parallel=True, cache=True)
def _run_trajectories(
    n_traj, seed, dim, bound_kind, R, half_l, a, v0, nu, gamma,
    t_max, substep, dws, out,
):
    # bound_kind: 0 infinite, 1 slab |x|<R, 2 disk, 3 cylinder (R may be inf)
    n_dw = dws.shape[0]
    inv_a2 = 1.0 / (a * a)
    sigma_x = a / math.sqrt(2.0)
    sigma_v = v0 / math.sqrt(2.0)
    cut2 = _LAMBDA_CUT * a * a
    gl_off = 0.5 / math.sqrt(3.0)  # 2-point Gauss-Legendre offsets +/- on unit panel
    r_finite = math.isfinite(R)

    for i in prange(n_traj):
        state = _mix(_U64(seed) + _GOLDEN * (_U64(i) + _U64(1)))
        have_spare = False
        spare = 0.0

        # --- initial position from lam/Lam, rejected into the domain
        x = 0.0
        y = 0.0
        z = 0.0
        while True:
            z0, z1, state = _two_normals(state)
            if dim == 1:
                x = z0 * sigma_x
                if (not r_finite) or abs(x) < R:
                    break
            else:
                x = z0 * sigma_x
                y = z1 * sigma_x
                if (not r_finite) or x * x + y * y < R * R:
                    break
        if bound_kind == 3:
            u, state = _next_u01(state)
            z = (2.0 * u - 1.0) * half_l

        # --- initial Maxwell velocity
        vx = 0.0
        vy = 0.0
        vz = 0.0
        z0, z1, state = _two_normals(state)
        if dim == 1:
            vx = z0 * sigma_v
            spare = z1
            have_spare = True
        elif dim == 2:
            vx = z0 * sigma_v
            vy = z1 * sigma_v
        else:
            vx = z0 * sigma_v
            vy = z1 * sigma_v
            z2, z3, state = _two_normals(state)
            vz = z2 * sigma_v
            spare = z3
            have_spare = True

        t = 0.0
        while t < t_max:
            u, state = _next_u01(state)
            seg = -math.log(1.0 - u) / nu
            if t + seg > t_max:
                seg = t_max - t
            killed = False

            # --- absorbing-boundary crossing within this flight
            if bound_kind == 1:
                if vx > 0.0:
                    t_hit = (R - x) / vx
                elif vx < 0.0:
                    t_hit = (-R - x) / vx
                else:
                    t_hit = math.inf
                if t_hit <= seg:
                    seg = t_hit
                    killed = True
            elif bound_kind == 2 or (bound_kind == 3 and r_finite):
                a2 = vx * vx + vy * vy
                if a2 > 0.0:
                    b = x * vx + y * vy
                    c = x * x + y * y - R * R
                    disc = b * b - a2 * c
                    if disc > 0.0:
                        t_hit = (-b + math.sqrt(disc)) / a2
                        if 0.0 <= t_hit <= seg:
                            seg = t_hit
                            killed = True
            if bound_kind == 3:
                if vz > 0.0:
                    t_hit = (half_l - z) / vz
                elif vz < 0.0:
                    t_hit = (-half_l - z) / vz
                else:
                    t_hit = math.inf
                if t_hit <= seg:
                    seg = t_hit
                    killed = True

            # --- beam overlap along the flight (beam coords: x in 1-D, x,y else)
            if dim == 1:
                vv = vx * vx
                rv = x * vx
                rr = x * x
            else:
                vv = vx * vx + vy * vy
                rv = x * vx + y * vy
                rr = x * x + y * y
            if vv > 0.0:
                ts = -rv / vv
                if ts < 0.0:
                    ts = 0.0
                elif ts > seg:
                    ts = seg
            else:
                ts = 0.0
            d2min = rr + 2.0 * rv * ts + vv * ts * ts

            if d2min < cut2 and seg > 0.0:
                n_p = int(math.ceil(seg / substep))
                h = seg / n_p
                wq = 0.5 * h
                for p in range(n_p):
                    mid = (p + 0.5) * h
                    for q in range(2):
                        tau = mid + (gl_off if q == 1 else -gl_off) * h
                        d2 = rr + 2.0 * rv * tau + vv * tau * tau
                        t_abs = t + tau
                        w = wq * math.exp(-d2 * inv_a2 - gamma * t_abs)
                        for j in range(n_dw):
                            dw = dws[j]
                            if dw == 0.0:
                                out[i, j] += w
                            else:
                                ph = dw * t_abs
                                out[i, j] += complex(
                                    w * math.cos(ph), -w * math.sin(ph)
                                )

            x += vx * seg
            if dim > 1:
                y += vy * seg
            if bound_kind == 3:
                z += vz * seg
            t += seg
            if killed:
                break

            # --- strong collision: fresh Maxwell velocity
            if dim == 1:
                if have_spare:
                    vx = spare * sigma_v
                    have_spare = False
                else:
                    z0, z1, state = _two_normals(state)
                    vx = z0 * sigma_v
                    spare = z1
                    have_spare = True
            elif dim == 2:
                z0, z1, state = _two_normals(state)
                vx = z0 * sigma_v
                vy = z1 * sigma_v
            else:
                z0, z1, state = _two_normals(state)
                vx = z0 * sigma_v
                vy = z1 * sigma_v
                if have_spare:
                    vz = spare * sigma_v
                    have_spare = False
                else:
                    z2, z3, state = _two_normals(state)
                    vz = z2 * sigma_v
                    spare = z3
                    have_spare = True


def mc_signal(
    params: ModelParams,
    geometry: Geometry,
    delta_omegas,
    cfg: MCConfig,
) -> list[OracleEstimate]:
    """Estimate ``S(dw)`` for every requested detuning from one trajectory set.

    Returns one :class:`OracleEstimate` per entry of ``delta_omegas`` (in
    the given order).  Deterministic for fixed ``(seed, n_trajectories)``
    regardless of thread count.
    """
    if params.gamma <= 0:
        raise ParameterError("mc_signal requires gamma > 0 (finite-time bias bound needs decay)")
    t_max, substep = cfg.resolve(params)
    dws = np.asarray(list(delta_omegas), dtype=float)
    if dws.size == 0:
        raise ConfigError("delta_omegas must not be empty")

    if not geometry.finite_radius and geometry.dim == 3:
        bound_kind = 3  # infinite-radius cylinder: axial kill only
    elif not geometry.finite_radius:
        bound_kind = 0
    else:
        bound_kind = geometry.dim

    n = int(cfg.n_trajectories)
    out = np.zeros((n, dws.size), dtype=np.complex128)
    seed64 = np.uint64(cfg.seed & 0xFFFFFFFFFFFFFFFF)
    _run_trajectories(
        n, seed64, geometry.dim, bound_kind,
        float(geometry.radius), float(geometry.half_height or 0.0),
        params.a, params.v0, params.nu, params.gamma,
        t_max, substep, dws, out,
    )
    out *= params.lambda0  # lam enters the path integrand linearly

    lam_sum = lambda_total(params, geometry)
    bias = lam_sum * params.lambda0 * math.exp(-params.gamma * t_max) / params.gamma
    estimates = []
    for j in range(dws.size):
        vals = out[:, j]
        mean = vals.mean()
        if n > 1:
            var = vals.real.var(ddof=1) + vals.imag.var(ddof=1)
        else:
            var = 0.0
        stderr = lam_sum * math.sqrt(var / n) + bias
        estimates.append(
            OracleEstimate(value=lam_sum * mean, error=stderr, n_effective=n, kind="mc")
        )
    return estimates
