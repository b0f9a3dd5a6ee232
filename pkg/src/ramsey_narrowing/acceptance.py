"""The validation suite: every acceptance criterion as a library check.

Each ``ac*`` function runs one criterion against the independent oracles
and returns :class:`ArbitrationItem` records; :func:`run_validation`
assembles the full report.  The same functions back the command-line
``validate`` subcommand and the acceptance test module, so there is a
single source of truth for what passes.

Criteria (fast level runs 1-3 and 6-8 minus Monte Carlo; full adds 4-5):

* AC-1  truncated-kernel Fourier oracle == closed forms to 1e-8, and the
        screening-convention arbitration (adopted wins by >= 10x).
* AC-2  exact-kernel gap <= 2e-2 at nu=1000 and ~nu^-2 scaling.
* AC-3  finite -> infinite convergence at the e^{-2 beta R} rate.
* AC-4  Monte Carlo vs Green evaluators in bounded regions at R = 2a,
        including the 2-D denominator arbitration.
* AC-5  Monte Carlo vs the cylinder mode series (global prefactor measured
        and reported, never applied).
* AC-6  Lorentzian-limit widths in a no-return regime.
* AC-7  qualitative claims: 2-D broader than 1-D; central narrowing.
* AC-8  property suites: conjugation symmetry, kernel moments, Wronskian
        and reflection identities, Monte Carlo bit-reproducibility.
"""

import cmath
import math

import numba
import numpy as np

from . import specfun
from .analysis import hwhm
from .errors import ParameterError
from .evaluators import get_evaluator
from .finite import s_r_1d, s_r_2d, s_r_3d, script_i
from .infinite import (
    kernel_moments,
    s_inf_1d,
    s_inf_2d,
    s_inf_lorentz_limit,
    s_inf_ramsey,
    s_inf_screened,
    lorentz_width,
)
from .model import DEFAULT_PARAMS, Geometry, ModelParams, derive_scales
from .oracle import MCConfig, arbitrate, mc_signal, s_inf_fourier
from .oracle.arbitrate import ArbitrationItem, ValidationReport
from .quadrature import QuadratureConfig

__all__ = ["run_validation", "FAST_LEVEL", "FULL_LEVEL"]

FAST_LEVEL = "fast"
FULL_LEVEL = "full"

_QUAD = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-15)
_AC1_DETUNINGS = (0.0, 1.0, -1.0, 3.0, -3.0, 10.0, -10.0)


def _rel(x: complex, ref: complex) -> float:
    return abs(x - ref) / abs(ref)


# ---------------------------------------------------------------------------
# AC-1: closed-form identity and screening-convention arbitration
# ---------------------------------------------------------------------------


def ac1_closed_form_identity(
    params: ModelParams = DEFAULT_PARAMS,
    beta2_convention: str = "adopted",
) -> list[ArbitrationItem]:
    items = []
    worst = 0.0
    for dim, closed in ((1, s_inf_1d), (2, s_inf_2d)):
        for dw in _AC1_DETUNINGS:
            oracle = s_inf_fourier(dim, params, dw, "truncated", _QUAD).value
            worst = max(worst, _rel(closed(params, dw), oracle))
    items.append(
        ArbitrationItem(
            name="AC-1 closed-form identity",
            passed=worst <= 1e-8,
            detail="truncated-kernel oracle vs erfcx/E1 closed forms, both dims, 7 detunings",
            measured={"max_rel_err": worst, "tolerance": 1e-8},
        )
    )

    # Arbitration: which screening convention reproduces the truncated kernel.
    other = {"adopted": "half", "half": "adopted"}[beta2_convention]
    res_main = 0.0
    res_other = 0.0
    for dim in (1, 2):
        for dw in (0.0, 3.0):
            oracle = s_inf_fourier(dim, params, dw, "truncated", _QUAD).value
            res_main = max(res_main, _rel(s_inf_screened(params, dw, dim, beta2_convention), oracle))
            res_other = max(res_other, _rel(s_inf_screened(params, dw, dim, other), oracle))
    items.append(
        ArbitrationItem(
            name="AC-1 beta2-convention arbitration",
            passed=res_main * 10.0 <= res_other,
            detail=f"adopted '{beta2_convention}' must beat '{other}' by >= 10x in residual",
            measured={"residual_adopted": res_main, "residual_alternative": res_other},
        )
    )
    return items


# ---------------------------------------------------------------------------
# AC-2: diffusion-approximation scaling
# ---------------------------------------------------------------------------


def ac2_diffusion_scaling(params: ModelParams = DEFAULT_PARAMS) -> list[ArbitrationItem]:
    import dataclasses

    items = []
    gaps = {}
    nus = (1e3, 3e3, 1e4)
    for dim, closed in ((1, s_inf_1d), (2, s_inf_2d)):
        for nu in nus:
            p = dataclasses.replace(params, nu=nu)
            exact = s_inf_fourier(dim, p, 0.0, "exact", _QUAD).value
            gaps[(dim, nu)] = _rel(exact, closed(p, 0.0))
    gap_at_base = max(gaps[(1, 1e3)], gaps[(2, 1e3)])
    items.append(
        ArbitrationItem(
            name="AC-2 exact-kernel gap",
            passed=gap_at_base <= 2e-2,
            detail="exact Fourier kernel vs closed forms at nu = 1000",
            measured={"gap_1d": gaps[(1, 1e3)], "gap_2d": gaps[(2, 1e3)], "tolerance": 2e-2},
        )
    )
    ln_nu = np.log(nus)
    slopes = {}
    for dim in (1, 2):
        ln_gap = np.log([gaps[(dim, nu)] for nu in nus])
        slopes[dim] = float(np.polyfit(ln_nu, ln_gap, 1)[0])
    ok = all(abs(s + 2.0) <= 0.3 for s in slopes.values())
    items.append(
        ArbitrationItem(
            name="AC-2 moment-truncation scaling",
            passed=ok,
            detail="log-log slope of the gap vs nu must be -2 +/- 0.3",
            measured={"slope_1d": slopes[1], "slope_2d": slopes[2]},
        )
    )
    return items


# ---------------------------------------------------------------------------
# AC-3: finite -> infinite convergence
# ---------------------------------------------------------------------------


def ac3_finite_convergence(params: ModelParams = DEFAULT_PARAMS) -> list[ArbitrationItem]:
    items = []
    a = params.a
    finite = {1: s_r_1d, 2: s_r_2d}
    closed = {1: s_inf_1d, 2: s_inf_2d}
    for dim in (1, 2):
        gap = _rel(finite[dim](params, 0.0, 10.0 * a, _QUAD), closed[dim](params, 0.0))
        items.append(
            ArbitrationItem(
                name=f"AC-3 convergence at R=10a ({dim}D)",
                passed=gap <= 1e-3,
                detail="bounded evaluator vs infinite closed form at zero detuning",
                measured={"rel_gap": gap, "tolerance": 1e-3},
            )
        )
    beta = derive_scales(params, Geometry(dim=1), 0.0).beta
    radii = np.array([4.0, 5.0, 6.0, 7.0, 8.0]) * a
    for dim in (1, 2):
        ref = s_inf_screened(params, 0.0, dim)
        resid = [abs(finite[dim](params, 0.0, R, _QUAD) - ref) for R in radii]
        slope = float(np.polyfit(radii, np.log(resid), 1)[0])
        expected = -2.0 * beta.real
        items.append(
            ArbitrationItem(
                name=f"AC-3 boundary-correction rate ({dim}D)",
                passed=abs(slope - expected) <= 0.2 * abs(expected),
                detail="log-linear slope of |S_R - S_inf| vs R within 20% of -2 Re beta",
                measured={"slope": slope, "minus_two_re_beta": expected},
            )
        )
    return items


# ---------------------------------------------------------------------------
# AC-4: Monte Carlo arbitration in bounded regions
# ---------------------------------------------------------------------------


def _s_r_2d_k0_denominator(params, delta_omega, R, quad) -> complex:
    """The rejected 2-D compact form: same bracket, divided by K_0(beta R)
    with prefactor 2 beta^2/alpha0.  Exists only so the Monte Carlo oracle
    can demonstrate it fails."""
    from .quadrature import quad_complex
    from .specfun import bessel_i, bessel_k

    sc = derive_scales(params, Geometry(dim=2), delta_omega)
    beta, alpha0, a = sc.beta, sc.alpha0, params.a
    i_R, k_R = bessel_i(0, beta * R), bessel_k(0, beta * R)

    def integrand(r):
        if r == 0.0:
            return 0.0 + 0.0j
        bracket = bessel_k(0, beta * r) * i_R - k_R * bessel_i(0, beta * r)
        return r * math.exp(-((r / a) ** 2)) * bracket / k_R * script_i(r, beta, a, quad)

    value, _ = quad_complex(integrand, 0.0, R, quad, points=[0.1 * a])
    return 2.0 * beta**2 * params.lambda0**2 / alpha0 * value


def ac4_mc_finite(
    params: ModelParams = DEFAULT_PARAMS,
    n_trajectories: int = 1_000_000,
    seed: int = 20240901,
) -> list[ArbitrationItem]:
    items = []
    R = 2.0 * params.a
    dws = (0.0, 2.0)
    cfg = MCConfig(n_trajectories=n_trajectories, seed=seed)
    for dim, evaluator in ((1, s_r_1d), (2, s_r_2d)):
        geometry = Geometry(dim=dim, radius=R)
        estimates = mc_signal(params, geometry, dws, cfg)
        worst_sigma = 0.0
        max_err_rel = 0.0
        for dw, est in zip(dws, estimates):
            ref = evaluator(params, dw, R, _QUAD)
            worst_sigma = max(worst_sigma, abs(est.value - ref) / est.std_error)
            max_err_rel = max(max_err_rel, est.std_error / abs(ref))
        items.append(
            ArbitrationItem(
                name=f"AC-4 MC vs Green evaluator ({dim}D, R=2a)",
                passed=worst_sigma <= 3.0 and max_err_rel <= 0.01,
                detail=f"n={n_trajectories}, detunings {dws}; agreement within 3 sigma, sigma <= 1%",
                measured={"worst_deviation_sigma": worst_sigma, "max_rel_std_error": max_err_rel},
            )
        )
        if dim == 2:
            est0 = estimates[0]
            wrong = _s_r_2d_k0_denominator(params, 0.0, R, _QUAD)
            right = s_r_2d(params, 0.0, R, _QUAD)
            dev_right = abs(est0.value - right) / est0.std_error
            dev_wrong = abs(est0.value - wrong) / est0.std_error
            items.append(
                ArbitrationItem(
                    name="AC-4 2D denominator arbitration",
                    passed=dev_right <= 3.0 and dev_wrong > 3.0,
                    detail="I0(beta R) Green construction must pass where the K0 variant fails",
                    measured={"deviation_i0_sigma": dev_right, "deviation_k0_sigma": dev_wrong},
                )
            )
    return items


# ---------------------------------------------------------------------------
# AC-5: cylinder mode series vs Monte Carlo
# ---------------------------------------------------------------------------

#: Global factor the re-derived axial-mode overlap produces on top of the
#: printed series weight (kept verbatim in s_r_3d; measured, not applied).
DERIVED_3D_PREFACTOR = 8.0


def ac5_mc_cylinder(
    params: ModelParams = DEFAULT_PARAMS,
    n_trajectories: int = 1_000_000,
    seed: int = 20240902,
) -> list[ArbitrationItem]:
    items = []
    R, l = 3.0 * params.a, 2.0 * params.a
    dws = (0.0, 2.0)
    geometry = Geometry(dim=3, radius=R, half_height=l)
    cfg = MCConfig(n_trajectories=n_trajectories, seed=seed)
    estimates = mc_signal(params, geometry, dws, cfg)
    series = {dw: s_r_3d(params, dw, R, l, n_terms=12, quad=_QUAD) for dw in dws}

    prefactor = estimates[0].value.real / series[0.0].value.real
    dev = abs(estimates[1].value - prefactor * series[2.0].value) / estimates[1].std_error
    items.append(
        ArbitrationItem(
            name="AC-5 cylinder series vs MC",
            passed=dev <= 3.0,
            detail=(
                "series matches MC within 3 sigma after one global prefactor "
                f"(fitted at zero detuning, checked at {dws[1]}); prefactor reported, not applied"
            ),
            measured={
                "global_prefactor": prefactor,
                "derived_prefactor": DERIVED_3D_PREFACTOR,
                "cross_check_deviation_sigma": dev,
            },
        )
    )
    terms = series[0.0].terms
    first_fraction = abs(terms[0].value) / abs(series[0.0].value)
    items.append(
        ArbitrationItem(
            name="AC-5 first-mode dominance",
            passed=first_fraction >= 0.8,
            detail="lowest axial mode must carry >= 80% of the converged sum (l=2a)",
            measured={"first_mode_fraction": first_fraction, "n_terms_used": len(terms)},
        )
    )
    return items


# ---------------------------------------------------------------------------
# AC-6: Lorentzian limits
# ---------------------------------------------------------------------------

#: No-return regime for AC-6: gamma tau_d >> 1 with every kinetic
#: inequality strictly satisfied (tau_a < tau_gamma needs gamma < v0/a).
LORENTZ_REGIME = ModelParams(nu=1e5, gamma=20.0, v0=100.0, a=1.0, lambda0=1.0)


def ac6_lorentz_limits() -> list[ArbitrationItem]:
    items = []
    p = LORENTZ_REGIME
    flight = p.nu * (p.a / p.v0) ** 2
    for dim, closed in ((1, s_inf_1d), (2, s_inf_2d)):
        geometry = Geometry(dim=dim)
        result = hwhm(lambda dw: closed(p, dw), p, geometry)
        predicted = p.gamma + lorentz_width(dim, p)
        rel = abs(result.hwhm - predicted) / predicted
        items.append(
            ArbitrationItem(
                name=f"AC-6 Lorentzian-limit width ({dim}D)",
                passed=rel <= 0.05,
                detail=f"gamma*nu*tau_a^2 = {p.gamma * flight:g}; hwhm within 5% of gamma + loss",
                measured={"hwhm": result.hwhm, "predicted": predicted, "rel_dev": rel},
            )
        )
    return items


# ---------------------------------------------------------------------------
# AC-7: qualitative claims
# ---------------------------------------------------------------------------


def ac7_qualitative(params: ModelParams = DEFAULT_PARAMS) -> list[ArbitrationItem]:
    w1 = hwhm(lambda dw: s_inf_1d(params, dw), params, Geometry(dim=1)).hwhm
    w2 = hwhm(lambda dw: s_inf_2d(params, dw), params, Geometry(dim=2)).hwhm
    no_return = params.gamma + lorentz_width(1, params)
    return [
        ArbitrationItem(
            name="AC-7 2D broader than 1D",
            passed=w2 > w1,
            detail="two-dimensional escape loses more atoms, broadening the line",
            measured={"hwhm_1d": w1, "hwhm_2d": w2},
        ),
        ArbitrationItem(
            name="AC-7 central Ramsey narrowing",
            passed=w1 < no_return,
            detail="measured width must undercut the no-return Lorentzian width",
            measured={"hwhm_1d": w1, "no_return_width": no_return},
        ),
    ]


# ---------------------------------------------------------------------------
# AC-8: property suites
# ---------------------------------------------------------------------------


def _conjugation_worst(params: ModelParams) -> float:
    a = params.a
    worst = 0.0
    evaluators = [
        lambda dw: s_inf_1d(params, dw),
        lambda dw: s_inf_2d(params, dw),
        lambda dw: s_inf_ramsey(1, params, dw, _QUAD),
        lambda dw: s_inf_ramsey(2, params, dw, _QUAD),
        lambda dw: s_inf_lorentz_limit(1, params, dw),
        lambda dw: s_inf_fourier(1, params, dw, "exact", _QUAD).value,
        lambda dw: s_inf_fourier(2, params, dw, "truncated", _QUAD).value,
        lambda dw: s_r_1d(params, dw, 2.0 * a, _QUAD),
        lambda dw: s_r_2d(params, dw, 2.0 * a, _QUAD),
        lambda dw: s_r_3d(params, dw, 3.0 * a, 2.0 * a, 8, _QUAD).value,
    ]
    import warnings as _warnings

    for fn in evaluators:
        for dw in (0.7, 3.3):
            with _warnings.catch_warnings():
                _warnings.simplefilter("ignore")
                worst = max(worst, _rel(fn(-dw), fn(dw).conjugate()))
    return worst


def _wronskian_worst() -> float:
    worst = 0.0
    for mag in np.geomspace(1e-3, 1e3, 13):
        for arg in (-1.2, -0.5, 0.0, 0.7, 1.3):
            z = mag * cmath.exp(1j * arg)
            w = specfun.bessel_i(0, z) * specfun.bessel_k(1, z) + specfun.bessel_i(
                1, z
            ) * specfun.bessel_k(0, z)
            worst = max(worst, abs(w - 1.0 / z) * abs(z))
    return worst


def _schwarz_worst() -> float:
    rng = np.random.default_rng(7)
    pts = rng.uniform(0.1, 5.0, size=(12, 2))
    worst = 0.0
    for re, im in pts:
        z = complex(re, im)
        for f in (specfun.erfcx, specfun.e1, specfun.e1_scaled,
                  lambda w: specfun.bessel_i(0, w), lambda w: specfun.bessel_k(0, w)):
            worst = max(worst, _rel(f(z.conjugate()), f(z).conjugate()))
    return worst


def ac8_properties(
    params: ModelParams = DEFAULT_PARAMS, with_mc: bool = True
) -> list[ArbitrationItem]:
    items = []
    worst_conj = _conjugation_worst(params)
    items.append(
        ArbitrationItem(
            name="AC-8 conjugation symmetry",
            passed=worst_conj <= 1e-10,
            detail="S(-dw) = conj S(dw) for every evaluator",
            measured={"max_rel_err": worst_conj, "tolerance": 1e-10},
        )
    )

    alpha = complex(params.nu + params.gamma, 0.0)
    worst_m = 0.0
    moment_quad = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-16)
    for dim in (1, 2, 3):
        m0, m2 = kernel_moments(params, 0.0, dim, moment_quad)
        worst_m = max(worst_m, _rel(m0, 1.0 / alpha))
        worst_m = max(worst_m, _rel(m2, params.v0**2 / alpha**3))
    items.append(
        ArbitrationItem(
            name="AC-8 kernel moments",
            passed=worst_m <= 1e-8,
            detail="int F = 1/alpha and per-axis second moment v0^2/alpha^3 "
            "(= 2<v^2>/(3 alpha^3) in 3-D), dims 1-3",
            measured={"max_rel_err": worst_m, "tolerance": 1e-8},
        )
    )

    worst_w = _wronskian_worst()
    worst_s = _schwarz_worst()
    items.append(
        ArbitrationItem(
            name="AC-8 special-function identities",
            passed=worst_w <= 1e-10 and worst_s <= 1e-10,
            detail="Wronskian I0 K1 + I1 K0 = 1/z and Schwarz reflection",
            measured={"wronskian_worst": worst_w, "schwarz_worst": worst_s},
        )
    )

    if with_mc:
        geometry = Geometry(dim=1, radius=2.0 * params.a)
        cfg = MCConfig(n_trajectories=2000, seed=4242)
        max_threads = numba.get_num_threads()
        runs = []
        for n_threads in sorted({1, max_threads}):
            numba.set_num_threads(n_threads)
            runs.append(mc_signal(params, geometry, (0.0, 1.5), cfg))
        numba.set_num_threads(max_threads)
        identical = all(
            r.value == runs[0][j].value and r.error == runs[0][j].error
            for run in runs
            for j, r in enumerate(run)
        )
        items.append(
            ArbitrationItem(
                name="AC-8 MC bit-reproducibility",
                passed=identical,
                detail=f"identical estimates for thread counts {sorted({1, max_threads})}",
                measured={"thread_counts_checked": float(len(runs))},
            )
        )
    return items


# ---------------------------------------------------------------------------
# informational items
# ---------------------------------------------------------------------------


def informational_items(params: ModelParams = DEFAULT_PARAMS) -> list[ArbitrationItem]:
    sc = derive_scales(params, Geometry(dim=1), 0.0)
    items = [
        ArbitrationItem(
            name="diffusion-time conventions",
            passed=True,
            informational=True,
            detail="a^2/|D| vs the flight-based nu tau_a^2 (both are printed, neither is canonical)",
            measured={"tau_d": sc.tau_d, "tau_d_flight": sc.tau_d_flight},
        ),
        ArbitrationItem(
            name="epsilon vs A at zero detuning",
            passed=True,
            informational=True,
            detail="with the adopted screening convention, eps = A sqrt(alpha/(2 nu)) ~ A/sqrt(2)",
            measured={"abs_epsilon": abs(sc.epsilon), "abs_A": abs(sc.A)},
        ),
    ]
    # measured constant of the 2-D boundary correction (printed form ~ half)
    ref = s_inf_screened(params, 0.0, 2)
    R = 5.0 * params.a
    resid = s_r_2d(params, 0.0, R, _QUAD) - ref
    import warnings as _warnings

    from .finite import s_r_2d_correction

    with _warnings.catch_warnings():
        _warnings.simplefilter("ignore")
        pred = s_r_2d_correction(params, 0.0, R) - ref
    items.append(
        ArbitrationItem(
            name="2D correction constant",
            passed=True,
            informational=True,
            detail="evaluator residual over printed asymptotic term at R=5a (within factor 2)",
            measured={"residual_over_printed": abs(resid) / abs(pred)},
        )
    )
    return items


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------


def run_validation(
    level: str = FAST_LEVEL,
    params: ModelParams = DEFAULT_PARAMS,
    n_trajectories: int = 1_000_000,
    seed: int = 20240901,
    beta2_convention: str = "adopted",
) -> ValidationReport:
    """Run the acceptance suite and return the arbitration report.

    ``level="fast"`` runs everything that needs only quadrature;
    ``level="full"`` adds the Monte Carlo criteria (minutes, not seconds).
    ``beta2_convention`` exists for the negative control: forcing "half"
    must fail AC-1.
    """
    if level not in (FAST_LEVEL, FULL_LEVEL):
        raise ParameterError(f"unknown validation level {level!r}")
    items = []
    items += ac1_closed_form_identity(params, beta2_convention)
    items += ac2_diffusion_scaling(params)
    items += ac3_finite_convergence(params)
    if level == FULL_LEVEL:
        items += ac4_mc_finite(params, n_trajectories, seed)
        items += ac5_mc_cylinder(params, n_trajectories, seed + 1)
    items += ac6_lorentz_limits()
    items += ac7_qualitative(params)
    items += ac8_properties(params, with_mc=(level == FULL_LEVEL))
    items += informational_items(params)
    return arbitrate(items)
