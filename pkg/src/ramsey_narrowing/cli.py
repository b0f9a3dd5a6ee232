"""Command-line front end: configuration, evaluation drivers, validation.

Subcommands
-----------
scales     print the derived scales and regime diagnostics
lineshape  sweep a detuning grid and emit CSV/JSON (+ a PNG next to it)
scan-r     half-width as a function of the boundary radius
mc         run the Monte Carlo oracle on the grid
validate   run the acceptance suite (fast: quadrature; full: + Monte Carlo)

Configuration is a flat ``key=value`` file (or the same keys as JSON);
command-line flags override file values.  ``--dump-config`` prints the
canonical form, which re-parses to an identical run; its SHA-256 is stamped
into every output file, so artifacts are traceable and byte-reproducible.

Exit codes: 0 ok, 1 validation failure, 2 configuration error,
3 numerical divergence / no extractable metric.
"""

import argparse
import dataclasses
import hashlib
import io
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import hwhm, narrowing_report, normalize, scan_r
from .errors import AnalysisError, ConfigError, DivergenceError, ParameterError
from .evaluators import EVALUATOR_NAMES, get_evaluator
from .infinite import ramsey_weight, sample_line_shape
from .model import DEFAULT_PARAMS, Geometry, ModelParams, derive_scales, validate_regime
from .oracle import MCConfig, mc_signal
from .quadrature import QuadratureConfig

__all__ = ["RunConfig", "main", "parse_config_text", "dump_config"]


@dataclass(frozen=True)
class RunConfig:
    """One reproducible run: physics, geometry, grid, numerics, output."""

    nu: float = DEFAULT_PARAMS.nu
    gamma: float = DEFAULT_PARAMS.gamma
    v0: float = DEFAULT_PARAMS.v0
    a: float = DEFAULT_PARAMS.a
    lambda0: float = DEFAULT_PARAMS.lambda0
    dim: int = 1
    radius: float = math.inf
    half_height: float | None = None
    grid_min: float = -10.0
    grid_max: float = 10.0
    grid_count: int = 401
    evaluator: str = "closed_form"
    n_terms: int = 16
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 200
    trajectories: int = 100_000
    seed: int = 0
    t_max: float | None = None
    substep: float | None = None
    stream_partition: int = 4096
    scan_radii: tuple = (2.0, 3.0, 5.0)
    out: str | None = None
    format: str = "csv"
    plot: bool = True

    def params(self) -> ModelParams:
        return ModelParams(nu=self.nu, gamma=self.gamma, v0=self.v0, a=self.a,
                           lambda0=self.lambda0)

    def geometry(self) -> Geometry:
        return Geometry(dim=self.dim, radius=self.radius,
                        half_height=self.half_height if self.dim == 3 else None)

    def quad(self) -> QuadratureConfig:
        return QuadratureConfig(self.rel_tol, self.abs_tol, self.max_subdivisions)

    def mc(self) -> MCConfig:
        return MCConfig(n_trajectories=self.trajectories, seed=self.seed,
                        t_max=self.t_max, substep=self.substep,
                        stream_partition=self.stream_partition)

    def grid(self) -> np.ndarray:
        if self.grid_count < 2:
            raise ConfigError("grid_count must be >= 2")
        if not self.grid_min < self.grid_max:
            raise ConfigError("grid requires grid_min < grid_max")
        return np.linspace(self.grid_min, self.grid_max, self.grid_count)


_FIELD_TYPES = {f.name: f for f in dataclasses.fields(RunConfig)}
_NONE_OK = {"half_height", "t_max", "substep", "out"}


def _parse_value(key: str, raw: str):
    raw = raw.strip()
    if key not in _FIELD_TYPES:
        raise ConfigError(f"unknown config key: {key}")
    if raw.lower() in ("none", "") and key in _NONE_OK:
        return None
    try:
        if key in ("dim", "grid_count", "n_terms", "max_subdivisions",
                   "trajectories", "seed", "stream_partition"):
            return int(raw)
        if key in ("evaluator", "out", "format"):
            return raw
        if key == "plot":
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        if key == "scan_radii":
            return tuple(float(x) for x in raw.split(",") if x.strip())
        if key == "radius" and raw.lower() in ("inf", "infinite"):
            return math.inf
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for config key {key}: {raw!r}") from exc


def parse_config_text(text: str) -> RunConfig:
    """Parse key=value lines or a JSON object into a RunConfig."""
    stripped = text.lstrip()
    values = {}
    if stripped.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON config: {exc}") from exc
        for key, val in payload.items():
            if key not in _FIELD_TYPES:
                raise ConfigError(f"unknown config key: {key}")
            values[key] = _parse_value(key, "none" if val is None else str(val))
    else:
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"line {lineno}: expected key=value, got {line!r}")
            key, _, raw = line.partition("=")
            values[key.strip()] = _parse_value(key.strip(), raw)
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def dump_config(cfg: RunConfig) -> str:
    """Canonical key=value form; re-parses to an identical RunConfig."""
    lines = []
    for f in dataclasses.fields(RunConfig):
        value = getattr(cfg, f.name)
        if value is None:
            rendered = "none"
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, float):
            rendered = "inf" if math.isinf(value) else f"{value:.17g}"
        elif isinstance(value, tuple):
            rendered = ",".join(f"{x:.17g}" for x in value)
        else:
            rendered = str(value)
        lines.append(f"{f.name}={rendered}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: RunConfig) -> str:
    return hashlib.sha256(dump_config(cfg).encode()).hexdigest()[:16]


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write_rows(cfg: RunConfig, path: str | None, header: list[str], rows: list[list]):
    """Emit '#'-commented provenance plus one CSV/JSON table, atomically."""
    buf = io.StringIO()
    if cfg.format == "json":
        payload = {
            "version": __version__,
            "config_sha256": config_hash(cfg),
            "columns": header,
            "rows": [[c if isinstance(c, str) else _fmt(c) for c in row] for row in rows],
        }
        buf.write(json.dumps(payload, indent=2))
        buf.write("\n")
    else:
        buf.write(f"# ramsey-narrowing {__version__}\n")
        buf.write(f"# config sha256: {config_hash(cfg)}\n")
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(c if isinstance(c, str) else _fmt(c) for c in row) + "\n")
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
    else:
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)


def _figure_path(out: str) -> str:
    stem, _ = os.path.splitext(out)
    return stem + ".png"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_scales(cfg: RunConfig, as_json: bool) -> int:
    params, geometry = cfg.params(), cfg.geometry()
    sc = derive_scales(params, geometry, 0.0)
    diagnostics = validate_regime(params, geometry, max(abs(cfg.grid_min), abs(cfg.grid_max)))
    if as_json:
        payload = {
            "params": dataclasses.asdict(params),
            "geometry": {"dim": geometry.dim, "radius": geometry.radius,
                         "half_height": geometry.half_height},
            "scales": {
                "alpha": [sc.alpha.real, sc.alpha.imag],
                "alpha0": [sc.alpha0.real, sc.alpha0.imag],
                "beta2": [sc.beta2.real, sc.beta2.imag],
                "beta": [sc.beta.real, sc.beta.imag],
                "A2": [sc.A2.real, sc.A2.imag],
                "epsilon": [sc.epsilon.real, sc.epsilon.imag],
                "D": [sc.D.real, sc.D.imag],
                "tau_a": sc.tau_a, "tau_nu": sc.tau_nu, "tau_gamma": sc.tau_gamma,
                "tau_d": sc.tau_d, "tau_d_flight": sc.tau_d_flight,
                "mean_v2": sc.mean_v2, "w0": sc.w0,
            },
            "regime_warnings": [dataclasses.asdict(d) for d in diagnostics],
        }
        print(json.dumps(payload, indent=2, allow_nan=True))
        return 0
    print(f"parameters: nu={params.nu:g} gamma={params.gamma:g} v0={params.v0:g} "
          f"a={params.a:g} lambda0={params.lambda0:g}")
    radius = "inf" if not geometry.finite_radius else f"{geometry.radius:g}"
    print(f"geometry:   dim={geometry.dim} radius={radius}"
          + (f" half_height={geometry.half_height:g}" if geometry.dim == 3 else ""))
    print("derived scales at zero detuning:")
    print(f"  alpha   = {sc.alpha:.10g}")
    print(f"  alpha0  = {sc.alpha0:.10g}")
    print(f"  beta^2  = {sc.beta2:.10g}   beta = {sc.beta:.10g}")
    print(f"  A^2     = {sc.A2:.10g}   epsilon = {sc.epsilon:.10g}")
    print(f"  D       = {sc.D:.10g}")
    print(f"  tau_a   = {sc.tau_a:.10g}   tau_nu = {sc.tau_nu:.10g}   "
          f"tau_gamma = {sc.tau_gamma:.10g}")
    print(f"  tau_d   = {sc.tau_d:.10g}  (a^2/|D|)")
    print(f"  tau_d'  = {sc.tau_d_flight:.10g}  (flight-based nu tau_a^2)")
    print(f"  <v^2>   = {sc.mean_v2:.10g}   W0 = {sc.w0:.10g}")
    if diagnostics:
        print("regime warnings:")
        for d in diagnostics:
            print(f"  [{d.name}] {d.message} (requires {d.requirement})")
    else:
        print("regime warnings: none")
    return 0


def cmd_lineshape(cfg: RunConfig, dump_weights: bool) -> int:
    params, geometry = cfg.params(), cfg.geometry()
    fn, tag = get_evaluator(cfg.evaluator, params, geometry, cfg.quad(), cfg.n_terms)
    grid = cfg.grid()
    line = sample_line_shape(fn, tag, params, geometry, grid)
    normalized = normalize(line)
    rows = [
        [s.delta_omega, s.value.real, s.value.imag, abs(s.value), ns.value.real, s.evaluator]
        for s, ns in zip(line.samples, normalized.samples)
    ]
    header = ["delta_omega", "re_s", "im_s", "abs_s", "re_s_normalized", "evaluator"]
    _write_rows(cfg, cfg.out, header, rows)

    if geometry.dim == 3 and cfg.out:
        from .finite import s_r_3d

        result = s_r_3d(params, 0.0, geometry.radius, geometry.half_height,
                        cfg.n_terms, cfg.quad())
        mode_rows = [
            [t.mode.m, t.mode.k_m, t.mode.beta_m.real, t.mode.beta_m.imag,
             t.value.real, t.value.imag]
            for t in result.terms
        ]
        stem, ext = os.path.splitext(cfg.out)
        _write_rows(cfg, stem + ".modes" + (ext or ".csv"),
                    ["m", "k_m", "re_beta_m", "im_beta_m", "re_term", "im_term"], mode_rows)

    if dump_weights and cfg.out:
        if cfg.evaluator != "ramsey_integral":
            raise ConfigError("--dump-weights applies to the ramsey_integral evaluator")
        sc = derive_scales(params, geometry, 0.0)
        taus = np.geomspace(1e-3 * sc.tau_d, 50.0 * max(sc.tau_d, 1.0 / params.gamma), 200)
        wrows = []
        for tau in taus:
            w = ramsey_weight(min(geometry.dim, 2), params, 0.0, tau)
            wrows.append([tau, w.real, w.imag])
        stem, ext = os.path.splitext(cfg.out)
        _write_rows(cfg, stem + ".weights" + (ext or ".csv"),
                    ["tau", "re_weight", "im_weight"], wrows)

    if cfg.out and cfg.plot:
        from .plots import save_lineshape_figure

        save_lineshape_figure(line, _figure_path(cfg.out))
    return 0


def cmd_scan_r(cfg: RunConfig) -> int:
    if not cfg.scan_radii:
        raise ConfigError("scan_radii is empty")
    params = cfg.params()
    result = scan_r(cfg.evaluator if cfg.evaluator != "closed_form" else "closed_form",
                    params, cfg.dim, cfg.scan_radii,
                    l=cfg.half_height if cfg.dim == 3 else None, quad=cfg.quad())
    rows = [
        [R, res.hwhm, res.hwhm / result.infinite.hwhm]
        for R, res in zip(result.radii, result.results)
    ]
    rows.append(["inf", result.infinite.hwhm, 1.0])
    _write_rows(cfg, cfg.out, ["R", "hwhm", "hwhm_over_infinite"], rows)
    if cfg.out and cfg.plot:
        from .plots import save_scan_figure

        save_scan_figure(result, _figure_path(cfg.out))
    return 0


def cmd_mc(cfg: RunConfig) -> int:
    params, geometry = cfg.params(), cfg.geometry()
    grid = cfg.grid()
    estimates = mc_signal(params, geometry, grid, cfg.mc())
    rows = [
        [dw, est.value.real, est.value.imag, est.std_error, est.n_effective]
        for dw, est in zip(grid, estimates)
    ]
    _write_rows(cfg, cfg.out, ["delta_omega", "re_s", "im_s", "std_error", "n_effective"], rows)
    return 0


def cmd_validate(cfg: RunConfig, level: str, as_json: bool, beta2_convention: str) -> int:
    from .acceptance import run_validation

    report = run_validation(level=level, params=cfg.params(),
                            n_trajectories=cfg.trajectories or 1_000_000,
                            seed=cfg.seed or 20240901,
                            beta2_convention=beta2_convention)
    print(report.as_json() if as_json else report.as_text())
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramsey-narrowing",
        description="Diffusion-induced Ramsey narrowing line shapes (strong-collision model)",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", help="key=value or JSON config file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--seed", type=int)
        p.add_argument("--trajectories", type=int)
        p.add_argument("--grid", help="detuning grid MIN:MAX:COUNT")
        p.add_argument("--dim", type=int, choices=(1, 2, 3))
        p.add_argument("--radius", help="boundary radius or 'inf'")
        p.add_argument("--half-height", dest="half_height", type=float)
        p.add_argument("--evaluator", choices=EVALUATOR_NAMES)
        p.add_argument("--n-terms", dest="n_terms", type=int)
        p.add_argument("--no-plot", action="store_true", help="skip the companion figure")
        p.add_argument("--dump-config", action="store_true",
                       help="print the canonical config and exit")

    p_scales = sub.add_parser("scales", help="derived scales and regime diagnostics")
    add_common(p_scales)

    p_line = sub.add_parser("lineshape", help="sweep a detuning grid")
    add_common(p_line)
    p_line.add_argument("--dump-weights", action="store_true",
                        help="also dump the ramsey-integral weight function")

    p_scan = sub.add_parser("scan-r", help="half-width vs boundary radius")
    add_common(p_scan)
    p_scan.add_argument("--radii", help="comma-separated radii (overrides scan_radii)")

    p_mc = sub.add_parser("mc", help="Monte Carlo oracle on the grid")
    add_common(p_mc)

    p_val = sub.add_parser("validate", help="run the acceptance suite")
    add_common(p_val)
    p_val.add_argument("--level", choices=("fast", "full"), default="fast")
    p_val.add_argument("--force-beta2", choices=("adopted", "half"),
                       default="adopted", help=argparse.SUPPRESS)
    return parser


def _config_from_args(args) -> RunConfig:
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = parse_config_text(fh.read())
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {args.config}") from exc
    else:
        cfg = RunConfig()
    overrides = {}
    for attr in ("out", "seed", "trajectories", "dim", "half_height", "evaluator", "n_terms"):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[attr] = value
    if getattr(args, "radius", None) is not None:
        overrides["radius"] = _parse_value("radius", args.radius)
    if getattr(args, "grid", None) is not None:
        parts = args.grid.split(":")
        if len(parts) != 3:
            raise ConfigError(f"--grid expects MIN:MAX:COUNT, got {args.grid!r}")
        overrides["grid_min"] = float(parts[0])
        overrides["grid_max"] = float(parts[1])
        overrides["grid_count"] = int(parts[2])
    if getattr(args, "radii", None):
        overrides["scan_radii"] = tuple(float(x) for x in args.radii.split(","))
    if getattr(args, "json", False):
        overrides["format"] = "json"
    if getattr(args, "no_plot", False):
        overrides["plot"] = False
    try:
        return dataclasses.replace(cfg, **overrides)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def main(argv=None) -> int:
    threads = os.environ.get("RAMSEY_NARROWING_THREADS")
    if threads:
        import numba

        numba.set_num_threads(max(1, min(int(threads), numba.config.NUMBA_NUM_THREADS)))

    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        if getattr(args, "dump_config", False):
            sys.stdout.write(dump_config(cfg))
            return 0
        if args.command == "scales":
            return cmd_scales(cfg, args.json)
        if args.command == "lineshape":
            return cmd_lineshape(cfg, args.dump_weights)
        if args.command == "scan-r":
            return cmd_scan_r(cfg)
        if args.command == "mc":
            return cmd_mc(cfg)
        if args.command == "validate":
            return cmd_validate(cfg, args.level, args.json, args.force_beta2)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, ParameterError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (DivergenceError, AnalysisError, OverflowError) as exc:
        print(f"numerical divergence: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
