"""Command-line front end: parse, dispatch, emit CSV/JSON artifacts.

Every number is printed with 17 significant digits and no timestamps, so a
fixed configuration reproduces its output byte for byte.  Exit codes: 0 on
success, 1 on validation problems (every violated constraint is listed), 2 on
numerical failures; both failure kinds put one machine-readable JSON record
on stderr.
"""

import argparse
import csv
import json
import math
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import meanfield2d, onedim, principal
from .errors import NumericalError
from .manifolds import (
    Hyperbolic,
    Plane,
    Sphere,
    Torus,
    dump_spectral_basis_csv,
    heat_kernel,
    heat_trace,
    spectral_basis,
)
from .renorm import BoundState, Coupling, beta, flow, flow_ode

SCHEMA_VERSION = 1

COMMANDS = (
    "heat", "twobody", "flow", "rg", "meanfield2d", "onedim",
    "nbody-bound", "hyperbolic", "divergence",
)


def _fmt(x):
    return format(float(x), ".17g")


class ConfigError(ValueError):
    """Invalid configuration; message lists every violated constraint."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class _Parser(argparse.ArgumentParser):
    # argparse exits on error; surface the message as a validation failure
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # accept scientific notation in negative numbers (e.g. --emin -1e6)
        self._negative_number_matcher = re.compile(
            r"^-(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$"
        )

    def error(self, message):
        raise ConfigError([message])


@dataclass
class RunConfig:
    command: str
    manifold: object = None
    scheme: object = None
    output: str = None
    spectrum_out: str = None
    fit_out: str = None
    t_values: list = field(default_factory=list)
    d_values: list = field(default_factory=list)
    trace: bool = False
    e_min: float = None
    e_max: float = None
    points: int = None
    modes: int = 1
    n_min: int = None
    n_max: int = None
    n_step: int = None
    n_values: list = field(default_factory=list)
    lam: float = None
    gamma: float = None
    use_ode: bool = False
    lambda_r: float = None
    aubin: float = None
    mu2: float = None
    radius: float = None
    printed_shift: bool = False
    energy: float = None
    eps_values: list = field(default_factory=list)
    profile: str = None
    psi_profile: str = None
    n_single: int = None
    root_tol: float = 1e-10
    quad_tol: float = None


def _build_parser():
    parser = _Parser(prog="heatbind", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with flat option defaults; flags override")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add_manifold(p, variants):
        p.add_argument("--manifold", choices=variants)
        p.add_argument("--length", type=float, help="torus side L")
        p.add_argument("--radius", type=float, help="sphere or hyperbolic radius R")

    def add_scheme(p):
        p.add_argument("--mu2", type=float, help="bound-state scheme scale mu^2")
        p.add_argument("--scale", type=float, help="coupling scheme scale M")
        p.add_argument("--lambda-r", dest="lambda_r", type=float,
                       help="renormalized coupling at scale M")

    def add_tols(p):
        p.add_argument("--root-tol", dest="root_tol", type=float)
        p.add_argument("--quad-tol", dest="quad_tol", type=float)

    p = sub.add_parser("heat", parents=[common], description="kernel or trace samples, spectrum dumps")
    add_manifold(p, ("plane", "torus", "sphere", "hyperbolic"))
    p.add_argument("--t", dest="t_values", type=float, nargs="+")
    p.add_argument("--d", dest="d_values", type=float, nargs="+")
    p.add_argument("--trace", action="store_true", help="emit the heat trace instead")
    p.add_argument("--spectrum-out", dest="spectrum_out")
    p.add_argument("--output")

    p = sub.add_parser("twobody", parents=[common], description="two-body bound-state solve")
    add_manifold(p, ("plane", "torus", "sphere"))
    add_scheme(p)
    add_tols(p)
    p.add_argument("--output")

    p = sub.add_parser("flow", parents=[common], description="eigenvalue flow curves over an energy grid")
    add_manifold(p, ("plane", "torus", "sphere"))
    add_scheme(p)
    add_tols(p)
    p.add_argument("--emin", dest="e_min", type=float)
    p.add_argument("--emax", dest="e_max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--modes", type=int, default=1)
    p.add_argument("--output")

    p = sub.add_parser("rg", parents=[common], description="renormalization-group coupling flow")
    p.add_argument("--lambda", dest="lam", type=float, help="coupling to flow")
    p.add_argument("--gamma", type=float, help="scale ratio")
    p.add_argument("--ode", dest="use_ode", action="store_true",
                   help="integrate the beta function instead of the closed form")
    p.add_argument("--output")

    p = sub.add_parser("meanfield2d", parents=[common], description="mean-field growth sweep or residual scan")
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--n-step", dest="n_step", type=int)
    p.add_argument("--aubin", type=float)
    p.add_argument("--mu2", type=float)
    p.add_argument("--profile", help="two-column CSV (coordinate, value) radial profile")
    p.add_argument("--psi-profile", dest="psi_profile")
    p.add_argument("--n", dest="n_single", type=int)
    p.add_argument("--emin", dest="e_min", type=float)
    p.add_argument("--emax", dest="e_max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--output")

    p = sub.add_parser("onedim", parents=[common], description="exact / Hartree / mean-field comparison table")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--n", dest="n_values", type=int, nargs="+")
    p.add_argument("--output")

    p = sub.add_parser("nbody-bound", parents=[common], description="n-body variational upper bound")
    add_manifold(p, ("torus", "sphere"))
    p.add_argument("--mu2", type=float)
    p.add_argument("--n", dest="n_values", type=int, nargs="+")
    p.add_argument("--output")

    p = sub.add_parser("hyperbolic", parents=[common], description="hyperbolic-plane bound-state estimate")
    p.add_argument("--radius", type=float)
    p.add_argument("--mu2", type=float)
    p.add_argument("--printed-shift", dest="printed_shift", action="store_true",
                   help="use the R^2/2 shift variant instead of 1/(2R^2)")
    p.add_argument("--output")

    p = sub.add_parser("divergence", parents=[common], description="regularized short-time divergence scan")
    add_manifold(p, ("torus", "sphere"))
    p.add_argument("--e", dest="energy", type=float)
    p.add_argument("--eps", dest="eps_values", type=float, nargs="+")
    p.add_argument("--output")
    p.add_argument("--fit-out", dest="fit_out")

    return parser


def _merge_config_file(args, path, problems):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except FileNotFoundError:
        problems.append(f"config file not found: {path}")
        return
    except json.JSONDecodeError as exc:
        problems.append(f"malformed JSON config: {exc}")
        return
    if not isinstance(data, dict):
        problems.append("config file must hold a JSON object of option values")
        return
    for key, value in data.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            problems.append(f"unknown config key: {key}")
            continue
        if getattr(args, attr) in (None, [], False):  # flags override the file
            setattr(args, attr, value)


def _resolve_manifold(args, problems, hyper_ok=False):
    name = getattr(args, "manifold", None)
    if name is None:
        problems.append("a --manifold is required")
        return None
    try:
        if name == "plane":
            return Plane()
        if name == "torus":
            if args.length is None:
                problems.append("torus requires --length")
                return None
            return Torus(args.length)
        if name == "sphere":
            if args.radius is None:
                problems.append("sphere requires --radius")
                return None
            return Sphere(args.radius)
        if name == "hyperbolic":
            if not hyper_ok:
                problems.append("this command does not accept the hyperbolic variant")
                return None
            if args.radius is None:
                problems.append("hyperbolic requires --radius")
                return None
            return Hyperbolic(args.radius)
    except ValueError as exc:
        problems.append(str(exc))
    return None


def _resolve_scheme(args, problems):
    has_mu = getattr(args, "mu2", None) is not None
    has_coupling = getattr(args, "lambda_r", None) is not None or getattr(args, "scale", None) is not None
    if has_mu and has_coupling:
        problems.append("conflicting schemes: give either --mu2 or --scale with --lambda-r")
        return None
    if not has_mu and not has_coupling:
        problems.append("missing scheme: give --mu2 or both --scale and --lambda-r")
        return None
    try:
        if has_mu:
            return BoundState(args.mu2)
        if args.lambda_r is None or args.scale is None:
            problems.append("the coupling scheme needs both --scale and --lambda-r")
            return None
        return Coupling(args.scale, args.lambda_r)
    except ValueError as exc:
        problems.append(str(exc))
        return None


def parse_config(argv, config_file=None):
    """Validated RunConfig from flags plus an optional JSON defaults file.

    Raises ConfigError carrying every violated constraint at once.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    problems = []
    path = config_file or args.config
    if path:
        _merge_config_file(args, path, problems)
    if args.command is None:
        problems.append(f"a command is required: one of {', '.join(COMMANDS)}")
        raise ConfigError(problems)

    cfg = RunConfig(command=args.command)
    for name in vars(cfg):
        if name in ("command", "manifold", "scheme"):
            continue
        if hasattr(args, name) and getattr(args, name) is not None:
            setattr(cfg, name, getattr(args, name))

    cmd = args.command
    if cmd == "heat":
        cfg.manifold = _resolve_manifold(args, problems, hyper_ok=True)
        cfg.t_values = list(args.t_values or [1.0])
        cfg.d_values = list(args.d_values or [0.0])
        if any(t <= 0 for t in cfg.t_values):
            problems.append("all --t values must be positive")
        if any(d < 0 for d in cfg.d_values):
            problems.append("all --d values must be nonnegative")
        if cfg.trace and isinstance(cfg.manifold, (Plane, Hyperbolic)):
            problems.append("--trace requires a compact manifold")
        cfg.output = cfg.output or "heat.csv"
    elif cmd == "twobody":
        cfg.manifold = _resolve_manifold(args, problems)
        cfg.scheme = _resolve_scheme(args, problems)
        cfg.output = cfg.output or "twobody.json"
    elif cmd == "flow":
        cfg.manifold = _resolve_manifold(args, problems)
        cfg.scheme = _resolve_scheme(args, problems)
        if cfg.e_min is None or cfg.e_max is None:
            problems.append("flow needs --emin and --emax")
        elif not (cfg.e_min < cfg.e_max < 0):
            problems.append("flow grid must satisfy emin < emax < 0")
        if cfg.points is None or cfg.points < 2:
            problems.append("flow needs --points >= 2")
        if cfg.modes < 1:
            problems.append("--modes must be >= 1")
        if cfg.modes > 1 and not isinstance(cfg.manifold, Torus):
            problems.append("excited modes are available on the torus only")
        cfg.output = cfg.output or "flow.csv"
    elif cmd == "rg":
        if cfg.lam is None or cfg.lam <= 0:
            problems.append("rg needs --lambda > 0")
        if cfg.gamma is None or cfg.gamma <= 0:
            problems.append("rg needs --gamma > 0")
    elif cmd == "meanfield2d":
        cfg.mu2 = cfg.mu2 if cfg.mu2 is not None else 1.0
        if cfg.mu2 <= 0:
            problems.append("--mu2 must be positive")
        if cfg.profile:
            if cfg.n_single is None or cfg.n_single < 3:
                problems.append("residual scan needs --n >= 3")
            if cfg.e_min is None or cfg.e_max is None or not (cfg.e_min < cfg.e_max < 0):
                problems.append("residual scan needs --emin < --emax < 0")
            if cfg.points is None or cfg.points < 2:
                problems.append("residual scan needs --points >= 2")
        else:
            if cfg.aubin is None or cfg.aubin < 0:
                problems.append("sweep needs --aubin >= 0")
            if cfg.n_min is None or cfg.n_max is None or cfg.n_min < 3 or cfg.n_max < cfg.n_min:
                problems.append("sweep needs 3 <= --n-min <= --n-max")
            cfg.n_step = cfg.n_step or 1
            if cfg.n_step < 1:
                problems.append("--n-step must be >= 1")
        cfg.output = cfg.output or "meanfield2d.csv"
    elif cmd == "onedim":
        if cfg.lam is None or cfg.lam <= 0:
            problems.append("onedim needs --lambda > 0")
        if not cfg.n_values:
            problems.append("onedim needs --n with at least one boson number")
        elif any(n < 1 for n in cfg.n_values):
            problems.append("all --n values must be >= 1")
        cfg.output = cfg.output or "onedim.csv"
    elif cmd == "nbody-bound":
        cfg.manifold = _resolve_manifold(args, problems)
        if cfg.mu2 is None or cfg.mu2 <= 0:
            problems.append("nbody-bound needs --mu2 > 0")
        if not cfg.n_values:
            problems.append("nbody-bound needs --n with at least one boson number")
        elif any(n < 2 for n in cfg.n_values):
            problems.append("all --n values must be >= 2")
        cfg.output = cfg.output or "nbody.csv"
    elif cmd == "hyperbolic":
        if cfg.radius is None or cfg.radius <= 0:
            problems.append("hyperbolic needs --radius > 0")
        if cfg.mu2 is None or cfg.mu2 <= 0:
            problems.append("hyperbolic needs --mu2 > 0")
        cfg.output = cfg.output or "hyperbolic.json"
    elif cmd == "divergence":
        cfg.manifold = _resolve_manifold(args, problems)
        if cfg.energy is None or cfg.energy >= 0:
            problems.append("divergence needs --e < 0")
        if not cfg.eps_values:
            problems.append("divergence needs --eps cutoffs")
        elif any(e <= 0 for e in cfg.eps_values) or any(
            b >= a for a, b in zip(cfg.eps_values, cfg.eps_values[1:])
        ):
            problems.append("--eps cutoffs must be positive and strictly decreasing")
        cfg.output = cfg.output or "divergence.csv"
    if cfg.root_tol is not None and cfg.root_tol <= 0:
        problems.append("--root-tol must be positive")
    if cfg.quad_tol is not None and cfg.quad_tol <= 0:
        problems.append("--quad-tol must be positive")

    if problems:
        raise ConfigError(problems)
    return cfg


# ---------------------------------------------------------------------------
# dispatch

def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([c if isinstance(c, str) else _fmt(c) for c in row])


def _write_json(path, payload):
    text = json.dumps(payload, indent=2, sort_keys=True)
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _read_profile_csv(path):
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or row[0].strip().lower() in ("coordinate", "r", "x"):
                continue
            rows.append((float(row[0]), float(row[1])))
    r = np.array([p[0] for p in rows])
    v = np.array([p[1] for p in rows])
    return meanfield2d.RadialProfile(r, v)


def run(config):
    """Execute a validated RunConfig; returns the list of files written."""
    written = []
    cmd = config.command
    if cmd == "heat":
        if config.spectrum_out:
            basis = spectral_basis(config.manifold)
            dump_spectral_basis_csv(basis, config.spectrum_out)
            written.append(config.spectrum_out)
        if config.trace:
            rows = [(t, heat_trace(config.manifold, t)) for t in config.t_values]
            _write_csv(config.output, ["s", "theta"], rows)
        else:
            rows = [
                (t, d, heat_kernel(config.manifold, t, d).value)
                for t in config.t_values
                for d in config.d_values
            ]
            _write_csv(config.output, ["t", "d", "value"], rows)
        written.append(config.output)
    elif cmd == "twobody":
        result = principal.solve_two_body(
            config.manifold, config.scheme, residual_tol=config.root_tol
        )
        _write_json(config.output, principal.result_to_json_dict(result))
        written.append(config.output)
    elif cmd == "flow":
        energies = np.linspace(config.e_min, config.e_max, config.points)
        modes = principal.torus_modes(config.modes) if isinstance(config.manifold, Torus) else [0]
        if isinstance(config.manifold, Torus):
            modes = [0 if q == (0, 0) else q for q in modes]
        curves = principal.flow_curves(config.manifold, config.scheme, energies, modes)
        principal.curves_to_csv(curves, config.output)
        written.append(config.output)
    elif cmd == "rg":
        flowed = flow_ode(config.lam, config.gamma) if config.use_ode else flow(config.lam, config.gamma)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "lambda_r": config.lam,
            "gamma": config.gamma,
            "method": "ode" if config.use_ode else "closed-form",
            "lambda_flowed": flowed,
            "beta_at_lambda": beta(config.lam),
        }
        _write_json(config.output, payload)
        if config.output:
            written.append(config.output)
    elif cmd == "meanfield2d":
        if config.profile:
            u0 = _read_profile_csv(config.profile)
            psi0 = _read_profile_csv(config.psi_profile) if config.psi_profile else None
            energies = np.linspace(config.e_min, config.e_max, config.points)
            rows = [
                (e, meanfield2d.meanfield_residual(Plane(), config.n_single, config.mu2, e, u0, psi0))
                for e in energies
            ]
            _write_csv(config.output, ["E", "residual"], rows)
        else:
            ns = range(config.n_min, config.n_max + 1, config.n_step)
            rows = meanfield2d.meanfield_sweep(list(ns), config.aubin, config.mu2)
            _write_csv(config.output, ["n", "x", "slope"], rows)
        written.append(config.output)
    elif cmd == "onedim":
        rows = onedim.comparison_rows(config.n_values, config.lam)
        _write_csv(
            config.output,
            ["n", "exact", "hartree", "meanfield", "hartree_gap", "meanfield_gap"],
            rows,
        )
        written.append(config.output)
    elif cmd == "nbody-bound":
        rows = [
            (n, principal.nbody_upper_bound(n, config.manifold, config.mu2))
            for n in config.n_values
        ]
        _write_csv(config.output, ["n", "bound"], rows)
        written.append(config.output)
    elif cmd == "hyperbolic":
        estar = principal.hyperbolic_estar(
            config.radius, config.mu2, printed_shift=config.printed_shift
        )
        shift = config.radius**2 / 2.0 if config.printed_shift else 1.0 / (2.0 * config.radius**2)
        payload = {
            "schema_version": SCHEMA_VERSION,
            "E_star": estar,
            "radius": config.radius,
            "mu2": config.mu2,
            "shift": shift,
            "shift_convention": "printed" if config.printed_shift else "dimensional",
        }
        _write_json(config.output, payload)
        written.append(config.output)
    elif cmd == "divergence":
        points = principal.divergence_demo(config.manifold, config.energy, config.eps_values)
        _write_csv(config.output, ["epsilon", "integral"], points)
        written.append(config.output)
        if config.fit_out:
            c, intercept = principal.divergence_fit(points)
            _write_json(config.fit_out, {
                "schema_version": SCHEMA_VERSION,
                "coefficient": c,
                "intercept": intercept,
                "reference": 1.0 / (4.0 * math.pi),
            })
            written.append(config.fit_out)
    return written


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config = parse_config(argv)
        written = run(config)
    except (ConfigError, ValueError) as exc:
        record = {"error": "validation", "message": str(exc)}
        if isinstance(exc, ConfigError):
            record["problems"] = exc.problems
        sys.stderr.write(json.dumps(record) + "\n")
        return 1
    except NumericalError as exc:
        sys.stderr.write(json.dumps({"error": "numerical", "message": str(exc)}) + "\n")
        return 2
    sys.stdout.write(json.dumps({"written": written}) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
