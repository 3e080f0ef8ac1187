"""Command-line front end.

Exit status: 0 success, 1 domain error (e.g. no bound state), 2 internal
failure, 64 usage error.
"""

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

from . import __version__
from .errors import DomainError
from .spectrum import Branch, find_zero_mode, gamma_grid, solve_bound_energy, sweep_energy_curve
from .verify import run_suite
from .wavefunctions import bound_spinor, sample_radii, zero_mode

EXIT_OK, EXIT_DOMAIN, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 64
OUTPUT_DIR_ENV = "ABDIRAC_OUTPUT_DIR"
SWEEP_COLUMNS = ("gamma", "energy_over_m", "k_over_m", "theta_star", "branch", "status")
WAVEFUNCTION_COLUMNS = ("r_times_m", "f1", "f2")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    gamma: float | None = None
    theta_star: float | None = None
    mass: float = 1.0
    branch: str = "particle"
    grid: tuple = (0.05, 0.95, 91)
    r_max: float | None = None
    r_samples: int = 200
    output_path: str | None = None
    format: str = "json"
    suite: str = "all"

    def validate(self):
        if self.command not in ("solve", "sweep", "wavefunction", "zeromode", "verify"):
            raise UsageError(f"unknown command {self.command!r}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if not (self.mass > 0.0 and math.isfinite(self.mass)):
            raise DomainError(f"mass must be positive, got {self.mass!r}")
        if self.command in ("solve", "wavefunction"):
            if self.gamma is None or self.theta_star is None:
                raise UsageError(f"{self.command} needs --gamma and a theta-star flag")
            if not (0.0 < self.gamma < 1.0):
                raise DomainError(f"gamma must lie in (0, 1), got {self.gamma!r}")
        if self.command in ("sweep", "zeromode") and self.theta_star is None:
            raise UsageError(f"{self.command} needs a theta-star flag")
        if self.branch not in ("particle", "antiparticle", "both"):
            raise UsageError(f"unknown branch {self.branch!r}")
        if self.command == "wavefunction" and self.branch == "both":
            raise UsageError("wavefunction needs a single branch")
        if self.r_samples < 2:
            raise DomainError("r-samples must be at least 2")


def _branches(name):
    return list(Branch) if name == "both" else [Branch.parse(name)]


def _fmt(value):
    return repr(float(value))


def _state_row(gamma, theta_star, branch, state, status):
    return {
        "gamma": gamma,
        "energy_over_m": math.nan if state is None else state.x,
        "k_over_m": math.nan if state is None else state.k / state.mass,
        "theta_star": theta_star,
        "branch": branch.value,
        "status": status,
    }


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _render_rows(rows, columns, fmt, meta=None):
    if fmt == "json":
        payload = dict(meta or {})
        payload["rows"] = rows
        return json.dumps(_json_safe(payload), indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[c]) if isinstance(row[c], float) else row[c] for c in columns])
    return buf.getvalue()


def _solve(cfg):
    rows = []
    for branch in _branches(cfg.branch):
        state = solve_bound_energy(cfg.gamma, cfg.theta_star, branch, cfg.mass)
        row = _state_row(cfg.gamma, cfg.theta_star, branch, state, "extrapolated" if cfg.gamma > 0.5 else "ok")
        row.update(energy=state.energy, k=state.k, mass=cfg.mass)
        rows.append(row)
    if cfg.format == "json":
        payload = rows[0] if len(rows) == 1 else {"states": rows}
        return json.dumps(_json_safe(payload), indent=2) + "\n"
    return _render_rows(rows, SWEEP_COLUMNS, "csv")


def _sweep(cfg):
    grid = gamma_grid(*cfg.grid)
    curves = [sweep_energy_curve(cfg.theta_star, b, cfg.mass, grid) for b in _branches(cfg.branch)]
    rows = []
    for i, g in enumerate(grid):
        for curve in curves:
            p = curve.points[i]
            rows.append(_state_row(float(g), cfg.theta_star, curve.branch, p.state, p.status))
    meta = {"theta_star": cfg.theta_star, "mass": cfg.mass}
    return _render_rows(rows, SWEEP_COLUMNS, cfg.format, meta)


def _wavefunction(cfg):
    branch = Branch.parse(cfg.branch)
    state = solve_bound_energy(cfg.gamma, cfg.theta_star, branch, cfg.mass)
    psi = bound_spinor(state)
    r_max = None if cfg.r_max is None else cfg.r_max / cfg.mass
    radii = sample_radii(state.k, r_max, cfg.r_samples)
    rows = []
    for r in radii:
        f1, f2 = psi(float(r))
        rows.append({"r_times_m": float(r) * cfg.mass, "f1": f1, "f2": f2})
    meta = {
        "gamma": cfg.gamma,
        "theta_star": cfg.theta_star,
        "branch": branch.value,
        "mass": cfg.mass,
        "energy_over_m": state.x,
        "k_over_m": state.k / cfg.mass,
        "normalization": psi.scale,
    }
    return _render_rows(rows, WAVEFUNCTION_COLUMNS, cfg.format, meta)


def _zeromode(cfg):
    gamma0 = find_zero_mode(cfg.theta_star, cfg.mass)
    rows = []
    for branch in _branches(cfg.branch):
        state = solve_bound_energy(gamma0, cfg.theta_star, branch, cfg.mass)
        rows.append({"branch": branch.value, "energy_over_m": state.x, "k_over_m": state.k / cfg.mass})
    payload = {
        "theta_star": cfg.theta_star,
        "mass": cfg.mass,
        "gamma_zero": gamma0,
        "zero_mode_normalization": zero_mode(Branch.PARTICLE, cfg.mass).scale,
        "states": rows,
    }
    if cfg.format == "csv":
        return _render_rows(
            [{"gamma": gamma0, "theta_star": cfg.theta_star, **r} for r in rows],
            ("gamma", "theta_star", "branch", "energy_over_m", "k_over_m"),
            "csv",
        )
    return json.dumps(_json_safe(payload), indent=2) + "\n"


def _verify(cfg):
    report = run_suite(cfg.suite)
    return json.dumps(_json_safe(report), indent=2) + "\n", report["passed"]


def resolve_output(path, command, fmt):
    """Output path after applying ABDIRAC_OUTPUT_DIR; None means stdout."""
    base = os.environ.get(OUTPUT_DIR_ENV)
    if path is None:
        return None if not base else os.path.join(base, f"{command}.{fmt}")
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def write_atomic(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".abdirac-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def run(cfg: RunConfig):
    """Dispatch a validated config; returns the process exit status."""
    try:
        cfg.validate()
    except UsageError as exc:
        print(f"abdirac: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    try:
        passed = True
        if cfg.command == "solve":
            text = _solve(cfg)
        elif cfg.command == "sweep":
            text = _sweep(cfg)
        elif cfg.command == "wavefunction":
            text = _wavefunction(cfg)
        elif cfg.command == "zeromode":
            text = _zeromode(cfg)
        else:
            text, passed = _verify(cfg)
        target = resolve_output(cfg.output_path, cfg.command, cfg.format)
        if target is None:
            sys.stdout.write(text)
        else:
            write_atomic(target, text)
    except DomainError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001
        print(json.dumps({"error": "internal", "message": repr(exc)}), file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK if passed else EXIT_DOMAIN


def _add_theta_star(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--theta-star", type=float, help="boundary angle theta* in radians")
    g.add_argument("--theta-star-over-pi", type=float, help="theta* in units of pi (1.5 means 3*pi/2)")


def _add_output(p, fmt):
    p.add_argument("--output", "-o", help=f"output file (relative paths resolve under ${OUTPUT_DIR_ENV})")
    p.add_argument("--format", choices=("csv", "json"), default=fmt)


def build_parser():
    parser = _Parser(prog="abdirac", description="Bound states of the 2+1D Dirac equation in an Aharonov-Bohm flux.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one bound state")
    p.add_argument("--gamma", type=float, required=True, help="fractional flux, 0 < gamma < 1")
    _add_theta_star(p)
    p.add_argument("--branch", choices=("particle", "antiparticle", "both"), default="particle")
    p.add_argument("--mass", type=float, default=1.0)
    _add_output(p, "json")

    p = sub.add_parser("sweep", help="energy curves over a gamma grid")
    _add_theta_star(p)
    p.add_argument("--gamma-min", type=float, default=0.05)
    p.add_argument("--gamma-max", type=float, default=0.95)
    p.add_argument("--steps", type=int, default=91, help="number of grid points")
    p.add_argument("--branch", choices=("particle", "antiparticle", "both"), default="both")
    p.add_argument("--mass", type=float, default=1.0)
    _add_output(p, "csv")

    p = sub.add_parser("wavefunction", help="sample a normalized bound spinor")
    p.add_argument("--gamma", type=float, required=True)
    _add_theta_star(p)
    p.add_argument("--branch", choices=("particle", "antiparticle"), default="particle")
    p.add_argument("--mass", type=float, default=1.0)
    p.add_argument("--r-max", type=float, default=None, help="largest r*m (default 20 m/k)")
    p.add_argument("--r-samples", type=int, default=200)
    _add_output(p, "csv")

    p = sub.add_parser("zeromode", help="flux fraction where the levels cross E = 0")
    _add_theta_star(p, required=False)  # defaults to 3*pi/2
    p.add_argument("--branch", choices=("particle", "antiparticle", "both"), default="both")
    p.add_argument("--mass", type=float, default=1.0)
    _add_output(p, "json")

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", default="all", choices=("all", "specfun", "spectrum", "oracle", "wavefunctions", "conjugation"))
    _add_output(p, "json")
    return parser


def config_from_args(args):
    theta_star = getattr(args, "theta_star", None)
    over_pi = getattr(args, "theta_star_over_pi", None)
    if over_pi is not None:
        theta_star = over_pi * math.pi
    if theta_star is None and args.command == "zeromode":
        theta_star = 1.5 * math.pi
    return RunConfig(
        command=args.command,
        gamma=getattr(args, "gamma", None),
        theta_star=theta_star,
        mass=getattr(args, "mass", 1.0),
        branch=getattr(args, "branch", "particle"),
        grid=(getattr(args, "gamma_min", 0.05), getattr(args, "gamma_max", 0.95), getattr(args, "steps", 91)),
        r_max=getattr(args, "r_max", None),
        r_samples=getattr(args, "r_samples", 200),
        output_path=args.output,
        format=args.format,
        suite=getattr(args, "suite", "all"),
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
