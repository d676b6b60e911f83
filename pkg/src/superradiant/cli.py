"""Command-line front end emitting plot-ready CSV or JSON.

Every option can also come from a flat TOML file given with ``--config``;
keys are the long option names (``abs-tol`` or ``abs_tol``).  Flags win
over the file.  Exit codes: 0 success, 1 invalid configuration,
2 numerical failure, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from . import __version__
from .core_model import ModelParams, QuadratureSpec, omega
from .errors import NumericalError
from .landscape import SearchSpec, classify_landscape
from .phase_scan import Axis, Sweep, field_name, locate_transition, scan_grid, trace_hysteresis
from .validation import run_validation

THREADS_ENV = "SUPERRADIANT_THREADS"

COMMANDS = ("omega-curve", "classify", "phase-scan", "maximizer-sweep",
            "locate-transition", "hysteresis", "validate")

HEADERS = {
    "omega-curve": ("x", "omega"),
    "classify": ("lambda", "epsilon", "J", "beta", "maxima_count", "x_star",
                 "omega_star", "superradiant"),
    "phase-scan": ("axis1", "axis2", "maxima_count", "x_star", "omega_star", "superradiant"),
    "maximizer-sweep": ("axis1", "axis2", "maxima_count", "x_star", "omega_star", "superradiant"),
    "locate-transition": ("parameter", "value", "order", "jump"),
    "hysteresis": ("direction", "parameter", "x_branch", "omega_branch"),
    "validate": ("check", "computed", "expected", "tolerance", "pass"),
}

# Reference regime: beta = 100, lambda = 1.3, J in 0.1..0.6, epsilon in 0.2..2.0.
DEFAULTS = {
    "lambda": 1.3,
    "epsilon": 1.0,
    "J": 0.5,
    "beta": 100.0,
    "panels": 16,
    "abs_tol": 1e-10,
    "max_panels": 4096,
    "grid_points": 400,
    "format": "csv",
    "output": None,
    "threads": None,
    "x_min": -1.0,
    "x_max": 1.0,
    "points": 401,
    "relative": False,
    "axis1": "epsilon:0.2:2.0:19",
    "axis2": "lambda:0.5:1.5:21",
    "j_range": "0.1:0.6:50",
    "epsilon_range": "0.2:2.0:50",
    "parameter": "epsilon",
    "bracket": [1.0, 1.3],
    "resolution": 1e-6,
    "steps": 200,
}


class ConfigError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superradiant", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat TOML file of option defaults")
    common.add_argument("--lambda", dest="lambda", type=float)
    common.add_argument("--epsilon", type=float)
    common.add_argument("--J", dest="J", type=float)
    common.add_argument("--beta", type=float)
    common.add_argument("--panels", type=int)
    common.add_argument("--abs-tol", dest="abs_tol", type=float)
    common.add_argument("--max-panels", dest="max_panels", type=int)
    common.add_argument("--grid-points", dest="grid_points", type=int)
    common.add_argument("-o", "--output")
    common.add_argument("--format", choices=("csv", "json"))

    p = sub.add_parser("omega-curve", parents=[common], help="Omega(x) on a uniform grid")
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--relative", action="store_true", default=None,
                   help="subtract Omega(0) so every curve starts at zero")

    sub.add_parser("classify", parents=[common], help="stationary points and regime")

    p = sub.add_parser("phase-scan", parents=[common], help="2-D regime map")
    p.add_argument("--axis1", help="name:start:stop:num (outer loop)")
    p.add_argument("--axis2", help="name:start:stop:num (inner loop)")
    p.add_argument("--threads", type=int)

    p = sub.add_parser("maximizer-sweep", parents=[common], help="x* over (J, epsilon)")
    p.add_argument("--j-range", dest="j_range", help="start:stop:num")
    p.add_argument("--epsilon-range", dest="epsilon_range", help="start:stop:num")
    p.add_argument("--threads", type=int)

    p = sub.add_parser("locate-transition", parents=[common], help="bisect a phase boundary")
    p.add_argument("--parameter")
    p.add_argument("--bracket", type=float, nargs=2)
    p.add_argument("--resolution", type=float)

    p = sub.add_parser("hysteresis", parents=[common], help="forward/backward branches")
    p.add_argument("--parameter")
    p.add_argument("--bracket", type=float, nargs=2)
    p.add_argument("--steps", type=int)

    sub.add_parser("validate", parents=[common], help="run the oracle cross-checks")
    return parser


@dataclass
class RunConfig:
    command: str
    params: ModelParams
    quad: QuadratureSpec
    search: SearchSpec
    options: dict = field(default_factory=dict)
    output: str | None = None
    format: str = "csv"


def _load_toml(path):
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    out = {}
    for key, value in data.items():
        norm = key.replace("-", "_")
        if norm not in DEFAULTS:
            raise ConfigError(f"unknown config key {key!r}")
        if isinstance(value, dict):
            raise ConfigError(f"config key {key!r} must be a scalar or list (flat file)")
        out[norm] = value
    return out


def _parse_range(text, what):
    parts = str(text).split(":")
    try:
        start, stop, num = float(parts[-3]), float(parts[-2]), int(parts[-1])
    except (ValueError, IndexError):
        raise ConfigError(f"{what} must look like start:stop:num, got {text!r}") from None
    if num < 1:
        raise ConfigError(f"{what} needs num >= 1")
    return start, stop, num


def _parse_axis(text, what):
    name, _, rest = str(text).partition(":")
    start, stop, num = _parse_range(rest, what)
    return Axis.linspace(name, start, stop, num)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags, config file and defaults; validate every number."""
    file_values = _load_toml(args.config) if getattr(args, "config", None) else {}

    def get(key):
        value = getattr(args, key, None)
        if value is not None:
            return value
        return file_values.get(key, DEFAULTS[key])

    try:
        params = ModelParams(get("lambda"), get("epsilon"), get("J"), get("beta"))
        quad = QuadratureSpec(get("panels"), get("abs_tol"), get("max_panels"))
        search = SearchSpec(grid_points=get("grid_points"))
        fmt = get("format")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {fmt!r}")
        opts = {}
        cmd = args.command
        if cmd == "omega-curve":
            opts["x_min"], opts["x_max"] = float(get("x_min")), float(get("x_max"))
            opts["points"] = int(get("points"))
            opts["relative"] = bool(get("relative"))
            if opts["points"] < 2 or not opts["x_min"] < opts["x_max"]:
                raise ConfigError("omega-curve needs points >= 2 and x_min < x_max")
        elif cmd in ("phase-scan", "maximizer-sweep"):
            if cmd == "phase-scan":
                opts["axis1"] = _parse_axis(get("axis1"), "axis1")
                opts["axis2"] = _parse_axis(get("axis2"), "axis2")
            else:
                opts["axis1"] = Axis.linspace("J", *_parse_range(get("j_range"), "j-range"))
                opts["axis2"] = Axis.linspace("epsilon", *_parse_range(get("epsilon_range"), "epsilon-range"))
            if field_name(opts["axis1"].name) == field_name(opts["axis2"].name):
                raise ConfigError("axis1 and axis2 must name distinct parameters")
            threads = get("threads")
            if threads is None:
                threads = int(os.environ.get(THREADS_ENV, "1"))
            if int(threads) < 1:
                raise ConfigError("threads must be >= 1")
            opts["threads"] = int(threads)
        elif cmd in ("locate-transition", "hysteresis"):
            lo, hi = (float(v) for v in get("bracket"))
            opts["sweep"] = Sweep(str(get("parameter")), lo, hi)
            if cmd == "locate-transition":
                opts["resolution"] = float(get("resolution"))
                if not opts["resolution"] > 0:
                    raise ConfigError("resolution must be > 0")
            else:
                opts["steps"] = int(get("steps"))
                if opts["steps"] < 2:
                    raise ConfigError("steps must be >= 2")
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(args.command, params, quad, search, opts, get("output"), fmt)


# ---------------------------------------------------------------------------
# computations -> tables


def _grid_rows(grid):
    rows = []
    for i, v1 in enumerate(grid.axis1.values):
        for j, v2 in enumerate(grid.axis2.values):
            c = grid.cells[i][j]
            rows.append([v1, v2, c.maxima_count, c.global_maximizer, c.omega_star, c.superradiant])
    return rows


def build_table(config: RunConfig):
    """Run the command; return (rows, extra, failures)."""
    p, quad, search, opts = config.params, config.quad, config.search, config.options
    cmd = config.command
    extra, failures = {}, []
    if cmd == "omega-curve":
        xs = np.linspace(opts["x_min"], opts["x_max"], opts["points"])
        w = np.asarray(omega(p, xs, quad))
        if opts["relative"]:
            w = w - omega(p, 0.0, quad)
        rows = [[float(x), float(v)] for x, v in zip(xs, w)]
    elif cmd == "classify":
        prof = classify_landscape(p, quad, search)
        rows = [[p.lam, p.epsilon, p.j_coupling, p.beta, prof.maxima_count,
                 prof.global_maximizer, prof.omega_star, prof.superradiant]]
    elif cmd in ("phase-scan", "maximizer-sweep"):
        grid = scan_grid(opts["axis1"], opts["axis2"], p, quad, search, workers=opts["threads"])
        rows = _grid_rows(grid)
        extra["axis1"] = opts["axis1"].name
        extra["axis2"] = opts["axis2"].name
        failures = [f"cell ({grid.axis1.name}={grid.axis1.values[i]:.12g}, "
                    f"{grid.axis2.name}={grid.axis2.values[j]:.12g}): {err}"
                    for i, j, err in grid.failed_cells()]
    elif cmd == "locate-transition":
        t = locate_transition(opts["sweep"], p, quad, search, resolution=opts["resolution"])
        rows = [[t.swept_parameter, t.value, t.order, t.jump]]
        extra["branches"] = list(t.branches)
    elif cmd == "hysteresis":
        fwd, bwd = trace_hysteresis(opts["sweep"], p, quad, search, steps=opts["steps"])
        rows = [[b.direction, v, x, w] for b in (fwd, bwd) for v, x, w in b.samples]
        extra["terminus"] = {"forward": fwd.terminus, "backward": bwd.terminus}
    elif cmd == "validate":
        rows = [[c.name, c.computed, c.expected, c.tolerance, c.passed] for c in run_validation()]
        failures = [f"check {r[0]} failed" for r in rows if not r[4]]
    else:
        raise ConfigError(f"unknown command {cmd!r}")
    return rows, extra, failures


def _fmt(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.12g}"
    return str(value)


def render(command, rows, extra, fmt) -> str:
    header = HEADERS[command]
    if fmt == "csv":
        lines = [",".join(header)] + [",".join(_fmt(v) for v in row) for row in rows]
        return "\n".join(lines) + "\n"
    doc = {"command": command, "columns": list(header), "rows": rows}
    doc.update(extra)
    return json.dumps(doc, indent=1, default=_json_default, allow_nan=True) + "\n"


def _json_default(value):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _write_sidecar(path, config, argv, elapsed):
    meta = {
        "command": config.command,
        "argv": list(argv),
        "version": __version__,
        "finished": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "elapsed_s": elapsed,
        "params": vars(config.params),
        "quad": vars(config.quad),
    }
    with open(path + ".meta.json", "w") as fh:
        json.dump(meta, fh, indent=1)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = resolve_config(args)
    except ConfigError as exc:
        print(f"superradiant: invalid configuration: {exc}", file=sys.stderr)
        return 1

    started = time.perf_counter()
    try:
        rows, extra, failures = build_table(config)
    except NumericalError as exc:
        print(f"superradiant: numerical failure: {exc}", file=sys.stderr)
        return 2
    text = render(config.command, rows, extra, config.format)

    if config.output:
        try:
            with open(config.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"superradiant: cannot write {config.output}: {exc}", file=sys.stderr)
            return 1
        _write_sidecar(config.output, config, argv, time.perf_counter() - started)
    else:
        sys.stdout.write(text)

    for line in failures:
        print(f"superradiant: {line}", file=sys.stderr)
    if failures:
        return 3 if config.command == "validate" else 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
