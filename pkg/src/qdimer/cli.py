"""Command-line entry point: ``qdimer <subcommand> ...``."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import PRESETS, SweepSpec, parse_config, preset_text
from .errors import ConfigError, InvalidInputError, NoRootError, QDimerError
from .output import csv_text, render_svg
from .sweep import run_sweep, single_value

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_IO = 0, 2, 3, 4


class _IOFailure(Exception):
    pass


def _add_common(p, with_output=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--config", metavar="PATH", help="key = value configuration file")
    src.add_argument("--preset", choices=PRESETS, help="shipped figure preset")
    p.add_argument("--units", choices=("physical", "natural"), help="override the units key")
    p.add_argument("--tol", type=float, metavar="FLOAT", help="override the quadrature tolerance")
    p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                   help="override any configuration key (repeatable)")
    if with_output:
        p.add_argument("--out", metavar="PATH", help="CSV destination (default: stdout)")
        p.add_argument("--svg", metavar="PATH", help="also render an SVG figure")
        p.add_argument("--style", choices=("heatmap", "lines"), help="SVG style")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qdimer", description="Dissipative exciton dimer simulator")
    parser.add_argument("--version", action="version", version=f"qdimer {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("trace", help="one-axis sweep"))
    _add_common(sub.add_parser("grid", help="two-axis sweep"))
    _add_common(sub.add_parser("ep-temp", help="critical temperature (single point or sweep)"))
    _add_common(sub.add_parser("passage", help="passage time (single point or sweep)"))
    _add_common(sub.add_parser("validate-config", help="check a configuration and echo it resolved"),
                with_output=False)
    return parser


def _read_source(args) -> str:
    if args.preset:
        return preset_text(args.preset)
    try:
        with open(args.config, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {args.config}: {exc.strerror}") from None


def _overrides(args, command) -> dict[str, str]:
    out = {}
    for item in args.set:
        if "=" not in item:
            raise ConfigError(f"--set expects KEY=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    if args.units:
        out["units"] = args.units
    if args.tol is not None:
        out["tol"] = repr(args.tol)
    if command == "trace":
        out.setdefault("mode", "trace")
    elif command == "grid":
        out.setdefault("mode", "grid")
    elif command == "ep-temp":
        out["observable"] = "T_c"
    elif command == "passage":
        out["observable"] = "tau_p"
    return out


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror}") from None


def _emit_grid(spec: SweepSpec, args) -> int:
    grid = run_sweep(spec)
    text = csv_text(grid)
    if args.out:
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    if args.svg:
        _write(args.svg, render_svg(grid, args.style))
    return EXIT_OK


def _run(args) -> int:
    text = _read_source(args)
    single = args.command in ("ep-temp", "passage", "validate-config")
    spec = parse_config(text, _overrides(args, args.command), require_axes=not single)
    if args.command == "validate-config":
        for k, v in spec.resolved().items():
            print(f"{k} = {v}")
        return EXIT_OK
    if spec.axes:
        return _emit_grid(spec, args)
    value = single_value(spec)
    if value is None:
        what = "critical temperature" if spec.observable == "T_c" else "passage time"
        print(f"qdimer: no {what} in the search window", file=sys.stderr)
        return EXIT_SOLVER
    unit = {"T_c": "K", "tau_p": "ps"}[spec.observable] if spec.units_mode == "physical" else ""
    line = f"{spec.observable} = {format(value, '.12g')} {unit}".rstrip() + "\n"
    if args.out:
        _write(args.out, line)
    else:
        sys.stdout.write(line)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (ConfigError, InvalidInputError) as exc:
        print(f"qdimer: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except _IOFailure as exc:
        print(f"qdimer: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NoRootError, QDimerError) as exc:
        print(f"qdimer: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
