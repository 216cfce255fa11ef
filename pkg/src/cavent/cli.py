"""Command-line interface.

Subcommands:
  point     evaluate one configuration, print `S=<float> born_ratio=<float>`
  sweep     run a preset or custom sweep and write the CSV
  validate  run the numerical oracle suites (exit 2 on failure)
  presets   list available sweep presets

Exit codes: 0 success, 1 usage/configuration error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, config_from_flat, config_to_flat, load_config
from .entanglement import entropy_at
from .oracles import run_all
from .sweep import Axis, SweepSpec, preset, preset_names, run_sweep, write_csv


def _apply_sets(flat: dict, sets) -> dict:
    for item in sets or ():
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, val = item.partition("=")
        flat[key.strip()] = val.strip()
    return flat


def _load_flat(args) -> dict:
    if getattr(args, "config", None):
        flat = config_to_flat(load_config(args.config))
    else:
        flat = {}
    return _apply_sets(flat, getattr(args, "set", None))


def _parse_axis(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) not in (4, 5):
        raise ConfigError(
            f"--axis expects key:lo:hi:count[:lin|log], got {text!r}")
    name, lo, hi, count = parts[:4]
    spacing = parts[4] if len(parts) == 5 else "lin"
    return Axis(name, float(lo), float(hi), int(count), spacing)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cavent", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_point = sub.add_parser("point", help="evaluate one configuration")
    p_point.add_argument("--config", help="flat key=value config file")
    p_point.add_argument("--set", action="append", metavar="KEY=VALUE",
                         help="override a config key (repeatable)")

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("--preset", help="named sweep preset")
    p_sweep.add_argument("--axis", action="append", metavar="KEY:LO:HI:COUNT[:SPACING]",
                         help="custom sweep axis (one or two)")
    p_sweep.add_argument("--config", help="flat key=value config file")
    p_sweep.add_argument("--set", action="append", metavar="KEY=VALUE")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--workers", type=int, default=1)

    p_val = sub.add_parser("validate", help="run the oracle suites")
    p_val.add_argument("--seed", type=int, default=20240517)
    p_val.add_argument("--verbose", action="store_true")

    sub.add_parser("presets", help="list sweep presets")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code not in (0, None) else 0

    try:
        if args.command == "point":
            cfg = config_from_flat(_load_flat(args))
            res = entropy_at(cfg)
            print(f"S={res.S:.17g} born_ratio={res.born_ratio:.17g}")
            return 0

        if args.command == "sweep":
            if bool(args.preset) == bool(args.axis):
                print("sweep: give exactly one of --preset or --axis", file=sys.stderr)
                return 1
            if args.preset:
                spec = preset(args.preset)
                fixed = dict(spec.fixed)
                fixed.update(_load_flat(args))
                spec = SweepSpec(axes=spec.axes, fixed=fixed, ties=spec.ties, name=spec.name)
            else:
                axes = tuple(_parse_axis(a) for a in args.axis)
                spec = SweepSpec(axes=axes, fixed=_load_flat(args))
            result = run_sweep(spec, workers=args.workers)
            write_csv(result, args.out)
            print(f"wrote {args.out} ({len(result.rows)} rows, {result.wall_time:.1f}s)")
            return 0

        if args.command == "validate":
            ok, results = run_all(seed=args.seed, verbose=args.verbose)
            for name, good, msg in results:
                print(f"{'PASS' if good else 'FAIL'} {name}: {msg}")
            return 0 if ok else 2

        if args.command == "presets":
            for name in preset_names():
                print(name)
            return 0
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
