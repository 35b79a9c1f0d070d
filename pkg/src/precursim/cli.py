"""Command-line entry point: ``precursim {run,kk-check,sweep,dump-preset}``.

Exit codes: 0 success, 2 invalid configuration, 3 physics-validation
failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io as pio
from .errors import ConfigError, PhysicsValidationError
from .presets import PRESETS, preset
from .scenario import kk_check, load_config, run_scenario, sweep, validate_config, write_outputs

EXIT_OK, EXIT_CONFIG, EXIT_PHYSICS, EXIT_IO = 0, 2, 3, 4


def _parser():
    p = argparse.ArgumentParser(prog="precursim", description="Optical precursor and slow/fast light simulator.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="DIR", help="output directory (PRECURSIM_OUT takes precedence)")
    common.add_argument("--seed", type=int, help="override the configuration seed")
    common.add_argument("--jobs", type=int, default=1, help="parallel workers for sweeps")
    common.add_argument("--format", choices=("csv", "json"), default="csv", help="table/report format")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", parents=[common], help="run a scenario config (path or preset name)")
    r.add_argument("config")

    k = sub.add_parser("kk-check", parents=[common], help="verify the dispersion-engine invariants")
    k.add_argument("--flip-hilbert-sign", action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("sweep", parents=[common], help="sweep one numeric config field")
    s.add_argument("config")
    s.add_argument("--param", required=True, help="dotted path, e.g. media.slow.features.0.depth")
    s.add_argument("--values", nargs="*", type=float, default=[], help="parameter values")

    d = sub.add_parser("dump-preset", parents=[common], help="print an embedded config as JSON")
    d.add_argument("name", choices=sorted(PRESETS))
    return p


def _out_dir(args, default=None):
    env = os.environ.get("PRECURSIM_OUT")
    if env:
        return Path(env)
    if args.out:
        return Path(args.out)
    return Path(default) if default else None


def _load(args):
    raw = load_config(args.config)
    if args.seed is not None:
        raw["seed"] = args.seed
    return raw


def _emit(text, out_dir, name):
    if out_dir is None:
        sys.stdout.write(text)
    else:
        pio.write_atomic(out_dir / name, text)


def _cmd_run(args):
    sc = validate_config(_load(args))
    result = run_scenario(sc)
    out = _out_dir(args, sc.output.get("directory", sc.name))
    write_outputs(result, out)
    print(f"wrote {len(result.files)} files to {out}")
    return EXIT_OK


def _cmd_kk(args):
    report = kk_check(flip_sign=args.flip_hilbert_sign, seed=args.seed or 0)
    if args.format == "json":
        text = pio.json_text(report)
    else:
        lines = ["check,value,tolerance,passed"]
        lines += [f"{c['name']},{pio.fmt(c['value'])},{pio.fmt(c['tolerance'])},{int(c['passed'])}" for c in report["checks"]]
        text = "\n".join(lines) + "\n"
    _emit(text, _out_dir(args), f"kk_check.{args.format}")
    failed = [c["name"] for c in report["checks"] if not c["passed"]]
    if failed:
        print("invariant failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_PHYSICS
    return EXIT_OK


def _cmd_sweep(args):
    raw = _load(args)
    columns, rows = sweep(raw, args.param, args.values, jobs=max(1, args.jobs))
    if args.format == "json":
        text = pio.json_text({"parameter": args.param, "columns": columns, "rows": rows})
    else:
        text = pio.csv_text({c: [r[i] for r in rows] for i, c in enumerate(columns)})
    _emit(text, _out_dir(args), f"sweep.{args.format}")
    return EXIT_OK


def _cmd_dump(args):
    text = json.dumps(preset(args.name), indent=2) + "\n"
    _emit(text, _out_dir(args), f"{args.name}.json")
    return EXIT_OK


_COMMANDS = {"run": _cmd_run, "kk-check": _cmd_kk, "sweep": _cmd_sweep, "dump-preset": _cmd_dump}


def main(argv=None):
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsValidationError as exc:
        print(f"physics validation failed: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
