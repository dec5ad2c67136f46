"""Command-line entry point: ``chebpe run|sweep|time|presets``."""

import argparse
import os
import sys

from .config import PRESETS, parse_config
from .errors import ChebPEError
from .runner import SWEEPABLE, run, sweep, timing_harness


def _load(path):
    if path in PRESETS and not os.path.exists(path):
        return parse_config(f"preset = {path}")
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def _cmd_run(args):
    cfg = _load(args.config)
    summary = run(cfg, args.output)
    for name, entry in summary["error_index"].items():
        for where, value in entry.items():
            print(f"error_index {name} vs {summary['reference']} ({where}): {value!r} dB")
    for path in summary["files"]:
        print(f"wrote {path}")
    return 0


def _cmd_sweep(args):
    cfg = _load(args.config)
    rows = sweep(cfg, args.param, args.values)
    outdir = args.output or cfg.output_dir
    os.makedirs(outdir, exist_ok=True)
    path = os.path.join(outdir, f"sweep_{args.param}.csv")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{args.param},engine,error_index\n")
        for v, e, idx in rows:
            line = f"{v!r},{e},{idx!r}"
            fh.write(line + "\n")
            print(line)
    print(f"wrote {path}")
    return 0


def _cmd_time(args):
    cfg = _load(args.config)
    report = timing_harness(cfg, args.reps)
    print("engine,mode,steps,setup_s,march_s")
    for row in report:
        print(f"{row['engine']},{row['mode']},{row['steps']},{row['setup_s']:.6f},{row['march_s']:.6f}")
    return 0


def _cmd_presets(args):
    if args.show:
        if args.show not in PRESETS:
            print(f"unknown preset {args.show!r}", file=sys.stderr)
            return 2
        sys.stdout.write(PRESETS[args.show])
        return 0
    for name in PRESETS:
        print(name)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="chebpe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run the configured engines and write CSV output")
    p.add_argument("config", help="config file, or a preset name")
    p.add_argument("-o", "--output", help="output directory (overrides output_dir)")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="error index versus one numerical parameter")
    p.add_argument("config")
    p.add_argument("--param", required=True, choices=sorted(SWEEPABLE))
    p.add_argument("--values", required=True, nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("time", help="mean setup and march times per engine/mode")
    p.add_argument("config")
    p.add_argument("--reps", type=int, default=10)
    p.set_defaults(func=_cmd_time)

    p = sub.add_parser("presets", help="list built-in scenarios")
    p.add_argument("--show", metavar="NAME", help="print a preset's config text")
    p.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ChebPEError, ValueError, OSError) as exc:
        print(f"chebpe: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
