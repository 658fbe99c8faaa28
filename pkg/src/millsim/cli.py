"""Command-line front end.

Exit codes: 0 success, 1 usage or config error, 2 runtime error, 3 replay divergence.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import parse_config
from .core import MASK64, ConfigError, SimConfig
from .engine import SpawnError, run
from .render import render_frames
from .replay import replay_verify
from .trace import TraceFormatError, export_metrics_csv, read_trace, write_trace

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME, EXIT_DIVERGED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value <= MASK64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="millsim", description="Binary-sensor swarm milling simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="simulate and write a trace")
    p.add_argument("--config", type=Path, help="INI config (defaults if omitted)")
    p.add_argument("--seed", type=_u64, help="override the config seed")
    p.add_argument("--ticks", type=_non_negative, help="override num_ticks")
    p.add_argument("--out", type=Path, required=True, help="trace file to write")
    p.add_argument("--threads", type=_positive, default=1, help="worker threads for sensing")

    p = sub.add_parser("replay", help="verify a trace against the engine")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument("--threads", type=_positive, default=1)
    p.add_argument("--rel-tol", type=float, default=0.0,
                   help="relative tolerance; 0 demands bit-exact agreement")

    p = sub.add_parser("render", help="write SVG frames")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument("--every", type=_positive, required=True)
    p.add_argument("--out-dir", type=Path, required=True)

    p = sub.add_parser("metrics", help="export metric rows as CSV")
    p.add_argument("--trace", type=Path, required=True)
    p.add_argument("--csv", type=Path, required=True)
    return parser


def _cmd_run(args) -> int:
    config = SimConfig()
    if args.config is not None:
        config = parse_config(args.config.read_text(encoding="utf-8"))
    overrides = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.ticks is not None:
        overrides["num_ticks"] = args.ticks
    config = replace(config, **overrides)
    trace = run(config, parallelism=args.threads)
    write_trace(trace, args.out)
    print(f"wrote {len(trace.records)} ticks to {args.out}")
    return EXIT_OK


def _cmd_replay(args) -> int:
    report = replay_verify(read_trace(args.trace), parallelism=args.threads, rel_tol=args.rel_tol)
    print(report)
    return EXIT_OK if report.ok else EXIT_DIVERGED


def _cmd_render(args) -> int:
    paths = render_frames(read_trace(args.trace), args.every, args.out_dir)
    print(f"wrote {len(paths)} frames to {args.out_dir}")
    return EXIT_OK


def _cmd_metrics(args) -> int:
    rows = export_metrics_csv(read_trace(args.trace), args.csv)
    print(f"wrote {rows} rows to {args.csv}")
    return EXIT_OK


COMMANDS = {"run": _cmd_run, "replay": _cmd_replay, "render": _cmd_render, "metrics": _cmd_metrics}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpawnError, TraceFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
