"""Command line: ``cherednik run --suite NAME ...`` and ``cherednik list``."""
from __future__ import annotations

import argparse
import sys

from .exact import parse_rational
from .glmod import ModuleValidationError
from .suites import REGISTRY, ConfigError, RunConfig, emit_report, run_suite
from .wspace import LevelError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _rationals(text):
    try:
        return tuple(parse_rational(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _window(text):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like lo..hi, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cherednik", description="Exact checks for Hecke and Cherednik actions.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list registered suites")
    run = sub.add_parser("run", help="run one suite")
    run.error = parser.error
    run.add_argument("--suite", required=True)
    run.add_argument("--m", type=int, default=2)
    run.add_argument("--n", type=int, default=1)
    run.add_argument("--N", type=int, default=2)
    run.add_argument("--kappa", type=_rationals, default=None,
                     help="comma-separated rationals; use --kappa=-7/3 for a leading minus")
    run.add_argument("--level-offset", type=_rational, default=0)
    run.add_argument("--level", type=_rational, default=None, help="explicit module level")
    run.add_argument("--window", type=_window, default=(-2, 2), help="lo..hi, e.g. --window=-2..2")
    run.add_argument("--depth", type=int, default=2)
    run.add_argument("--degree", type=int, default=5)
    run.add_argument("--samples", type=int, default=200)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--module", action="append", default=[], help="path or alias; repeat for V")
    run.add_argument("--flavor", choices=("gl", "sl"), default="gl")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--expect-fail", action="store_true",
                     help="pass iff the suite fails (negative controls)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "list":
        for name in sorted(REGISTRY):
            print(f"{name:18} {REGISTRY[name].description}")
        return 0
    kw = {}
    if args.kappa is not None:
        kw["kappa"] = args.kappa
    cfg = RunConfig(suite=args.suite, m=args.m, n=args.n, N=args.N,
                    level_offset=args.level_offset, level=args.level, window=args.window,
                    depth=args.depth, degree=args.degree, samples=args.samples, seed=args.seed,
                    modules=tuple(args.module), flavor=args.flavor, expect_fail=args.expect_fail, **kw)
    try:
        report = run_suite(cfg)
    except (ConfigError, LevelError, ModuleValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(emit_report(report, args.format))
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
