"""Command line entry point: ``rumornet {run,homogeneity,validate,sweep,example}``."""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

from .fixtures import builtin_example
from .metrics import HomogeneityMismatchWarning, check_reported_homogeneity, heterogeneity_matrix
from .model import ConfigurationError, validate_colony
from .scenario import dumps_scenario, format_trace, load_scenario, write_trace
from .simulation import RunConfig, run, sweep, with_threshold

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("scenario_path", nargs="?", help="scenario JSON file")
    p.add_argument("--scenario", dest="scenario_flag", help="scenario JSON file")
    p.add_argument("--example", type=int, help="built-in worked example 1..7")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--generations", type=int)
    p.add_argument("--mode", choices=["eq8", "alg5"])
    p.add_argument("--threshold", type=float, help="override every agent's accept threshold")
    p.add_argument("--window", type=int, help="stability window (default 20 * agents)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rumornet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="simulate one seed and write the trace")
    _add_source(p)
    _add_run_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="trace file (default: standard output)")

    p = sub.add_parser("homogeneity", help="print h_C and the pairwise heterogeneity matrix")
    _add_source(p)

    p = sub.add_parser("validate", help="check structure and trust assumptions")
    _add_source(p)

    p = sub.add_parser("sweep", help="simulate a range of seeds")
    _add_source(p)
    _add_run_flags(p)
    p.add_argument("--seeds", required=True, help="inclusive range a..b")
    p.add_argument("--out-dir", help="directory for per-seed traces and summary.json")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("example", help="print a built-in example as a scenario document")
    p.add_argument("number", type=int, nargs="?")
    p.add_argument("--example", type=int)
    p.add_argument("--out")
    return parser


def _load(args):
    paths = [x for x in (args.scenario_path, args.scenario_flag) if x]
    if args.example is not None and paths:
        raise UsageError("give either a scenario file or --example, not both")
    if args.example is not None:
        return builtin_example(args.example)
    if not paths:
        raise UsageError("a scenario file or --example is required")
    if len(paths) > 1 and paths[0] != paths[1]:
        raise UsageError("two different scenario files given")
    return load_scenario(paths[0])


def _config(args, config: RunConfig) -> RunConfig:
    return config.with_overrides(
        generations=args.generations,
        accept_mode=args.mode,
        stability_window=args.window,
        seed=getattr(args, "seed", None),
    )


def parse_seed_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a, b = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise UsageError(f"bad seed range {text!r}, expected a..b") from None
    if a < 0 or b < a:
        raise UsageError(f"empty seed range {text!r}")
    return range(a, b + 1)


def _summary(h: float, converged_at) -> str:
    return f"h_C={h:.10g} converged_at={'none' if converged_at is None else converged_at}"


def cmd_run(args) -> int:
    colony, config = _load(args)
    config = _config(args, config)
    if args.threshold is not None:
        colony = with_threshold(colony, args.threshold)
    trace = run(colony, config)
    if args.out:
        write_trace(trace, args.out)
        print(_summary(trace.homogeneity, trace.converged_at))
    else:
        sys.stdout.write(format_trace(trace))
        print(_summary(trace.homogeneity, trace.converged_at), file=sys.stderr)
    return EXIT_OK


def cmd_homogeneity(args) -> int:
    colony, _ = _load(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HomogeneityMismatchWarning)
        value, warning = check_reported_homogeneity(colony)
    print(f"h_C={value:.10g}")
    h = heterogeneity_matrix(colony)
    ids = colony.ids
    print("H," + ",".join(str(i) for i in ids))
    for i, row in zip(ids, h):
        print(f"{i}," + ",".join(f"{v:.6g}" for v in row))
    if warning:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    colony, _ = _load(args)
    report = validate_colony(colony)
    for line in report.lines():
        print(line)
    print(f"{'ok' if report.ok else 'invalid'}: {len(report.errors)} errors, "
          f"{len(report.warnings)} warnings")
    return EXIT_OK if report.ok else EXIT_CONFIG


def cmd_sweep(args) -> int:
    seeds = parse_seed_range(args.seeds)
    colony, config = _load(args)
    config = _config(args, config)
    if args.threshold is not None:
        colony = with_threshold(colony, args.threshold)
    result = sweep(colony, config, seeds, jobs=max(1, args.jobs))
    mean = result.mean_converged_at
    summary = {
        "runs": len(result.seeds),
        "converged_fraction": result.converged_fraction,
        "mean_converged_at": mean,
        "h_C": result.traces[0].homogeneity,
        "converged_at": {str(s): t.converged_at for s, t in zip(result.seeds, result.traces)},
    }
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for s, t in zip(result.seeds, result.traces):
            write_trace(t, out / f"seed-{s}.csv")
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(f"runs={summary['runs']} converged_fraction={result.converged_fraction:.4g} "
          f"mean_converged_at={'none' if mean is None else f'{mean:.6g}'}")
    return EXIT_OK


def cmd_example(args) -> int:
    n = args.example if args.example is not None else args.number
    if n is None:
        raise UsageError("example number required")
    colony, config = builtin_example(n)
    text = dumps_scenario(colony, config)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "homogeneity": cmd_homogeneity,
    "validate": cmd_validate,
    "sweep": cmd_sweep,
    "example": cmd_example,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
