"""Command-line entry point: ``eurkit {werner,bell,random,bounds,mub}``.

Exit status: 0 on success, 2 on invalid arguments or input files, 3 when
a bound-ordering violation is detected.
"""

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .bounds import evaluate_all
from .errors import EurkitError, InvariantError
from .experiments import (
    DEFAULT_GRID,
    DEFAULT_SAMPLES,
    Violation,
    bell_diagonal_sweep,
    ensemble_csv,
    random_ensemble,
    sweep_csv,
    violation_scan,
    werner_sweep,
)
from .measurements import builtin_bases
from .serialize import bases_to_json, dumps, load_bases, load_state, report_to_json

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VIOLATION = 3

ENV_SEED = "EURKIT_SEED"
ENV_OUT_DIR = "EURKIT_OUT_DIR"


class UsageError(Exception):
    pass


def _positive_int(minimum):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value

    return parse


def _seed(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be a 64-bit unsigned integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eurkit",
        description="Entropic uncertainty and its lower bounds for multiple measurements.",
        epilog=f"Environment: {ENV_SEED} sets the default --seed, {ENV_OUT_DIR} the default "
        "output directory; explicit flags take precedence.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    out_help = (
        f"output file (default: ${ENV_OUT_DIR}/<name> if set, otherwise stdout)"
    )
    for name, label in (("werner", "Werner states"), ("bell", "the Bell-diagonal family")):
        p = sub.add_parser(name, help=f"sweep purity p for {label}; writes CSV")
        p.add_argument("--grid", type=_positive_int(2), default=DEFAULT_GRID,
                       help=f"number of evenly spaced p values in [0, 1] (default: {DEFAULT_GRID})")
        p.add_argument("--out", type=Path, default=None, help=out_help)

    p = sub.add_parser("random", help="random-state ensemble; writes CSV")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2,
                   help="local dimension: 2 (Pauli bases) or 3 (qutrit MUB) (default: 2)")
    p.add_argument("--samples", type=_positive_int(1), default=None,
                   help="number of states (default: 10000 for dim 2, 1000 for dim 3)")
    p.add_argument("--seed", type=_seed, default=None,
                   help=f"master seed, 0 <= seed < 2**64 (default: ${ENV_SEED} or 0)")
    p.add_argument("--workers", type=_positive_int(1), default=1,
                   help="worker processes; output does not depend on it (default: 1)")
    p.add_argument("--out", type=Path, default=None, help=out_help)

    p = sub.add_parser("bounds", help="evaluate every bound for a state file; prints JSON")
    p.add_argument("--state", type=Path, required=True, help="state JSON file")
    p.add_argument("--bases", type=Path, default=None,
                   help="bases JSON file (default: built-in set for the state's dimension)")
    p.add_argument("--order", choices=("given", "optimal"), default="given",
                   help="measurement order for the LMF bound (default: given)")
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")

    p = sub.add_parser("mub", help="print a built-in measurement set as a bases JSON file")
    p.add_argument("--dim", type=int, choices=(2, 3), default=2,
                   help="2 for the Pauli bases, 3 for the qutrit MUB (default: 2)")
    p.add_argument("--out", type=Path, default=None, help="output file (default: stdout)")
    return parser


def _resolve_out(args, default_name):
    if args.out is not None:
        return args.out
    out_dir = os.environ.get(ENV_OUT_DIR)
    if out_dir and default_name:
        return Path(out_dir) / default_name
    return None


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    except OSError as exc:
        raise UsageError(f"{path}: cannot write output ({exc.strerror or exc})") from None


def _report_violations(violations):
    for v in violations[:20]:
        print(f"eurkit: violation at {v.key}: {v.relation} fails by {v.margin:.3e}", file=sys.stderr)
    if len(violations) > 20:
        print(f"eurkit: ... {len(violations) - 20} more", file=sys.stderr)
    return EXIT_VIOLATION if violations else EXIT_OK


def _cmd_sweep(args):
    sweep = werner_sweep if args.command == "werner" else bell_diagonal_sweep
    records = sweep(args.grid)
    _emit(sweep_csv(records, args.command, args.grid), _resolve_out(args, f"{args.command}.csv"))
    return _report_violations(violation_scan(records))


def _cmd_random(args):
    seed = args.seed
    if seed is None:
        env = os.environ.get(ENV_SEED)
        try:
            seed = _seed(env) if env is not None else 0
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{ENV_SEED}: {exc}") from None
    samples = args.samples if args.samples is not None else DEFAULT_SAMPLES[args.dim]
    records = random_ensemble(args.dim, samples, seed, workers=args.workers)
    name = f"random_d{args.dim}_n{samples}_s{seed}.csv"
    _emit(ensemble_csv(records, args.dim, samples, seed), _resolve_out(args, name))
    return _report_violations(violation_scan(records))


def _cmd_bounds(args):
    rho = load_state(args.state)
    if args.bases is not None:
        ms = load_bases(args.bases)
    else:
        try:
            ms = builtin_bases(rho.dA)
        except EurkitError as exc:
            raise InvariantError("dimension", str(exc), str(args.state)) from None
    if ms.dim != rho.dA:
        raise InvariantError(
            "dimension",
            f"bases have dimension {ms.dim} but subsystem A has dimension {rho.dA}",
            str(args.bases),
        )
    report = evaluate_all(rho, ms, order_mode=args.order)
    _emit(report_to_json(report) + "\n", args.out)
    if report.mub:
        return _report_violations(
            [Violation("state", f"{a}>={b}", m) for a, b, m in report.violations()]
        )
    return EXIT_OK


def _cmd_mub(args):
    _emit(dumps(bases_to_json(builtin_bases(args.dim)), indent=2) + "\n", args.out)
    return EXIT_OK


COMMANDS = {
    "werner": _cmd_sweep,
    "bell": _cmd_sweep,
    "random": _cmd_random,
    "bounds": _cmd_bounds,
    "mub": _cmd_mub,
}


def run(args) -> int:
    try:
        return COMMANDS[args.command](args)
    except (EurkitError, UsageError) as exc:
        print(f"eurkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
