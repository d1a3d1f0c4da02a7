#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Command-line interface: "knapwin run" replays a stream through one
algorithm, "knapwin gen" writes a synthetic stream, and "knapwin verify"
runs the randomized property checks.
"""

# Standard libs
import argparse
import logging
import pathlib
import sys
from typing import List, Optional

# User-defined libs
from knapwin.harness.experiment import SUPPORTED_ALGORITHMS, run_experiment
from knapwin.harness.generators import generate_records, write_records
from knapwin.harness.verification import load_verification_config, run_verification
from knapwin.utilities import SUPPORTED_UTILITIES
from knapwin.utils.errors import KnapwinError
from knapwin.utils.setup_logger import setup_logger

LOGGER = logging.getLogger(__name__)


def _add_logging_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--log-level",
        type=int,
        choices=[0, 1, 2, 3],
        default=2,
        help="0: off, 1: warning, 2: info, 3: debug (default: 2)",
    )
    parser.add_argument("--log-file", type=pathlib.Path, default=None, help="Log file")


def build_parser() -> argparse.ArgumentParser:
    """Returns the parser of all subcommands"""
    parser = argparse.ArgumentParser(
        prog="knapwin",
        description="Representative subset selection over sliding windows "
        "under d-knapsack constraints.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="Replay a stream through one algorithm")
    run.add_argument("--algo", choices=SUPPORTED_ALGORITHMS, default="kwplus")
    run.add_argument("--utility", choices=SUPPORTED_UTILITIES, default="ivm")
    run.add_argument("--window", type=int, required=True, help="Window size W")
    run.add_argument("--slide", type=int, default=None, help="Slide T [default: ceil(0.0001 W)]")
    run.add_argument("--interval", type=int, default=None, help="Checkpoint interval L of kw")
    run.add_argument("--lambda", dest="lam", type=float, default=0.1)
    run.add_argument("--beta", type=float, default=0.1)
    run.add_argument("--alpha", type=float, default=0.5)
    run.add_argument("--eta", type=int, default=20)
    run.add_argument("--d", type=int, default=1, help="Number of knapsacks")
    run.add_argument("--costs", default=None, help="Cost schemes, e.g. 'uniform_k(10);length(10)'")
    run.add_argument("--cost-scale", type=float, default=1.0)
    source = run.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", default=None, help="JSONL or CSV stream file")
    source.add_argument("--gen", default=None, help="Generator specification (JSON or file)")
    run.add_argument("--format", choices=["jsonl", "csv"], default=None)
    run.add_argument("--csv-has-costs", action="store_true")
    run.add_argument("--vocabulary", default=None, help="word<TAB>probability file")
    run.add_argument("--binary-words", action="store_true")
    run.add_argument("--sigma", type=float, default=1.0)
    run.add_argument("--bandwidth", type=float, default=0.75)
    run.add_argument("--max-workers", type=int, default=0)
    run.add_argument("--debug", action="store_true", help="Check invariants after every element")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", default=None, help="Metrics CSV file")
    _add_logging_arguments(run)

    gen = commands.add_parser("gen", help="Write a synthetic stream as JSONL")
    gen.add_argument("--spec", required=True, help="Generator specification (JSON or file)")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="Output JSONL file")
    _add_logging_arguments(gen)

    verify = commands.add_parser("verify", help="Run the randomized property checks")
    verify.add_argument("--config", default=None, help="JSON file overriding trial counts")
    verify.add_argument("--skip-trends", action="store_true", help="Skip the trend checks")
    _add_logging_arguments(verify)
    return parser


def _run(args) -> int:
    result = run_experiment(
        algorithm=args.algo,
        utility=args.utility,
        window_size=args.window,
        slide=args.slide,
        interval=args.interval,
        lam=args.lam,
        beta=args.beta,
        alpha=args.alpha,
        eta=args.eta,
        d=args.d,
        costs=args.costs,
        cost_scale=args.cost_scale,
        input_path=args.input,
        input_format=args.format,
        csv_has_costs=args.csv_has_costs,
        generator=args.gen,
        vocabulary=args.vocabulary,
        binary_words=args.binary_words,
        sigma=args.sigma,
        bandwidth=args.bandwidth,
        max_workers=args.max_workers,
        debug=args.debug,
        seed=args.seed,
        output_path=args.out,
    )
    if args.out is None:
        print(result.summary)
    return 0


def _gen(args) -> int:
    write_records(generate_records(args.spec, args.seed), args.out)
    return 0


def _verify(args) -> int:
    overrides = {"trends": False} if args.skip_trends else {}
    reports = run_verification(load_verification_config(args.config, **overrides))
    for report in reports:
        print(report)
    return 0 if all(report.passed for report in reports) else 1


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the knapwin command; returns the exit status"""
    args = build_parser().parse_args(argv)
    setup_logger(
        args.log_level,
        log_to_console=True,
        log_file=args.log_file,
    )
    handlers = {"run": _run, "gen": _gen, "verify": _verify}
    try:
        return handlers[args.command](args)
    except (KnapwinError, ValueError, FileNotFoundError) as err:
        print(f"knapwin: error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
