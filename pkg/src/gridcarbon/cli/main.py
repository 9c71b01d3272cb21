"""Main CLI entry point for gridcarbon."""

import argparse
import sys

from gridcarbon.cli.commands import (
    run_dispatch,
    run_ev_dispatch,
    run_ptdf,
    run_sweep,
    run_synth,
    run_upgrade,
    run_validate,
    run_version,
)
from gridcarbon.cli.utils import configure_logging


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress (-v for info, -vv for debug) to stderr",
    )
    common.add_argument(
        "--config",
        help="Run configuration file (flat YAML), applied after the bundle's config.yaml",
    )
    common.add_argument(
        "-o",
        "--out",
        help="Output directory (default: out, or out_dir from the configuration)",
    )
    return common


def _study_options() -> argparse.ArgumentParser:
    study = argparse.ArgumentParser(add_help=False)
    study.add_argument("bundle", help="Case bundle directory")
    study.add_argument(
        "-f",
        "--format",
        choices=["csv", "json"],
        default="csv",
        help="Table format of the report (default: csv)",
    )
    study.add_argument(
        "--dump-lp",
        action="store_true",
        help="Write the linear program as text to model.lp in the output directory",
    )
    study.add_argument(
        "--workers",
        type=int,
        help="Processes for per-day and per-scenario solves",
    )
    return study


def create_parser() -> argparse.ArgumentParser:
    """Create the argument parser with all subcommands.

    Returns:
        Configured ArgumentParser instance.
    """
    parser = argparse.ArgumentParser(
        prog="gridcarbon",
        description="DC power-flow emissions planning for fleet electrification.",
    )
    common = _common_options()
    study = _study_options()

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    # version command
    version_parser = subparsers.add_parser("version", help="Show version information")
    version_parser.add_argument(
        "--libraries",
        action="store_true",
        help="Also list the versions of the numerical libraries",
    )

    # validate command
    validate_parser = subparsers.add_parser(
        "validate", parents=[common], help="Check a case bundle against the validation rules"
    )
    validate_parser.add_argument("bundle", help="Case bundle directory")
    validate_parser.add_argument(
        "--rules",
        help="Comma-separated rule codes to run (default: all)",
    )
    validate_parser.add_argument(
        "--exclude",
        help="Comma-separated rule codes to skip",
    )
    validate_parser.add_argument(
        "-f",
        "--format",
        choices=["text", "json"],
        default="text",
        help="Output format (default: text)",
    )

    # ptdf command
    ptdf_parser = subparsers.add_parser(
        "ptdf", parents=[common, study], help="Compute power transfer distribution factors"
    )
    ptdf_parser.add_argument(
        "--dump",
        action="store_true",
        help="Write the full table to ptdf.csv",
    )

    # dispatch command
    dispatch_parser = subparsers.add_parser(
        "dispatch", parents=[common, study], help="Cost-minimizing base dispatch of one day"
    )
    dispatch_parser.add_argument(
        "--month",
        type=int,
        required=True,
        help="Month (1-12) whose representative day is dispatched",
    )

    # ev-dispatch command
    ev_parser = subparsers.add_parser(
        "ev-dispatch",
        parents=[common, study],
        help="Emissions-minimizing re-dispatch serving EV charging",
    )
    ev_parser.add_argument(
        "--penetration",
        type=float,
        required=True,
        help="EV penetration in [0, 1]",
    )
    ev_parser.add_argument(
        "--month",
        type=int,
        default=7,
        help="Month (1-12) whose representative day is dispatched (default: 7)",
    )
    ev_parser.add_argument(
        "--relaxed",
        action="store_true",
        help="Ignore line capacity limits",
    )

    # upgrade command
    upgrade_parser = subparsers.add_parser(
        "upgrade",
        parents=[common, study],
        help="Minimum MW-mile line upgrades meeting an EV emission cap",
    )
    upgrade_parser.add_argument(
        "--emax",
        type=float,
        required=True,
        help="Cap on EV charging emissions per day, tonnes",
    )
    upgrade_parser.add_argument(
        "--penetration",
        type=float,
        help="EV penetration in [0, 1] (default: from the configuration)",
    )
    upgrade_parser.add_argument(
        "--month",
        type=int,
        help="Study a single month (default: the configured day set)",
    )
    upgrade_parser.add_argument(
        "--per-day-envelope",
        action="store_true",
        help="Solve each day alone and keep the largest increment per line",
    )

    # sweep command
    sweep_parser = subparsers.add_parser(
        "sweep",
        parents=[common, study],
        help="Penetration x renewable-level scenario sweep",
    )
    sweep_parser.add_argument(
        "--spec",
        required=True,
        help="Scenario file (YAML)",
    )

    # synth command
    synth_parser = subparsers.add_parser(
        "synth", parents=[common], help="Write a synthetic case bundle"
    )
    synth_parser.add_argument(
        "--template",
        choices=["ring", "star", "mesh", "two-area"],
        default="ring",
        help="Network template (default: ring)",
    )
    synth_parser.add_argument(
        "--buses",
        type=int,
        default=3,
        help="Number of buses (default: 3)",
    )
    synth_parser.add_argument(
        "--seed",
        type=int,
        help="Random seed (default: seed from the configuration, 0)",
    )
    synth_parser.add_argument(
        "--hours",
        type=int,
        default=24,
        help="Hours per operational cycle (default: 24)",
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI.

    Args:
        argv: Command-line arguments (default: sys.argv[1:]).

    Returns:
        Exit code.
    """
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 0

    configure_logging(getattr(args, "verbose", 0))

    # Dispatch to command handlers
    handlers = {
        "version": run_version,
        "validate": run_validate,
        "ptdf": run_ptdf,
        "dispatch": run_dispatch,
        "ev-dispatch": run_ev_dispatch,
        "upgrade": run_upgrade,
        "sweep": run_sweep,
        "synth": run_synth,
    }

    handler = handlers.get(args.command)
    if handler:
        return handler(args)

    parser.print_help()
    return 1


if __name__ == "__main__":
    sys.exit(main())
