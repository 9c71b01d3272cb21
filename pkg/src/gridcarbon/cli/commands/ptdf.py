"""PTDF command implementation."""

import argparse

from gridcarbon.cli.utils import handles_errors, load_study, print_summary, write_report


@handles_errors
def run_ptdf(args: argparse.Namespace) -> int:
    """Execute the ptdf command.

    Computes the PTDF table of every island; ``--dump`` adds ptdf.csv to
    the report.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success).
    """
    from gridcarbon.io import RunResults
    from gridcarbon.ptdf import system_ptdf

    _, config, case = load_study(args)
    ptdf = system_ptdf(case)
    summary = {
        "islands": len(ptdf.islands),
        "lines": len(ptdf.line_ids),
        "buses": len(ptdf.bus_ids),
        "slack_buses": list(ptdf.slack_buses),
        "max_abs_ptdf": float(abs(ptdf.values).max()) if ptdf.values.size else 0.0,
    }
    print_summary(summary)
    return write_report(
        args,
        config,
        RunResults(
            command="ptdf",
            case=case,
            ptdf=ptdf if args.dump else None,
            summary=summary,
        ),
    )
