"""Sweep command implementation."""

import argparse

from gridcarbon.cli.utils import handles_errors, load_study, print_summary, write_report


@handles_errors
def run_sweep(args: argparse.Namespace) -> int:
    """Execute the sweep command.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success, 3=input error). Failed scenario points are
        reported in the table rather than through the exit code.
    """
    from gridcarbon.io import RunResults, load_curves
    from gridcarbon.scenario import flat_curves, load_spec
    from gridcarbon.scenario import run_sweep as sweep

    bundle, config, case = load_study(args)
    spec = load_spec(args.spec, default_levels=config.renewable_targets)
    curves = load_curves(bundle)
    if not curves:
        flat = flat_curves(case)
        curves = {region: dict.fromkeys(range(1, 13), curve) for region, curve in flat.items()}

    rows = sweep(spec, case, curves, config.fleet(), workers=config.workers)
    summary = {
        "rows": len(rows),
        "failed": sum(row.status != "ok" for row in rows),
        "day_set": spec.day_set,
    }
    print_summary(summary)
    return write_report(
        args,
        config,
        RunResults(command="sweep", case=case, sweep=rows, summary=summary),
    )
