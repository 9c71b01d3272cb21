"""Synth command implementation."""

import argparse

from gridcarbon.cli.utils import config_overrides, handles_errors


@handles_errors
def run_synth(args: argparse.Namespace) -> int:
    """Execute the synth command.

    Writes a synthetic case bundle, with monthly regional curves, to the
    output directory.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success, 3=bad template or size).
    """
    from gridcarbon.io import load_config, synth_case, synth_curves, write_case

    config = load_config(args.config, overrides=config_overrides(args, seed=args.seed))
    case = synth_case(
        args.template,
        args.buses,
        config.seed,
        hours=args.hours,
        wind_rated_speed=config.wind_rated_speed,
    )
    bundle = write_case(case, config.out_dir, curves=synth_curves(case, config.seed))
    print(
        f"Wrote {case.name} to {bundle.root} "
        f"({len(case.buses)} buses, {len(case.lines)} lines, {len(case.generators)} generators)"
    )
    return 0
