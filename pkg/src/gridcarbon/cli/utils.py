"""Helpers shared by the gridcarbon commands.

Commands load a bundle, resolve the run configuration, run one study and
hand the results to the report writer. Errors are mapped to exit codes:

    0  success
    1  any other failure
    2  infeasible model
    3  input or network error
"""

from __future__ import annotations

import argparse
import functools
import logging
import sys
from collections.abc import Callable, Mapping
from pathlib import Path
from typing import Any

import numpy as np

from gridcarbon.errors import GridCarbonError, InfeasibleModel, InputError, NetworkError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INFEASIBLE = 2
EXIT_INPUT = 3


def error_exit(message: str, code: int = EXIT_FAILURE) -> int:
    """Print error message to stderr and return exit code.

    Args:
        message: Error message to display.
        code: Exit code to return (default: 1).

    Returns:
        The exit code for use in return statements.
    """
    print(f"Error: {message}", file=sys.stderr)
    return code


def exit_code_for(error: Exception) -> int:
    if isinstance(error, InfeasibleModel):
        return EXIT_INFEASIBLE
    if isinstance(error, InputError | NetworkError):
        return EXIT_INPUT
    return EXIT_FAILURE


def handles_errors(command: Callable[[argparse.Namespace], int]) -> Callable[[argparse.Namespace], int]:
    """Turn gridcarbon errors raised by a command into exit codes."""

    @functools.wraps(command)
    def wrapper(args: argparse.Namespace) -> int:
        try:
            return command(args)
        except GridCarbonError as e:
            logger.debug("command failed", exc_info=True)
            return error_exit(str(e), exit_code_for(e))

    return wrapper


def configure_logging(verbosity: int) -> None:
    """WARNING by default, INFO with -v, DEBUG with -vv; always to stderr."""
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def config_overrides(args: argparse.Namespace, **extra: Any) -> dict[str, Any]:
    """Configuration values given explicitly on the command line."""
    values: dict[str, Any] = {
        "out_dir": getattr(args, "out", None),
        "workers": getattr(args, "workers", None),
    }
    values.update(extra)
    return {key: value for key, value in values.items() if value is not None}


def load_study(args: argparse.Namespace, **overrides: Any):
    """Open the bundle named on the command line and load its case.

    Returns:
        (bundle, config, case)
    """
    from gridcarbon.io import CaseBundle, load_case, load_config

    bundle = CaseBundle.at(args.bundle)
    config = load_config(
        bundle.config_path,
        getattr(args, "config", None),
        overrides=config_overrides(args, **overrides),
    )
    case = load_case(bundle, config)
    logger.info(
        "loaded %s: %d buses, %d lines, %d generators",
        case.name,
        len(case.buses),
        len(case.lines),
        len(case.generators),
    )
    return bundle, config, case


def study_loads(bundle, case, day) -> np.ndarray:
    """Bus x hour demand of a study day.

    Bundles without regional_curves.csv dispatch every load at its peak.
    """
    from gridcarbon.io import load_curves
    from gridcarbon.scenario import day_curves, flat_curves, scale_bus_loads

    curves = load_curves(bundle)
    if not curves:
        return scale_bus_loads(case, flat_curves(case))
    return scale_bus_loads(case, day_curves(curves, day))


def study_days(config, month: int | None = None):
    """Study days selected by ``--month`` or by the configuration."""
    from gridcarbon.scenario import day_set

    if month is not None:
        return day_set("months", [month])
    return day_set(config.day_set, config.months)


def dump_lp(args: argparse.Namespace, out_dir: str, problem) -> None:
    """Write the LP text dump when --dump-lp was given."""
    if not getattr(args, "dump_lp", False):
        return
    from gridcarbon.lp import write_lp_text

    path = write_lp_text(problem, Path(out_dir) / "model.lp")
    print(f"Wrote {path}")


def write_report(
    args: argparse.Namespace,
    config,
    results,
) -> int:
    """Emit the report of a run and list the written files."""
    from gridcarbon.io import emit_report

    results.config = config.to_dict()
    written = emit_report(results, config.out_dir, fmt=getattr(args, "format", "csv"))
    for path in written:
        print(f"Wrote {path}")
    return EXIT_OK


def print_summary(summary: Mapping[str, Any]) -> None:
    for key in sorted(summary):
        print(f"{key}: {summary[key]}")
