"""Dispatch command implementation (economic dispatch)."""

import argparse

from gridcarbon.cli.utils import (
    dump_lp,
    handles_errors,
    load_study,
    print_summary,
    study_days,
    study_loads,
    write_report,
)


@handles_errors
def run_dispatch(args: argparse.Namespace) -> int:
    """Execute the dispatch command.

    Solves the cost-minimizing dispatch of one representative day.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success, 2=infeasible, 3=input error).
    """
    from gridcarbon.dispatch import build_model_one, emission_rate, solve_model_one
    from gridcarbon.io import RunResults
    from gridcarbon.ptdf import system_ptdf

    bundle, config, case = load_study(args)
    (day,) = study_days(config, args.month)
    loads = study_loads(bundle, case, day)
    ptdf = system_ptdf(case)
    dump_lp(args, config.out_dir, build_model_one(case, loads, ptdf))

    base = solve_model_one(
        case,
        loads,
        ptdf,
        feasibility_tol=config.feasibility_tol,
        optimality_tol=config.optimality_tol,
    )
    summary = {
        "day": day.label,
        "cost_total": base.cost_total,
        "emissions_total_t": base.emissions_total_t,
        "emission_rate_t_per_gwh": emission_rate(base, case),
        "iterations": base.solution.iterations if base.solution else 0,
    }
    print_summary(summary)
    return write_report(
        args,
        config,
        RunResults(command="dispatch", case=case, base=base, summary=summary),
    )
