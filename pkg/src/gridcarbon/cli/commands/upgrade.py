"""Upgrade command implementation (minimum MW-mile line upgrades)."""

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
def run_upgrade(args: argparse.Namespace) -> int:
    """Execute the upgrade command.

    Every study day is dispatched at base, then the cheapest line capacity
    increments keeping each day's EV emissions under ``--emax`` are found,
    jointly across days or per day followed by the elementwise maximum.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success, 2=cap unreachable, 3=input error).
    """
    from gridcarbon.dispatch import (
        UpgradeDay,
        UpgradeMode,
        build_model_three,
        plan_upgrades,
        solve_model_one,
        upgrade_share,
    )
    from gridcarbon.fleet import case_county_demands, ev_demand_map
    from gridcarbon.io import RunResults
    from gridcarbon.ptdf import system_ptdf

    bundle, config, case = load_study(args, penetration=args.penetration)
    ptdf = system_ptdf(case)
    tolerances = {
        "feasibility_tol": config.feasibility_tol,
        "optimality_tol": config.optimality_tol,
    }
    ev_demand = ev_demand_map(case_county_demands(case, config.fleet()))

    days = []
    for day in study_days(config, args.month):
        loads = study_loads(bundle, case, day)
        base = solve_model_one(case, loads, ptdf, **tolerances)
        days.append(UpgradeDay(day.label, loads, base, ev_demand))

    dump_lp(
        args,
        config.out_dir,
        build_model_three(
            case,
            days,
            args.emax,
            ptdf,
            charging_kv=config.charging_kv,
            upgrade_kv=config.upgrade_kv,
        ),
    )
    mode = UpgradeMode.ENVELOPE if args.per_day_envelope else UpgradeMode.JOINT
    plan = plan_upgrades(
        case,
        days,
        args.emax,
        mode=mode,
        ptdf=ptdf,
        charging_kv=config.charging_kv,
        upgrade_kv=config.upgrade_kv,
        workers=config.workers,
        **tolerances,
    )
    summary = {
        "mode": str(mode),
        "days": [d.label for d in days],
        "e_ev_max_t": args.emax,
        "objective_mw_mile": plan.objective_mw_mile,
        "achieved_e_ev_t": list(plan.achieved_e_ev_t),
        "upgraded_lines": list(plan.binding_lines),
        "upgrade_share": upgrade_share(case, plan, upgrade_kv=config.upgrade_kv),
    }
    print_summary(summary)
    return write_report(
        args,
        config,
        RunResults(command="upgrade", case=case, plan=plan, summary=summary),
    )
