"""EV dispatch command implementation (emissions-minimizing re-dispatch)."""

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
def run_ev_dispatch(args: argparse.Namespace) -> int:
    """Execute the ev-dispatch command.

    Dispatches the base day, then serves county EV energy at minimum
    emissions on the constrained (or, with ``--relaxed``, unlimited)
    network.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=success, 2=infeasible, 3=input error).
    """
    from gridcarbon.dispatch import (
        build_model_two,
        relax_network,
        solve_model_one,
        solve_model_two,
    )
    from gridcarbon.fleet import (
        DAYS_PER_YEAR,
        case_county_demands,
        ev_demand_map,
        icv_emissions_annual,
    )
    from gridcarbon.io import RunResults
    from gridcarbon.ptdf import system_ptdf

    bundle, config, case = load_study(
        args,
        penetration=args.penetration,
        relaxed=True if args.relaxed else None,
    )
    (day,) = study_days(config, args.month)
    loads = study_loads(bundle, case, day)
    ptdf = system_ptdf(case)
    tolerances = {
        "feasibility_tol": config.feasibility_tol,
        "optimality_tol": config.optimality_tol,
    }

    fleet = config.fleet()
    demands = case_county_demands(case, fleet)
    ev_demand = ev_demand_map(demands)
    base = solve_model_one(case, loads, ptdf, **tolerances)
    network = relax_network(case) if config.relaxed else case
    dump_lp(
        args,
        config.out_dir,
        build_model_two(network, loads, base, ev_demand, ptdf, threshold_kv=config.charging_kv),
    )
    ev = solve_model_two(
        case,
        loads,
        base,
        ev_demand,
        ptdf,
        relaxed=config.relaxed,
        threshold_kv=config.charging_kv,
        **tolerances,
    )

    e_icv_day = icv_emissions_annual(demands, fleet) / DAYS_PER_YEAR
    summary = {
        "day": day.label,
        "penetration": fleet.penetration,
        "relaxed": ev.relaxed,
        "ev_energy_mwh": sum(ev_demand.values()),
        "e_ev_t": ev.e_ev_t,
        "e_icv_t": e_icv_day,
        "e_v_t": ev.e_ev_t + e_icv_day,
        "objective_t": ev.objective_t,
        "county_energy_residual_mwh": ev.county_energy_residual,
    }
    print_summary(summary)
    return write_report(
        args,
        config,
        RunResults(command="ev-dispatch", case=case, base=base, ev=ev, summary=summary),
    )
