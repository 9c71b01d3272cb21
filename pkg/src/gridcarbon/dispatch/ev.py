"""Model II: emissions-minimizing re-dispatch for EV charging."""

from __future__ import annotations

import logging
from collections.abc import Mapping

import numpy as np

from ..contracts import FLAG_UNBALANCED_LOSSES, BaseDispatch, EvDispatch
from ..errors import InfeasibleEvDemand, InputError
from ..grid.model import CHARGING_VOLTAGE_KV, GridCase
from ..lp import FEASIBILITY_TOL, OPTIMALITY_TOL, LinearProgram, LpBuilder
from ..ptdf import SystemPtdf, system_ptdf
from .base import HourlyLoads
from .formulation import (
    TONNES_PER_GWH_MWH,
    OperationalBlock,
    add_operational_block,
    bus_load_matrix,
    charging_stations,
    emissions_tonnes,
    reconstruct_flows,
)
from .network import is_relaxed, relax_network, solve_or_raise

logger = logging.getLogger(__name__)


def check_base(case: GridCase, base: BaseDispatch) -> None:
    """Raise InputError unless ``base`` was solved for ``case``'s generators."""
    expected = tuple(g.id for g in case.generators)
    if base.generator_ids != expected or base.p_star.shape != (len(expected), case.hours):
        raise InputError(
            f"base dispatch covers {len(base.generator_ids)} generators x "
            f"{base.p_star.shape[1] if base.p_star.ndim == 2 else 0} hours, "
            f"case {case.name} has {len(expected)} x {case.hours}"
        )


def _model_two(
    case: GridCase,
    hourly_loads: HourlyLoads,
    base: BaseDispatch,
    ev_demand: Mapping[str, float],
    ptdf: SystemPtdf | None,
    threshold_kv: float,
) -> tuple[LinearProgram, OperationalBlock, np.ndarray, SystemPtdf]:
    check_base(case, base)
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    loads = bus_load_matrix(case, hourly_loads)
    stations = charging_stations(case, ev_demand, threshold_kv=threshold_kv)
    lp = LpBuilder(f"{case.name}:model-two")
    block = add_operational_block(
        lp,
        case,
        ptdf,
        loads,
        base=base.p_star,
        stations=stations,
        ev_demand=ev_demand,
        unit_cost=[g.emission_t_per_gwh * TONNES_PER_GWH_MWH for g in case.generators],
    )
    lp.objective_constant = emissions_tonnes(case, base.p_star)
    return lp.build(), block, loads, ptdf


def build_model_two(
    case: GridCase,
    hourly_loads: HourlyLoads,
    base: BaseDispatch,
    ev_demand: Mapping[str, float],
    ptdf: SystemPtdf | None = None,
    *,
    threshold_kv: float = CHARGING_VOLTAGE_KV,
) -> LinearProgram:
    """Build the EV re-dispatch program.

    Variables are non-negative increments dp[g,t] on the base schedule and
    charging levels pv[k,t] at every eligible station of a county with
    demand. Balance, flow and ramp rows carry the base schedule in their
    right-hand sides; each county gets one energy equality row. The
    objective is total emissions in tonnes (base emissions enter as the
    objective constant).

    Args:
        case: Network the charging is placed on.
        hourly_loads: Base demand (buses x hours or bus id -> hourly MW).
        base: Model I result for the same case and loads.
        ev_demand: County FIPS -> charging energy per cycle, MWh.
        ptdf: System PTDF table; computed from ``case`` when omitted.
        threshold_kv: Charging stations sit on buses strictly below this.

    Raises:
        CountyHasNoEligibleBus: If a county with demand has no eligible bus.
    """
    return _model_two(case, hourly_loads, base, ev_demand, ptdf, threshold_kv)[0]


def solve_model_two(
    case: GridCase,
    hourly_loads: HourlyLoads,
    base: BaseDispatch,
    ev_demand: Mapping[str, float],
    ptdf: SystemPtdf | None = None,
    *,
    relaxed: bool = False,
    threshold_kv: float = CHARGING_VOLTAGE_KV,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
) -> EvDispatch:
    """Solve the EV re-dispatch.

    With ``relaxed`` the line limits are dropped while ``base`` is kept, so
    constrained and relaxed runs share one base schedule.

    Raises:
        InfeasibleEvDemand: If county energy cannot be delivered.
    """
    if relaxed:
        case = relax_network(case)
    problem, block, loads, ptdf = _model_two(
        case, hourly_loads, base, ev_demand, ptdf, threshold_kv
    )
    solution = solve_or_raise(
        problem,
        InfeasibleEvDemand,
        feasibility_tol=feasibility_tol,
        optimality_tol=optimality_tol,
    )

    delta_p = np.clip(solution.values[block.generation], 0.0, None)
    charging = np.clip(solution.values[block.charging], 0.0, None)
    stations = block.stations
    flows = reconstruct_flows(case, ptdf, base.p_star + delta_p, loads, charging, stations)

    dt = case.time_grid.dt_h
    delivered: dict[str, float] = {}
    for k, station in enumerate(stations):
        delivered[station.county] = delivered.get(station.county, 0.0) + float(
            charging[k].sum() * dt
        )
    residual = max(
        (abs(delivered.get(fips, 0.0) - e_c) for fips, e_c in ev_demand.items() if e_c > 0),
        default=0.0,
    )

    e_ev = emissions_tonnes(case, delta_p)
    dispatch = EvDispatch(
        generator_ids=tuple(g.id for g in case.generators),
        station_ids=tuple(s.bus for s in stations),
        station_counties=tuple(s.county for s in stations),
        line_ids=tuple(line.id for line in case.lines),
        delta_p=delta_p,
        charging=charging,
        flows=flows,
        e_ev_t=e_ev,
        objective_t=solution.objective_value,
        county_energy=delivered,
        county_energy_residual=residual,
        max_primal_residual=solution.max_primal_residual,
        relaxed=relaxed or is_relaxed(case),
        solution=solution,
        flags=(FLAG_UNBALANCED_LOSSES,) if case.loss_rate > 0 else (),
    )
    logger.info(
        "%s: EV emissions %.4f t over %d stations%s",
        case.name,
        e_ev,
        len(stations),
        " (relaxed)" if dispatch.relaxed else "",
    )
    return dispatch


def ev_emissions(case: GridCase, base: BaseDispatch, ev: EvDispatch) -> float:
    """Emissions attributable to EV charging, tonnes.

    Emissions of the re-dispatched schedule minus those of the base; with
    linear rates this equals the emissions of the increments alone.
    """
    check_base(case, base)
    return emissions_tonnes(case, base.p_star + ev.delta_p) - emissions_tonnes(
        case, base.p_star
    )
