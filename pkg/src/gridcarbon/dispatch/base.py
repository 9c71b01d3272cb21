"""Model I: cost-minimizing base dispatch over one operational cycle."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence

import numpy as np

from ..contracts import FLAG_UNBALANCED_LOSSES, BaseDispatch
from ..errors import InfeasibleBaseCase
from ..grid.model import GridCase
from ..lp import FEASIBILITY_TOL, OPTIMALITY_TOL, LinearProgram, LpBuilder
from ..ptdf import SystemPtdf, system_ptdf
from .formulation import (
    add_operational_block,
    bus_load_matrix,
    cost_dollars,
    emissions_tonnes,
    reconstruct_flows,
)
from .network import solve_or_raise

logger = logging.getLogger(__name__)

HourlyLoads = np.ndarray | Mapping[str, Sequence[float]]


def _model_one(
    case: GridCase, hourly_loads: HourlyLoads, ptdf: SystemPtdf | None
) -> tuple[LinearProgram, np.ndarray, np.ndarray, SystemPtdf]:
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    loads = bus_load_matrix(case, hourly_loads)
    lp = LpBuilder(f"{case.name}:model-one")
    block = add_operational_block(
        lp, case, ptdf, loads, unit_cost=[g.cost_per_mwh for g in case.generators]
    )
    return lp.build(), block.generation, loads, ptdf


def build_model_one(
    case: GridCase,
    hourly_loads: HourlyLoads,
    ptdf: SystemPtdf | None = None,
) -> LinearProgram:
    """Build the economic dispatch program.

    Variables are generator outputs p[g,t] bounded by hourly availability.
    Rows are the per-island energy balance with the loss factor on
    generation, two flow rows per limited line and hour, and cyclic ramp
    rows. The objective is total generation cost.

    Args:
        case: The study system.
        hourly_loads: Buses x hours array or mapping bus id -> hourly MW.
        ptdf: System PTDF table; computed from ``case`` when omitted.
    """
    return _model_one(case, hourly_loads, ptdf)[0]


def solve_model_one(
    case: GridCase,
    hourly_loads: HourlyLoads,
    ptdf: SystemPtdf | None = None,
    *,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
) -> BaseDispatch:
    """Solve the economic dispatch and reconstruct line flows.

    Raises:
        InfeasibleBaseCase: If load cannot be served within generation and
            line limits.
    """
    problem, positions, loads, ptdf = _model_one(case, hourly_loads, ptdf)
    solution = solve_or_raise(
        problem,
        InfeasibleBaseCase,
        feasibility_tol=feasibility_tol,
        optimality_tol=optimality_tol,
    )
    p_star = np.clip(solution.values[positions], 0.0, None)
    flows = reconstruct_flows(case, ptdf, p_star, loads)
    flags = (FLAG_UNBALANCED_LOSSES,) if case.loss_rate > 0 else ()
    dispatch = BaseDispatch(
        generator_ids=tuple(g.id for g in case.generators),
        line_ids=tuple(line.id for line in case.lines),
        p_star=p_star,
        flows=flows,
        bus_loads=loads,
        cost_total=cost_dollars(case, p_star),
        emissions_total_t=emissions_tonnes(case, p_star),
        slack_buses=ptdf.slack_buses,
        solution=solution,
        flags=flags,
    )
    logger.info(
        "%s: base cost $%.2f, emissions %.4f t",
        case.name,
        dispatch.cost_total,
        dispatch.emissions_total_t,
    )
    return dispatch


def emission_rate(dispatch: BaseDispatch, case: GridCase) -> float:
    """Average emission intensity of a base dispatch, t/GWh.

    Returns 0.0 when nothing is generated.
    """
    energy_mwh = float(dispatch.p_star.sum()) * case.time_grid.dt_h
    if energy_mwh <= 0:
        return 0.0
    return dispatch.emissions_total_t / energy_mwh * 1000.0
