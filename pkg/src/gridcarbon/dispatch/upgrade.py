"""Model III: minimum MW-mile line upgrades meeting an EV emission cap.

Each representative day contributes its own re-dispatch and charging
variables; line increments dF[l] are shared by every day of a joint
solve. The per-day-then-envelope mode solves each day alone and keeps the
largest increment per line.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import StrEnum

import numpy as np

from ..contracts import (
    FLAG_CAP_WITHOUT_LOSS,
    FLAG_UPGRADE_BALANCE_WITH_LOSS,
    BaseDispatch,
    UpgradePlan,
)
from ..errors import InfeasibleTarget, InputError
from ..grid.model import CHARGING_VOLTAGE_KV, UPGRADE_VOLTAGE_KV, GridCase
from ..grid.topology import is_upgradable
from ..lp import FEASIBILITY_TOL, OPTIMALITY_TOL, LinearProgram, LpBuilder, Relation
from ..ptdf import SystemPtdf, system_ptdf
from .base import HourlyLoads
from .ev import check_base
from .formulation import (
    TONNES_PER_GWH_MWH,
    OperationalBlock,
    add_operational_block,
    bus_load_matrix,
    charging_stations,
    emissions_tonnes,
)
from .network import solve_or_raise

logger = logging.getLogger(__name__)

UPGRADE_FLAGS = (FLAG_CAP_WITHOUT_LOSS, FLAG_UPGRADE_BALANCE_WITH_LOSS)

# Per-MW cost floor of an increment, in miles; zero-length lines pay it.
MIN_UPGRADE_COST_MI = 1e-3


class UpgradeMode(StrEnum):
    """How a day set is combined into one plan."""

    JOINT = "joint"
    ENVELOPE = "envelope"


@dataclass(frozen=True, eq=False)
class UpgradeDay:
    """One representative day of an upgrade study.

    Attributes:
        label: Day label used in variable names (e.g. "m01", "JJA").
        hourly_loads: Base demand, buses x hours or bus id -> hourly MW.
        base: Model I result for the day.
        ev_demand: County FIPS -> charging energy for the day, MWh.
    """

    label: str
    hourly_loads: HourlyLoads
    base: BaseDispatch
    ev_demand: Mapping[str, float]


def _model_three(
    case: GridCase,
    days: Sequence[UpgradeDay],
    e_ev_max: float,
    ptdf: SystemPtdf,
    charging_kv: float,
    upgrade_kv: float,
) -> tuple[LinearProgram, dict[str, int], list[OperationalBlock]]:
    if not days:
        raise InputError("an upgrade study needs at least one day")
    lp = LpBuilder(f"{case.name}:model-three")

    increments: dict[str, int] = {}
    upgrade_names: dict[str, str] = {}
    for line in case.lines:
        if is_upgradable(line, threshold_kv=upgrade_kv) and math.isfinite(line.capacity_mw):
            increments[line.id] = lp.variable_count
            upgrade_names[line.id] = lp.add_variable(
                f"dF[{line.id}]", cost=max(line.length_mi, MIN_UPGRADE_COST_MI)
            )

    rates = [g.emission_t_per_gwh * TONNES_PER_GWH_MWH for g in case.generators]
    dt = case.time_grid.dt_h
    blocks = []
    for day in days:
        check_base(case, day.base)
        prefix = f"{day.label}:" if len(days) > 1 else ""
        block = add_operational_block(
            lp,
            case,
            ptdf,
            bus_load_matrix(case, day.hourly_loads),
            base=day.base.p_star,
            stations=charging_stations(case, day.ev_demand, threshold_kv=charging_kv),
            ev_demand=day.ev_demand,
            line_upgrades=upgrade_names,
            prefix=prefix,
        )
        # Cap on EV emissions, written on increments without the loss factor.
        names = lp.names
        lp.add_row(
            f"{prefix}emission_cap",
            [
                (names[block.generation[g, t]], rates[g] * dt)
                for g in range(len(case.generators))
                for t in range(case.hours)
                if rates[g] != 0.0
            ],
            Relation.LE,
            e_ev_max,
        )
        blocks.append(block)
    return lp.build(), increments, blocks


def build_model_three(
    case: GridCase,
    days: Sequence[UpgradeDay],
    e_ev_max: float,
    ptdf: SystemPtdf | None = None,
    *,
    charging_kv: float = CHARGING_VOLTAGE_KV,
    upgrade_kv: float = UPGRADE_VOLTAGE_KV,
) -> LinearProgram:
    """Build the joint upgrade program over a day set.

    Lines at or below ``upgrade_kv`` get no increment variable, so their
    increment is zero by construction. Each increment costs its line length
    per MW, at least ``MIN_UPGRADE_COST_MI``; the reported MW-mile total
    uses the true lengths.
    """
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    return _model_three(case, days, e_ev_max, ptdf, charging_kv, upgrade_kv)[0]


def solve_model_three(
    case: GridCase,
    days: Sequence[UpgradeDay],
    e_ev_max: float,
    ptdf: SystemPtdf | None = None,
    *,
    charging_kv: float = CHARGING_VOLTAGE_KV,
    upgrade_kv: float = UPGRADE_VOLTAGE_KV,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
) -> UpgradePlan:
    """Find the minimum MW-mile upgrade keeping each day's EV emissions under a cap.

    Args:
        case: The study system.
        days: Representative days sharing the increments.
        e_ev_max: Cap on EV emissions per day, tonnes.
        ptdf: System PTDF table; computed from ``case`` when omitted.
        charging_kv: Charging stations sit on buses strictly below this.
        upgrade_kv: Only lines strictly above this may be upgraded.

    Raises:
        InfeasibleTarget: If no upgrade of eligible lines reaches the cap.
    """
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    problem, increments, blocks = _model_three(
        case, days, e_ev_max, ptdf, charging_kv, upgrade_kv
    )
    solution = solve_or_raise(
        problem,
        InfeasibleTarget,
        feasibility_tol=feasibility_tol,
        optimality_tol=optimality_tol,
    )

    delta_f = np.zeros(len(case.lines))
    for line_id, index in increments.items():
        delta_f[case.line_index[line_id]] = max(float(solution.values[index]), 0.0)
    lengths = np.array([line.length_mi for line in case.lines], dtype=float)
    achieved = tuple(
        emissions_tonnes(case, np.clip(solution.values[block.generation], 0.0, None))
        for block in blocks
    )
    plan = UpgradePlan(
        line_ids=tuple(line.id for line in case.lines),
        delta_f=delta_f,
        lengths_mi=lengths,
        objective_mw_mile=float(delta_f @ lengths),
        achieved_e_ev_t=achieved,
        e_ev_max_t=e_ev_max,
        flags=UPGRADE_FLAGS,
    )
    logger.info(
        "%s: upgrade %.3f MW-mile over %d lines for cap %.4f t",
        case.name,
        plan.objective_mw_mile,
        len(plan.binding_lines),
        e_ev_max,
    )
    return plan


def upgrade_envelope(plans: Sequence[UpgradePlan]) -> UpgradePlan:
    """Combine per-day plans by keeping the largest increment per line.

    Raises:
        InputError: If no plans are given or they cover different lines.
    """
    if not plans:
        raise InputError("upgrade envelope of no plans")
    first = plans[0]
    for plan in plans[1:]:
        if plan.line_ids != first.line_ids:
            raise InputError("upgrade plans cover different line sets")
    delta_f = np.max(np.vstack([plan.delta_f for plan in plans]), axis=0)
    return UpgradePlan(
        line_ids=first.line_ids,
        delta_f=delta_f,
        lengths_mi=first.lengths_mi,
        objective_mw_mile=float(delta_f @ first.lengths_mi),
        achieved_e_ev_t=tuple(e for plan in plans for e in plan.achieved_e_ev_t),
        e_ev_max_t=max(plan.e_ev_max_t for plan in plans),
        flags=first.flags,
    )


def _solve_single_day(args: tuple) -> UpgradePlan:
    case, day, e_ev_max, ptdf, charging_kv, upgrade_kv, tolerances = args
    return solve_model_three(
        case, [day], e_ev_max, ptdf, charging_kv=charging_kv, upgrade_kv=upgrade_kv, **tolerances
    )


def plan_upgrades(
    case: GridCase,
    days: Sequence[UpgradeDay],
    e_ev_max: float,
    *,
    mode: UpgradeMode | str = UpgradeMode.JOINT,
    ptdf: SystemPtdf | None = None,
    charging_kv: float = CHARGING_VOLTAGE_KV,
    upgrade_kv: float = UPGRADE_VOLTAGE_KV,
    workers: int = 1,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
) -> UpgradePlan:
    """Solve an upgrade study jointly or per day followed by the envelope.

    Per-day solves run in ``workers`` processes when ``workers > 1``;
    results are combined in day order.
    """
    mode = UpgradeMode(mode)
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    tolerances = {"feasibility_tol": feasibility_tol, "optimality_tol": optimality_tol}
    if mode is UpgradeMode.JOINT:
        return solve_model_three(
            case,
            days,
            e_ev_max,
            ptdf,
            charging_kv=charging_kv,
            upgrade_kv=upgrade_kv,
            **tolerances,
        )
    args = [(case, day, e_ev_max, ptdf, charging_kv, upgrade_kv, tolerances) for day in days]
    if workers > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            plans = list(executor.map(_solve_single_day, args))
    else:
        plans = [_solve_single_day(a) for a in args]
    return upgrade_envelope(plans)


def upgrade_frontier(
    case: GridCase,
    days: Sequence[UpgradeDay],
    caps: Sequence[float],
    *,
    mode: UpgradeMode | str = UpgradeMode.JOINT,
    ptdf: SystemPtdf | None = None,
    charging_kv: float = CHARGING_VOLTAGE_KV,
    upgrade_kv: float = UPGRADE_VOLTAGE_KV,
) -> list[tuple[float, UpgradePlan | None]]:
    """Minimum upgrade for each emission cap, in the order given.

    Caps that no upgrade can reach map to None.
    """
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    frontier: list[tuple[float, UpgradePlan | None]] = []
    for cap in caps:
        try:
            plan = plan_upgrades(
                case,
                days,
                cap,
                mode=mode,
                ptdf=ptdf,
                charging_kv=charging_kv,
                upgrade_kv=upgrade_kv,
            )
        except InfeasibleTarget:
            logger.info("%s: cap %.4f t unreachable", case.name, cap)
            plan = None
        frontier.append((cap, plan))
    return frontier


def upgrade_share(
    case: GridCase, plan: UpgradePlan, *, upgrade_kv: float = UPGRADE_VOLTAGE_KV
) -> float:
    """Upgrade as a fraction of installed MW-mile on eligible lines.

    Returns 0.0 when no eligible line has finite capacity.
    """
    installed = sum(
        line.capacity_mw * line.length_mi
        for line in case.lines
        if is_upgradable(line, threshold_kv=upgrade_kv) and math.isfinite(line.capacity_mw)
    )
    if installed <= 0:
        return 0.0
    return plan.objective_mw_mile / installed
