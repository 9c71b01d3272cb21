"""Annual totals and congestion-induced emissions."""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass

from ..contracts import FLAG_CALENDAR_WEIGHTS, AnnualResult, BaseDispatch
from ..dispatch import solve_model_one, solve_model_two
from ..dispatch.base import HourlyLoads
from ..errors import InputError
from ..fleet import vehicle_operational_emissions
from ..grid.model import GridCase
from ..ptdf import SystemPtdf, system_ptdf
from .days import MONTHLY_DAYS, StudyDay

logger = logging.getLogger(__name__)

# Differences above this (tonnes) are treated as numerical noise around zero.
CONGESTION_NOISE_T = 1e-6


@dataclass(frozen=True)
class DayOutcome:
    """Emissions of one study day.

    Attributes:
        label: Study day label.
        e_ev_t: EV charging emissions, tonnes per day.
        e_icv_t: ICV tailpipe emissions, tonnes per day.
        congestion_induced_t: Congestion-induced emissions, tonnes per day.
    """

    label: str
    e_ev_t: float
    e_icv_t: float = 0.0
    congestion_induced_t: float = 0.0


def annual_total(daily: Sequence[float], days: Sequence[StudyDay] = MONTHLY_DAYS) -> float:
    """Weight one value per study day by the calendar days it represents."""
    if len(daily) != len(days):
        raise InputError(f"{len(daily)} daily values for {len(days)} study days")
    return float(sum(value * day.weight for value, day in zip(daily, days, strict=True)))


def annualize(
    outcomes: Sequence[DayOutcome], days: Sequence[StudyDay] = MONTHLY_DAYS
) -> AnnualResult:
    """Annual emissions from per-day outcomes, weighted by calendar days.

    Raises:
        InputError: If outcomes and study days do not match one to one.
    """
    by_label: Mapping[str, DayOutcome] = {o.label: o for o in outcomes}
    if sorted(by_label) != sorted(day.label for day in days) or len(by_label) != len(outcomes):
        raise InputError(
            f"outcomes {sorted(by_label)} do not match study days "
            f"{[day.label for day in days]}"
        )
    ordered = [by_label[day.label] for day in days]
    e_ev = annual_total([o.e_ev_t for o in ordered], days)
    e_icv = annual_total([o.e_icv_t for o in ordered], days)
    return AnnualResult(
        e_ev_t=e_ev,
        e_icv_t=e_icv,
        e_v_t=vehicle_operational_emissions(e_ev, e_icv),
        congestion_induced_t=annual_total([o.congestion_induced_t for o in ordered], days),
        metadata={
            "flags": [FLAG_CALENDAR_WEIGHTS],
            "days": [day.label for day in days],
        },
    )


def clamp_congestion(difference: float) -> float:
    """Clamp a constrained-minus-relaxed difference that is zero up to noise."""
    if difference < 0:
        if difference < -CONGESTION_NOISE_T:
            logger.warning("relaxed network emits %.3e t more than constrained", -difference)
        else:
            return 0.0
    return difference


def congestion_induced(
    case: GridCase,
    hourly_loads: HourlyLoads,
    ev_demand: Mapping[str, float],
    *,
    base: BaseDispatch | None = None,
    ptdf: SystemPtdf | None = None,
) -> float:
    """EV emissions caused by line limits alone, tonnes.

    Solves the re-dispatch on the case and on its relaxed network, both on
    the same constrained base schedule, and returns the difference.
    """
    ptdf = ptdf if ptdf is not None else system_ptdf(case)
    if base is None:
        base = solve_model_one(case, hourly_loads, ptdf)
    constrained = solve_model_two(case, hourly_loads, base, ev_demand, ptdf)
    relaxed = solve_model_two(case, hourly_loads, base, ev_demand, ptdf, relaxed=True)
    return clamp_congestion(constrained.e_ev_t - relaxed.e_ev_t)
