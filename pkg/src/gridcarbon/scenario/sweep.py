"""Penetration x renewable-level sweeps over constrained and relaxed networks."""

from __future__ import annotations

import dataclasses
import logging
import math
from collections.abc import Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

from ..contracts import SweepRow
from ..dispatch import solve_model_one, solve_model_two
from ..errors import ConfigError, GridCarbonError
from ..fleet import (
    DAYS_PER_YEAR,
    FUEL_GROWTH_RATE,
    LOAD_GROWTH_RATE,
    FleetAssumptions,
    case_county_demands,
    ev_demand_map,
    icv_emissions_annual,
    project_growth,
)
from ..grid.model import GridCase
from ..ptdf import SystemPtdf, system_ptdf
from .annual import DayOutcome, annualize, clamp_congestion
from .days import RegionalCurves, StudyDay, day_curves, day_set, scale_bus_loads
from .renewables import scale_to_level

logger = logging.getLogger(__name__)

CONSTRAINED = "constrained"
RELAXED = "relaxed"
MODES = (CONSTRAINED, RELAXED)


@dataclass(frozen=True)
class ScenarioSpec:
    """The grid of scenario points a sweep evaluates.

    Attributes:
        penetrations: EV penetration levels in [0, 1].
        renewable_levels: Target integration levels in [0, 1); None keeps
            the case's own mix.
        modes: Network modes to report, "constrained" and/or "relaxed".
        day_set: "months" or "seasons".
        months: Restrict the day set to days covering these months.
        growth_years: Years of load and fuel growth applied to the case.
        per_island: Scale each island to the target on its own.
    """

    penetrations: tuple[float, ...] = (0.0,)
    renewable_levels: tuple[float | None, ...] = (None,)
    modes: tuple[str, ...] = MODES
    day_set: str = "months"
    months: tuple[int, ...] | None = None
    growth_years: float = 0.0
    per_island: bool = True

    def __post_init__(self) -> None:
        if not self.penetrations:
            raise ConfigError("scenario needs at least one penetration level")
        for p in self.penetrations:
            if not 0.0 <= p <= 1.0:
                raise ConfigError(f"penetration {p} outside [0, 1]")
        for level in self.renewable_levels:
            if level is not None and not 0.0 <= level < 1.0:
                raise ConfigError(f"renewable level {level} outside [0, 1)")
        unknown = set(self.modes) - set(MODES)
        if unknown or not self.modes:
            raise ConfigError(f"modes must be a non-empty subset of {MODES}")
        day_set(self.day_set, self.months)

    @classmethod
    def from_mapping(
        cls, data: Mapping[str, Any], *, default_levels: Sequence[float] = ()
    ) -> ScenarioSpec:
        """Build a spec from parsed YAML, rejecting unknown keys.

        ``default_levels`` fills ``renewable_levels`` when the mapping has no
        such key.
        """
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - names)
        if unknown:
            raise ConfigError(f"unknown scenario keys: {', '.join(unknown)}")
        values: dict[str, Any] = dict(data)
        if "renewable_levels" not in values and default_levels:
            values["renewable_levels"] = list(default_levels)
        for key in ("penetrations", "renewable_levels", "modes", "months"):
            if key in values and values[key] is not None:
                raw = values[key]
                values[key] = tuple(raw) if isinstance(raw, list | tuple) else (raw,)
        try:
            return cls(**values)
        except TypeError as e:
            raise ConfigError(f"malformed scenario: {e}") from e


def load_spec(path: Path | str, *, default_levels: Sequence[float] = ()) -> ScenarioSpec:
    """Read a scenario spec from a YAML file.

    Args:
        path: YAML mapping of ScenarioSpec fields.
        default_levels: Renewable levels used when the file names none,
            normally the run configuration's ``renewable_targets``.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text()) or {}
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot read scenario {path}: {e}") from e
    if not isinstance(data, Mapping):
        raise ConfigError(f"scenario {path} must be a mapping")
    return ScenarioSpec.from_mapping(data, default_levels=default_levels)


def project_case_growth(
    case: GridCase,
    years: float,
    *,
    load_rate: float = LOAD_GROWTH_RATE,
    fuel_rate: float = FUEL_GROWTH_RATE,
) -> GridCase:
    """Grow load peaks, county population and motor fuel over ``years``."""
    if years == 0:
        return case
    return dataclasses.replace(
        case,
        loads=tuple(
            dataclasses.replace(ld, peak_mw=project_growth(ld.peak_mw, load_rate, years))
            for ld in case.loads
        ),
        counties=tuple(
            dataclasses.replace(
                c,
                population=project_growth(c.population, fuel_rate, years),
                annual_gallons=project_growth(c.annual_gallons, fuel_rate, years),
            )
            for c in case.counties
        ),
    )


@dataclass
class _LevelTask:
    case: GridCase
    curves: RegionalCurves
    fleet: FleetAssumptions
    spec: ScenarioSpec
    level: float | None
    ptdf: SystemPtdf
    days: tuple[StudyDay, ...]


def _failed_rows(
    spec: ScenarioSpec,
    level: float | None,
    error: Exception,
    penetrations: Sequence[float] | None = None,
    modes: Sequence[str] | None = None,
) -> list[SweepRow]:
    status = type(error).__name__
    return [
        SweepRow(
            penetration=p,
            renewable_level=level,
            mode=mode,
            e_ev_t=math.nan,
            e_icv_t=math.nan,
            e_v_t=math.nan,
            congestion_induced_t=math.nan,
            status=status,
            scale_factor=math.nan,
        )
        for p in (spec.penetrations if penetrations is None else penetrations)
        for mode in (spec.modes if modes is None else modes)
    ]


def _sweep_level(task: _LevelTask) -> list[SweepRow]:
    spec, level = task.spec, task.level
    try:
        if level is None:
            case, factors = task.case, (1.0,)
        else:
            case, factors = scale_to_level(task.case, level, per_island=spec.per_island)
        loads = [scale_bus_loads(case, day_curves(task.curves, day)) for day in task.days]
        bases = [solve_model_one(case, day_loads, task.ptdf) for day_loads in loads]
    except GridCarbonError as e:
        logger.warning("level %s: %s", level, e)
        return _failed_rows(spec, level, e)
    scale = factors[0] if factors else 1.0

    rows: list[SweepRow] = []
    for penetration in spec.penetrations:
        fleet = task.fleet.with_penetration(penetration)
        demands = case_county_demands(case, fleet)
        ev_demand = ev_demand_map(demands)
        e_icv_day = icv_emissions_annual(demands, fleet) / DAYS_PER_YEAR

        outcomes: dict[str, list[float] | Exception] = {}
        for mode in MODES:
            try:
                outcomes[mode] = [
                    solve_model_two(
                        case, day_loads, base, ev_demand, task.ptdf, relaxed=mode == RELAXED
                    ).e_ev_t
                    for day_loads, base in zip(loads, bases, strict=True)
                ]
            except GridCarbonError as e:
                logger.warning("level %s, penetration %s, %s: %s", level, penetration, mode, e)
                outcomes[mode] = e

        for mode in spec.modes:
            result = outcomes[mode]
            if isinstance(result, Exception):
                rows.extend(_failed_rows(spec, level, result, [penetration], [mode]))
                continue
            other = outcomes[RELAXED]
            day_outcomes = []
            for i, (day, e_ev) in enumerate(zip(task.days, result, strict=True)):
                congestion = 0.0
                if mode == CONSTRAINED:
                    if isinstance(other, Exception):
                        congestion = math.nan
                    else:
                        congestion = clamp_congestion(e_ev - other[i])
                day_outcomes.append(
                    DayOutcome(day.label, e_ev, e_icv_day, congestion_induced_t=congestion)
                )
            annual = annualize(day_outcomes, task.days)
            rows.append(
                SweepRow(
                    penetration=penetration,
                    renewable_level=level,
                    mode=mode,
                    e_ev_t=annual.e_ev_t,
                    e_icv_t=annual.e_icv_t,
                    e_v_t=annual.e_v_t,
                    congestion_induced_t=annual.congestion_induced_t,
                    scale_factor=scale,
                )
            )
    return rows


def run_sweep(
    spec: ScenarioSpec,
    case: GridCase,
    curves: RegionalCurves,
    fleet: FleetAssumptions | None = None,
    *,
    workers: int = 1,
) -> list[SweepRow]:
    """Evaluate every (penetration, renewable level, mode) point of a spec.

    Every level dispatches Model I once per study day; each penetration
    then solves Model II on the constrained and the relaxed network from
    that same base. Points that fail record the error class in ``status``
    and the sweep continues.

    Args:
        spec: Scenario grid.
        case: The study system (before growth and scaling).
        curves: Region -> month -> per-unit hourly curve.
        fleet: Fleet factors; penetration is taken from ``spec``.
        workers: Processes evaluating renewable levels in parallel.

    Returns:
        Rows ordered by penetration, then level, then mode, in scenario order.
    """
    fleet = fleet or FleetAssumptions()
    grown = project_case_growth(case, spec.growth_years)
    ptdf = system_ptdf(grown)
    days = day_set(spec.day_set, spec.months)
    tasks = [
        _LevelTask(grown, curves, fleet, spec, level, ptdf, days)
        for level in spec.renewable_levels
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_sweep_level, tasks))
    else:
        results = [_sweep_level(task) for task in tasks]

    p_order = {p: i for i, p in enumerate(spec.penetrations)}
    l_order = {level: i for i, level in enumerate(spec.renewable_levels)}
    m_order = {m: i for i, m in enumerate(spec.modes)}
    rows = [row for level_rows in results for row in level_rows]
    rows.sort(
        key=lambda r: (p_order[r.penetration], l_order[r.renewable_level], m_order[r.mode])
    )
    logger.info("sweep: %d rows, %d failed", len(rows), sum(r.status != "ok" for r in rows))
    return rows
