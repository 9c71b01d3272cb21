"""Operational constraint block shared by the three dispatch models.

Every model schedules generation over one operational cycle subject to
the same rules: per-island energy balance with the loss factor, two-sided
line limits written through PTDFs, hourly availability as variable
bounds, and cyclic ramp limits. Model I schedules total output; Models II
and III schedule increments on top of a base schedule and add charging
variables for EV stations.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from ..errors import CountyHasNoEligibleBus, CrossReferenceError, InputError
from ..grid.model import CHARGING_VOLTAGE_KV, GridCase
from ..grid.topology import charging_sites, island_of
from ..lp import LpBuilder, Relation
from ..ptdf import SystemPtdf

# t/GWh x MWh -> tonnes
TONNES_PER_GWH_MWH = 1e-3

# PTDF entries below this magnitude are left out of flow rows.
PTDF_EPSILON = 1e-12


@dataclass(frozen=True)
class Station:
    """An EV charging station: a charging-eligible bus of a county."""

    bus: str
    county: str


def bus_load_matrix(
    case: GridCase, hourly_loads: np.ndarray | Mapping[str, Sequence[float]]
) -> np.ndarray:
    """Normalize hourly loads to a buses x hours array in case bus order.

    Args:
        case: The study system.
        hourly_loads: Array (buses x hours) or mapping bus id -> hourly MW.

    Raises:
        InputError: If the shape does not match the case horizon.
    """
    if isinstance(hourly_loads, Mapping):
        matrix = np.zeros((len(case.buses), case.hours))
        for bus_id, series in hourly_loads.items():
            values = np.asarray(series, dtype=float)
            if values.shape != (case.hours,):
                raise InputError(
                    f"load series at bus {bus_id} has {values.size} values, "
                    f"horizon has {case.hours}"
                )
            case.bus(bus_id)
            matrix[case.bus_index[bus_id]] += values
        return matrix
    matrix = np.asarray(hourly_loads, dtype=float)
    if matrix.shape != (len(case.buses), case.hours):
        raise InputError(
            f"hourly loads have shape {matrix.shape}, expected "
            f"{(len(case.buses), case.hours)}"
        )
    return matrix


def charging_stations(
    case: GridCase,
    ev_demand: Mapping[str, float],
    *,
    threshold_kv: float = CHARGING_VOLTAGE_KV,
) -> list[Station]:
    """Stations of every county with positive EV energy demand.

    Raises:
        CrossReferenceError: If a demand names an unknown county.
        CountyHasNoEligibleBus: If a county with demand has no eligible bus.
    """
    stations: list[Station] = []
    for fips in sorted(ev_demand, key=_county_order(case)):
        if ev_demand[fips] <= 0:
            continue
        if fips not in case.county_map:
            raise CrossReferenceError(f"EV demand for unknown county {fips}")
        sites = charging_sites(case, case.county(fips), threshold_kv=threshold_kv)
        if not sites:
            raise CountyHasNoEligibleBus(
                f"county {fips} needs {ev_demand[fips]:g} MWh but has no bus "
                f"below {threshold_kv:g} kV"
            )
        stations.extend(Station(bus=bus, county=fips) for bus in sites)
    return stations


def _county_order(case: GridCase):
    position = {c.fips: i for i, c in enumerate(case.counties)}
    return lambda fips: (position.get(fips, len(position)), fips)


@dataclass(frozen=True)
class OperationalBlock:
    """Variable positions of one operational cycle inside a LinearProgram.

    Attributes:
        generation: Generators x hours variable indices (output or increment).
        charging: Stations x hours variable indices.
        stations: Stations in row order of ``charging``.
        base_flows: Lines x hours flow produced by the fixed part.
        incremental: True when ``generation`` holds increments on a base.
    """

    generation: np.ndarray
    charging: np.ndarray
    stations: tuple[Station, ...]
    base_flows: np.ndarray
    incremental: bool


def add_operational_block(
    lp: LpBuilder,
    case: GridCase,
    ptdf: SystemPtdf,
    bus_loads: np.ndarray,
    *,
    base: np.ndarray | None = None,
    stations: Sequence[Station] = (),
    ev_demand: Mapping[str, float] | None = None,
    line_upgrades: Mapping[str, str] | None = None,
    unit_cost: Sequence[float] | None = None,
    prefix: str = "",
) -> OperationalBlock:
    """Add one cycle's variables and operational rows to a builder.

    Without ``base`` the generation variables are total outputs (Model I).
    With ``base`` they are non-negative increments bounded by the remaining
    availability, and the fixed base output enters the right-hand sides.

    Args:
        lp: Builder receiving variables and rows.
        case: The study system.
        ptdf: System PTDF table of ``case``.
        bus_loads: Base demand, buses x hours.
        base: Base schedule (generators x hours) for incremental models.
        stations: Charging stations receiving charging variables.
        ev_demand: County energy requirement per cycle, MWh.
        line_upgrades: Line id -> name of a capacity-increment variable.
        unit_cost: Objective weight per MWh of each generator.
        prefix: Name prefix for variables and rows (day label).

    Returns:
        OperationalBlock with the positions of the created variables.
    """
    hours = case.hours
    dt = case.time_grid.dt_h
    gens = case.generators
    keep = 1.0 - case.loss_rate
    incremental = base is not None
    fixed = np.zeros((len(gens), hours)) if base is None else np.asarray(base, float)
    line_upgrades = line_upgrades or {}
    tag = "dp" if incremental else "p"

    # Generation variables with availability bounds.
    generation = np.zeros((len(gens), hours), dtype=int)
    for g, gen in enumerate(gens):
        for t in range(hours):
            headroom = max(gen.available_mw(t) - fixed[g, t], 0.0)
            generation[g, t] = lp.variable_count
            lp.add_variable(
                f"{prefix}{tag}[{gen.id},{t + 1}]",
                upper=headroom,
                cost=0.0 if unit_cost is None else unit_cost[g] * dt,
            )

    charging = np.zeros((len(stations), hours), dtype=int)
    for k, station in enumerate(stations):
        for t in range(hours):
            charging[k, t] = lp.variable_count
            lp.add_variable(f"{prefix}pv[{station.bus},{t + 1}]")

    names = lp.names

    # Energy balance per island and hour.
    island = island_of(case)
    gen_island = [island[g.bus] for g in gens]
    bus_island = [island[b.id] for b in case.buses]
    station_island = [island[s.bus] for s in stations]
    for isl in sorted(set(bus_island)):
        island_gens = [g for g in range(len(gens)) if gen_island[g] == isl]
        island_buses = [i for i in range(len(case.buses)) if bus_island[i] == isl]
        island_stations = [k for k in range(len(stations)) if station_island[k] == isl]
        for t in range(hours):
            coefficients = [(names[generation[g, t]], keep) for g in island_gens]
            coefficients += [(names[charging[k, t]], -1.0) for k in island_stations]
            rhs = bus_loads[island_buses, t].sum() - keep * fixed[island_gens, t].sum()
            if not coefficients and abs(rhs) == 0.0:
                continue
            lp.add_row(f"{prefix}balance[{isl},{t + 1}]", coefficients, Relation.EQ, rhs)

    # Line limits, both directions.
    gen_cols = np.array([case.bus_index[g.bus] for g in gens], dtype=int)
    station_cols = np.array([case.bus_index[s.bus] for s in stations], dtype=int)
    pi_gen = ptdf.values[:, gen_cols] if len(gens) else np.zeros((len(case.lines), 0))
    pi_station = (
        ptdf.values[:, station_cols] if len(stations) else np.zeros((len(case.lines), 0))
    )
    base_flows = pi_gen @ fixed - ptdf.values @ bus_loads
    for li, line in enumerate(case.lines):
        if not np.isfinite(line.capacity_mw):
            continue
        upgrade = line_upgrades.get(line.id)
        gen_terms = [g for g in range(len(gens)) if abs(pi_gen[li, g]) > PTDF_EPSILON]
        station_terms = [
            k for k in range(len(stations)) if abs(pi_station[li, k]) > PTDF_EPSILON
        ]
        for t in range(hours):
            flow = [(names[generation[g, t]], pi_gen[li, g]) for g in gen_terms]
            flow += [(names[charging[k, t]], -pi_station[li, k]) for k in station_terms]
            upper = list(flow)
            lower = list(flow)
            if upgrade is not None:
                upper.append((upgrade, -1.0))
                lower.append((upgrade, 1.0))
            lp.add_row(
                f"{prefix}flow+[{line.id},{t + 1}]",
                upper,
                Relation.LE,
                line.capacity_mw - base_flows[li, t],
            )
            lp.add_row(
                f"{prefix}flow-[{line.id},{t + 1}]",
                lower,
                Relation.GE,
                -line.capacity_mw - base_flows[li, t],
            )

    # Cyclic ramp limits; rows that cannot bind are skipped.
    if hours > 1:
        for g, gen in enumerate(gens):
            reach = max(gen.available_mw(t) for t in range(hours))
            for t in range(hours):
                prev = case.time_grid.previous(t)
                pair = [(names[generation[g, t]], 1.0), (names[generation[g, prev]], -1.0)]
                drift = fixed[g, t] - fixed[g, prev]
                if gen.ramp_up_mw_per_h < reach:
                    lp.add_row(
                        f"{prefix}ramp_up[{gen.id},{t + 1}]",
                        pair,
                        Relation.LE,
                        gen.ramp_up_mw_per_h - drift,
                    )
                if gen.ramp_down_mw_per_h < reach:
                    lp.add_row(
                        f"{prefix}ramp_down[{gen.id},{t + 1}]",
                        pair,
                        Relation.GE,
                        -gen.ramp_down_mw_per_h - drift,
                    )

    # County energy requirement.
    if ev_demand:
        by_county: dict[str, list[int]] = {}
        for k, station in enumerate(stations):
            by_county.setdefault(station.county, []).append(k)
        for fips, members in by_county.items():
            coefficients = [
                (names[charging[k, t]], dt) for k in members for t in range(hours)
            ]
            lp.add_row(
                f"{prefix}energy[{fips}]",
                coefficients,
                Relation.EQ,
                float(ev_demand.get(fips, 0.0)),
            )

    return OperationalBlock(
        generation=generation,
        charging=charging,
        stations=tuple(stations),
        base_flows=base_flows,
        incremental=incremental,
    )


def reconstruct_flows(
    case: GridCase,
    ptdf: SystemPtdf,
    generation: np.ndarray,
    bus_loads: np.ndarray,
    charging: np.ndarray | None = None,
    stations: Sequence[Station] = (),
) -> np.ndarray:
    """Line flows (lines x hours) from total generation, loads and charging.

    Generation enters unscaled by the loss factor, as in the flow rows.
    """
    injections = -np.asarray(bus_loads, dtype=float).copy()
    for g, gen in enumerate(case.generators):
        injections[case.bus_index[gen.bus]] += generation[g]
    if charging is not None:
        for k, station in enumerate(stations):
            injections[case.bus_index[station.bus]] -= charging[k]
    return ptdf.values @ injections


def emissions_tonnes(case: GridCase, generation: np.ndarray) -> float:
    """Emissions of a generators x hours schedule, tonnes."""
    rates = np.array([g.emission_t_per_gwh for g in case.generators], dtype=float)
    if generation.size == 0:
        return 0.0
    energy = generation.sum(axis=1) * case.time_grid.dt_h
    return float(rates @ energy * TONNES_PER_GWH_MWH)


def cost_dollars(case: GridCase, generation: np.ndarray) -> float:
    """Linear generation cost of a generators x hours schedule, $."""
    costs = np.array([g.cost_per_mwh for g in case.generators], dtype=float)
    if generation.size == 0:
        return 0.0
    return float(costs @ generation.sum(axis=1) * case.time_grid.dt_h)
