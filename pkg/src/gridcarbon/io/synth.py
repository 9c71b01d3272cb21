"""Synthetic study systems for tests and demos.

Templates:

    ring      buses 1..n on a cycle, unit reactances, slack at bus n;
              ring(3) is the canonical three-bus PTDF case
    star      bus 1 linked to every other bus
    mesh      random connected graph with random reactances
    two-area  renewable area A and thermal area B joined by one 345 kV
              tie-line rated below the area-B peak load; loads and most
              vehicle fuel sit in area B, so charging there congests the tie

Buses are 138 kV (charging-eligible) and lines 345 kV (upgradable). Default
fuel coefficients:

    fuel     $/MWh   t/GWh
    coal       20     1000
    gas        30      450
    nuclear    10        0
    hydro       5        0
    solar       0        0
    wind        0        0
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import networkx as nx
import numpy as np

from ..errors import InputError
from ..fleet import allocate_state_fuel
from ..grid.model import (
    DEFAULT_LOSS_RATE,
    Bus,
    County,
    Fuel,
    GenerationUnit,
    GridCase,
    Line,
    LoadPoint,
    TimeGrid,
)
from .wind import wind_to_per_unit

logger = logging.getLogger(__name__)

TEMPLATES = ("ring", "star", "mesh", "two-area")

BUS_KV = 138.0
LINE_KV = 345.0

# Tie-line capacity of the two-area template as a share of area-B peak load.
TIE_SHARE = 0.45


@dataclass(frozen=True)
class FuelDefaults:
    cost_per_mwh: float
    emission_t_per_gwh: float


FUEL_DEFAULTS = {
    Fuel.COAL: FuelDefaults(20.0, 1000.0),
    Fuel.GAS: FuelDefaults(30.0, 450.0),
    Fuel.NUCLEAR: FuelDefaults(10.0, 0.0),
    Fuel.HYDRO: FuelDefaults(5.0, 0.0),
    Fuel.SOLAR: FuelDefaults(0.0, 0.0),
    Fuel.WIND: FuelDefaults(0.0, 0.0),
}

# Fuel of the generator at the k-th generating bus of ring, star and mesh cases.
_FUEL_CYCLE = (Fuel.COAL, Fuel.WIND, Fuel.GAS, Fuel.SOLAR, Fuel.HYDRO, Fuel.NUCLEAR)


def solar_profile(hours: int = 24) -> tuple[float, ...]:
    """Clear-sky bell between 06:00 and 18:00."""
    values = []
    for h in range(hours):
        hour_of_day = (h * 24.0 / hours) + 0.5
        values.append(max(0.0, math.sin(math.pi * (hour_of_day - 6.0) / 12.0)))
    return tuple(round(v, 6) for v in values)


def wind_profile(
    rng: np.random.Generator, hours: int = 24, rated_speed: float | None = None
) -> tuple[float, ...]:
    """Per-unit output of a Weibull-distributed wind speed series."""
    speeds = 8.0 * rng.weibull(2.0, size=hours)
    return tuple(round(float(v), 6) for v in wind_to_per_unit(speeds, rated_speed))


def _generator(
    gen_id: str,
    bus: str,
    fuel: Fuel,
    capacity: float,
    rng: np.random.Generator,
    hours: int,
    rated_speed: float | None = None,
) -> GenerationUnit:
    defaults = FUEL_DEFAULTS[fuel]
    profile: tuple[float, ...] = ()
    if fuel is Fuel.SOLAR:
        profile = solar_profile(hours)
    elif fuel is Fuel.WIND:
        profile = wind_profile(rng, hours, rated_speed)
    return GenerationUnit(
        id=gen_id,
        bus=bus,
        fuel=fuel,
        capacity_mw=capacity,
        cost_per_mwh=defaults.cost_per_mwh,
        emission_t_per_gwh=defaults.emission_t_per_gwh,
        capability_profile=profile,
    )


def _counties(
    bus_counties: dict[str, str], gallons: float, weights: dict[str, float]
) -> tuple[County, ...]:
    bare = [
        County(fips=f, state="S1", population=weights[f])
        for f in dict.fromkeys(bus_counties.values())
    ]
    allocation = allocate_state_fuel(gallons, bare)
    return tuple(replace(c, annual_gallons=allocation[c.fips]) for c in bare)


def _edges(template: str, n: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    if template == "ring":
        return [(i, i + 1) for i in range(1, n)] + ([(1, n)] if n > 2 else [])
    if template == "star":
        return [(1, i) for i in range(2, n + 1)]
    # mesh: random spanning tree plus extra chords
    order = rng.permutation(np.arange(1, n + 1))
    edges = []
    for k in range(1, n):
        parent = int(order[rng.integers(0, k)])
        edges.append(tuple(sorted((parent, int(order[k])))))
    extra = int(rng.integers(0, n))
    graph = nx.Graph(edges)
    for _ in range(extra):
        a, b = (int(x) for x in rng.choice(np.arange(1, n + 1), size=2, replace=False))
        if not graph.has_edge(a, b):
            graph.add_edge(a, b)
            edges.append(tuple(sorted((a, b))))
    return edges


def _single_area(
    template: str, n: int, seed: int, hours: int, rated_speed: float | None
) -> GridCase:
    rng = np.random.default_rng(seed)
    bus_ids = [str(i) for i in range(1, n + 1)]
    county_of = {b: f"C{(int(b) - 1) // 3 + 1}" for b in bus_ids}
    buses = tuple(
        Bus(id=b, voltage_kv=BUS_KV, county=county_of[b], region="R1", name=f"Bus {b}")
        for b in bus_ids
    )
    edges = _edges(template, n, rng)
    lines = tuple(
        Line(
            id=f"L{k + 1}",
            from_bus=str(a),
            to_bus=str(b),
            reactance_pu=1.0 if template == "ring" else round(float(rng.uniform(0.05, 0.5)), 6),
            capacity_mw=500.0,
            length_mi=round(float(rng.uniform(10.0, 100.0)), 3),
            voltage_kv=LINE_KV,
        )
        for k, (a, b) in enumerate(edges)
    )
    generators = tuple(
        _generator(
            f"G{k + 1}",
            bus,
            _FUEL_CYCLE[k % len(_FUEL_CYCLE)],
            round(float(rng.uniform(80.0, 160.0)), 3),
            rng,
            hours,
            rated_speed,
        )
        for k, bus in enumerate(bus_ids[::2])
    )
    peaks = rng.uniform(10.0, 40.0, size=n)
    loads = tuple(
        LoadPoint(id=f"D{b}", bus=b, peak_mw=round(float(p), 3), region="R1")
        for b, p in zip(bus_ids, peaks, strict=True)
    )
    weights = {c: float(10_000 * (1 + k)) for k, c in enumerate(dict.fromkeys(county_of.values()))}
    return GridCase(
        buses=buses,
        lines=lines,
        generators=generators,
        loads=loads,
        counties=_counties(county_of, 1_000_000.0 * n, weights),
        time_grid=TimeGrid(hours=hours),
        loss_rate=DEFAULT_LOSS_RATE,
        slack_buses=(bus_ids[-1],),
        name=f"{template}-{n}-s{seed}",
    )


def _two_area(n: int, seed: int, hours: int, rated_speed: float | None) -> GridCase:
    rng = np.random.default_rng(seed)
    per_area = max(n // 2, 2)
    a_ids = [f"A{i}" for i in range(1, per_area + 1)]
    b_ids = [f"B{i}" for i in range(1, per_area + 1)]
    county_of = {**{b: "CA" for b in a_ids}, **{b: "CB" for b in b_ids}}
    buses = tuple(
        Bus(id=b, voltage_kv=BUS_KV, county=county_of[b], region=f"R{b[0]}", name=b)
        for b in a_ids + b_ids
    )

    load_peaks = {b: 60.0 + 40.0 * i / max(per_area - 1, 1) for i, b in enumerate(b_ids)}
    total_peak = sum(load_peaks.values())
    # Midday solar in A alone exceeds the tie, so it is curtailed behind it
    # and area-B charging falls to thermal units.
    tie_capacity = round(TIE_SHARE * total_peak, 3)

    lines: list[Line] = []
    for area in (a_ids, b_ids):
        for a, b in zip(area, area[1:], strict=False):
            lines.append(
                Line(
                    id=f"{a}-{b}",
                    from_bus=a,
                    to_bus=b,
                    reactance_pu=round(float(rng.uniform(0.05, 0.2)), 6),
                    capacity_mw=10.0 * tie_capacity,
                    length_mi=round(float(rng.uniform(10.0, 40.0)), 3),
                    voltage_kv=LINE_KV,
                )
            )
    lines.append(
        Line(
            id="TIE",
            from_bus=a_ids[-1],
            to_bus=b_ids[0],
            reactance_pu=0.1,
            capacity_mw=tie_capacity,
            length_mi=150.0,
            voltage_kv=LINE_KV,
        )
    )

    generators = [
        _generator("WIND-A", a_ids[0], Fuel.WIND, 0.8 * total_peak, rng, hours, rated_speed),
        _generator("SOLAR-A", a_ids[-1], Fuel.SOLAR, 0.6 * total_peak, rng, hours),
        _generator("GAS-B", b_ids[0], Fuel.GAS, 2.0 * total_peak, rng, hours),
        _generator("COAL-B", b_ids[-1], Fuel.COAL, 2.0 * total_peak, rng, hours),
    ]
    loads = tuple(
        LoadPoint(id=f"D{b}", bus=b, peak_mw=round(peak, 3), region="RB")
        for b, peak in load_peaks.items()
    )
    return GridCase(
        buses=buses,
        lines=tuple(lines),
        generators=tuple(generators),
        loads=loads,
        counties=_counties(county_of, 8_200_000.0, {"CA": 1_000.0, "CB": 99_000.0}),
        time_grid=TimeGrid(hours=hours),
        loss_rate=DEFAULT_LOSS_RATE,
        slack_buses=(b_ids[-1],),
        name=f"two-area-{2 * per_area}-s{seed}",
    )


def synth_case(
    template: str = "ring",
    buses: int = 3,
    seed: int = 0,
    *,
    hours: int = 24,
    wind_rated_speed: float | None = None,
) -> GridCase:
    """Build a deterministic synthetic case.

    Args:
        template: One of ``TEMPLATES``.
        buses: Number of buses (two-area rounds down to an even count, at
            least 2 per area).
        seed: Seed of every random draw.
        hours: Horizon of the operational cycle.
        wind_rated_speed: Rated speed of the wind power curve; unset
            keeps the cubic curve up to cut-out.

    Raises:
        InputError: For an unknown template or fewer than 2 buses.
    """
    if template not in TEMPLATES:
        raise InputError(f"unknown template {template!r}, expected one of {TEMPLATES}")
    if buses < 2:
        raise InputError(f"synthetic cases need at least 2 buses, got {buses}")
    if template == "two-area":
        case = _two_area(buses, seed, hours, wind_rated_speed)
    else:
        case = _single_area(template, buses, seed, hours, wind_rated_speed)
    logger.debug("synthesized %s", case.name)
    return case


def synth_curves(case: GridCase, seed: int = 0) -> dict[str, dict[int, np.ndarray]]:
    """Monthly per-unit load curves for every region of a case.

    Curves peak in the early evening and in summer, reaching 1.0 in July.
    """
    rng = np.random.default_rng(seed)
    hours = np.arange(case.hours) * 24.0 / case.hours
    daily = 0.75 + 0.25 * np.cos(2 * np.pi * (hours - 18.0) / 24.0)
    curves: dict[str, dict[int, np.ndarray]] = {}
    for region in dict.fromkeys(load.region for load in case.loads):
        jitter = rng.uniform(-0.02, 0.02, size=12)
        curves[region] = {}
        for month in range(1, 13):
            season = 0.85 + 0.15 * math.cos(2 * math.pi * (month - 7) / 12.0)
            scale = min(season + (0.0 if month == 7 else jitter[month - 1]), 1.0)
            curves[region][month] = np.round(daily * scale / daily.max(), 6)
    return curves
