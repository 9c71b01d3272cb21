"""Vehicle fleet accounting: county EV energy demand and ICV tailpipe CO2.

Motor fuel is allocated from states to counties by population. A share
``penetration`` of each county's daily gallons is electrified at
``kwh_per_gallon_ev`` kWh per gallon; the rest is burned at
``kg_co2_per_gallon`` kg per gallon.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, EmptyState, InputError
from .grid.model import County, GridCase

logger = logging.getLogger(__name__)

DAYS_PER_YEAR = 365

# Energy content of one gallon of gasoline, kWh (the MPGe definition).
KWH_PER_GALLON_EQUIVALENT = 33.7

# Annual growth of electric load and of population / motor fuel use.
LOAD_GROWTH_RATE = 0.0055
FUEL_GROWTH_RATE = 0.0058

# Rounding noise ignored when splitting fuel into whole gallons.
_GALLON_SLACK = 1e-9


@dataclass(frozen=True)
class FleetAssumptions:
    """Efficiency and emission factors of the light-duty fleet.

    Attributes:
        icv_mpge: Combustion-vehicle fuel economy, miles per gallon.
        ev_mpge: EV fuel economy, miles per gallon equivalent.
        kwh_per_gallon_ev: Electricity replacing one gallon of motor fuel.
        kg_co2_per_gallon: Tailpipe CO2 of one gallon.
        penetration: Share of fuel demand electrified, in [0, 1].
    """

    icv_mpge: float = 26.0
    ev_mpge: float = 98.2
    kwh_per_gallon_ev: float = 8.9
    kg_co2_per_gallon: float = 8.9
    penetration: float = 0.0

    def __post_init__(self) -> None:
        for name in ("icv_mpge", "ev_mpge", "kwh_per_gallon_ev", "kg_co2_per_gallon"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0.0 <= self.penetration <= 1.0:
            raise ConfigError(f"penetration must be in [0, 1], got {self.penetration}")
        implied = KWH_PER_GALLON_EQUIVALENT * self.icv_mpge / self.ev_mpge
        if abs(implied - self.kwh_per_gallon_ev) > 0.02 * implied:
            logger.warning(
                "kwh_per_gallon_ev %.3f differs from the MPGe ratio value %.3f by more than 2%%",
                self.kwh_per_gallon_ev,
                implied,
            )

    def with_penetration(self, penetration: float) -> FleetAssumptions:
        return FleetAssumptions(
            icv_mpge=self.icv_mpge,
            ev_mpge=self.ev_mpge,
            kwh_per_gallon_ev=self.kwh_per_gallon_ev,
            kg_co2_per_gallon=self.kg_co2_per_gallon,
            penetration=penetration,
        )


@dataclass(frozen=True)
class CountyDemand:
    """Daily EV energy and remaining ICV fuel of one county.

    Attributes:
        fips: County identifier.
        e_c_daily_mwh: EV charging energy per operational cycle, MWh.
        icv_gallons_daily: Fuel still burned by combustion vehicles per day.
    """

    fips: str
    e_c_daily_mwh: float
    icv_gallons_daily: float


def allocate_state_fuel(
    state_gallons: float, counties: Sequence[County]
) -> dict[str, float]:
    """Split a state's annual motor fuel across its counties by population.

    Every total follows the same largest-remainder rule: each county gets
    the whole gallons of its exact share, the leftover whole gallons go one
    each to the counties with the largest fractional remainders, and any
    sub-gallon residue of the total goes to the next county in that order.
    Integral totals therefore split into whole gallons, and nearby totals
    split almost identically. The shares always sum to the total.

    Raises:
        EmptyState: If there are no counties or no population.
    """
    if not counties:
        raise EmptyState("state has no counties")
    population = np.array([c.population for c in counties], dtype=float)
    total_pop = population.sum()
    if total_pop <= 0:
        raise EmptyState(f"state {counties[0].state} has zero population")

    exact = state_gallons * population / total_pop
    shares = np.floor(exact)
    # Stable sort keeps county order among equal remainders.
    order = np.argsort(-(exact - shares), kind="stable")
    extra = min(int(state_gallons - shares.sum() + _GALLON_SLACK), len(counties))
    shares[order[:extra]] += 1.0
    residue = state_gallons - shares.sum()
    if abs(residue) > _GALLON_SLACK:
        shares[order[min(extra, len(counties) - 1)]] += residue
    return {c.fips: float(s) for c, s in zip(counties, shares, strict=True)}


def allocate_fuel(
    counties: Sequence[County], state_gallons: Mapping[str, float]
) -> dict[str, float]:
    """Allocate every state's fuel to its counties.

    Counties of states absent from ``state_gallons`` receive nothing.
    """
    by_state: dict[str, list[County]] = {}
    for county in counties:
        by_state.setdefault(county.state, []).append(county)
    gallons = {c.fips: 0.0 for c in counties}
    for state, total in state_gallons.items():
        members = by_state.get(state)
        if not members:
            raise EmptyState(f"state {state} has fuel data but no counties")
        gallons.update(allocate_state_fuel(total, members))
    return gallons


def county_ev_demand(
    county_gallons_annual: float,
    assumptions: FleetAssumptions,
    *,
    fips: str = "",
    penetration: float | None = None,
) -> CountyDemand:
    """Daily EV energy and ICV fuel of one county.

    Args:
        county_gallons_annual: Annual motor fuel of the county, gallons.
        assumptions: Fleet factors.
        fips: County identifier carried into the result.
        penetration: County-specific override of ``assumptions.penetration``.
    """
    share = assumptions.penetration if penetration is None else penetration
    if not 0.0 <= share <= 1.0:
        raise InputError(f"county {fips}: penetration {share} outside [0, 1]")
    daily = county_gallons_annual / DAYS_PER_YEAR
    return CountyDemand(
        fips=fips,
        e_c_daily_mwh=daily * share * assumptions.kwh_per_gallon_ev / 1000.0,
        icv_gallons_daily=daily * (1.0 - share),
    )


def case_county_demands(case: GridCase, assumptions: FleetAssumptions) -> list[CountyDemand]:
    """County demands for every county of a case, in case order."""
    return [
        county_ev_demand(
            county.annual_gallons,
            assumptions,
            fips=county.fips,
            penetration=county.penetration,
        )
        for county in case.counties
    ]


def ev_demand_map(demands: Iterable[CountyDemand]) -> dict[str, float]:
    """County FIPS -> daily charging energy, MWh."""
    return {d.fips: d.e_c_daily_mwh for d in demands}


def tailpipe_tonnes(gallons: float, kg_co2_per_gallon: float = 8.9) -> float:
    """CO2 of burning ``gallons`` of motor fuel, tonnes."""
    return gallons * kg_co2_per_gallon / 1000.0


def icv_emissions_annual(
    demands: Iterable[CountyDemand], assumptions: FleetAssumptions | None = None
) -> float:
    """Annual ICV tailpipe CO2 over all counties, tonnes."""
    kg = (assumptions or FleetAssumptions()).kg_co2_per_gallon
    gallons = sum(d.icv_gallons_daily for d in demands) * DAYS_PER_YEAR
    return tailpipe_tonnes(gallons, kg)


def vehicle_operational_emissions(e_ev_annual_t: float, e_icv_annual_t: float) -> float:
    """Operational CO2 of the fleet: charging plus tailpipe, tonnes."""
    if e_ev_annual_t < 0 or e_icv_annual_t < 0:
        raise InputError(
            f"negative emissions: EV {e_ev_annual_t}, ICV {e_icv_annual_t}"
        )
    return e_ev_annual_t + e_icv_annual_t


def project_growth(value: float, annual_rate: float, years: float) -> float:
    """Compound ``value`` at ``annual_rate`` over ``years``."""
    if annual_rate < -1:
        raise InputError(f"growth rate {annual_rate} below -100%")
    return value * math.pow(1.0 + annual_rate, years)


def reduction_percent(e_v: float, baseline: float) -> float:
    """Reduction of ``e_v`` relative to ``baseline`` in percent (0 for a zero baseline)."""
    if baseline == 0:
        return 0.0
    return 100.0 * (baseline - e_v) / baseline
