"""Domain model for a study system.

Every type here is a frozen dataclass. A GridCase is built once (by the
loader, the synthetic generator or a test) and only ever copied with
``dataclasses.replace`` afterwards, so it can be shared between workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import StrEnum
from functools import cached_property

# Transmission loss rate of the U.S. grid used in the balance rows.
DEFAULT_LOSS_RATE = 0.05911

# Buses strictly below this voltage may host EV charging stations.
CHARGING_VOLTAGE_KV = 200.0

# Lines strictly above this voltage may be upgraded.
UPGRADE_VOLTAGE_KV = 200.0

HOURS_PER_DAY = 24


class Fuel(StrEnum):
    """Source category of a generation unit.

    Only used for reporting and renewable scaling; cost and emissions come
    from the unit's own coefficients.
    """

    COAL = "coal"
    GAS = "gas"
    NUCLEAR = "nuclear"
    HYDRO = "hydro"
    SOLAR = "solar"
    WIND = "wind"
    OTHER = "other"

    @classmethod
    def parse(cls, value: str) -> Fuel:
        """Parse a fuel name, mapping unknown categories to OTHER."""
        try:
            return cls(value.strip().lower())
        except ValueError:
            return cls.OTHER

    @property
    def is_variable_renewable(self) -> bool:
        """Solar and wind, the categories scaled in renewable scenarios."""
        return self in (Fuel.SOLAR, Fuel.WIND)

    @property
    def is_renewable(self) -> bool:
        """Categories counted in the renewable integration level."""
        return self in (Fuel.SOLAR, Fuel.WIND, Fuel.HYDRO)


@dataclass(frozen=True)
class Bus:
    """A network node.

    Attributes:
        id: Unique bus identifier.
        voltage_kv: Nominal voltage in kV.
        county: County identifier (FIPS) the bus lies in.
        region: Load-region identifier.
        name: Optional display name.
    """

    id: str
    voltage_kv: float
    county: str = ""
    region: str = ""
    name: str = ""


@dataclass(frozen=True)
class Line:
    """A transmission line (parallel lines between a bus pair stay distinct).

    Attributes:
        id: Unique line identifier.
        from_bus: Bus id at the sending end (positive flow direction).
        to_bus: Bus id at the receiving end.
        reactance_pu: Series reactance in per unit.
        capacity_mw: Thermal limit F_l in MW; ``math.inf`` when relaxed.
        length_mi: Line length m_l in miles.
        voltage_kv: Nominal voltage in kV.
    """

    id: str
    from_bus: str
    to_bus: str
    reactance_pu: float
    capacity_mw: float
    length_mi: float = 0.0
    voltage_kv: float = 0.0

    @property
    def susceptance(self) -> float:
        """Series susceptance 1/x."""
        return 1.0 / self.reactance_pu


@dataclass(frozen=True)
class GenerationUnit:
    """A generator with linear cost and emission functions.

    Attributes:
        id: Unique generator identifier.
        bus: Hosting bus id.
        fuel: Source category.
        capacity_mw: Installed capacity in MW.
        cost_per_mwh: Linear cost coefficient in $/MWh.
        emission_t_per_gwh: Linear CO2 rate in t/GWh.
        ramp_up_mw_per_h: Maximum hourly increase.
        ramp_down_mw_per_h: Maximum hourly decrease.
        capability_profile: Per-unit hourly availability; empty means
            fully available every hour.
    """

    id: str
    bus: str
    fuel: Fuel
    capacity_mw: float
    cost_per_mwh: float = 0.0
    emission_t_per_gwh: float = 0.0
    ramp_up_mw_per_h: float = float("inf")
    ramp_down_mw_per_h: float = float("inf")
    capability_profile: tuple[float, ...] = ()

    def available_mw(self, step: int) -> float:
        """Maximum output p_max(t) at a 0-based step."""
        if not self.capability_profile:
            return self.capacity_mw
        return self.capacity_mw * self.capability_profile[step]


@dataclass(frozen=True)
class LoadPoint:
    """A load at a bus, scaled hourly by its region's curve.

    Attributes:
        id: Unique load identifier.
        bus: Hosting bus id.
        peak_mw: Peak demand in MW.
        region: Region whose representative-day curve shapes this load.
    """

    id: str
    bus: str
    peak_mw: float
    region: str = ""


@dataclass(frozen=True)
class County:
    """A county: the unit of EV demand allocation.

    Attributes:
        fips: County identifier.
        state: State identifier.
        population: Number of residents.
        annual_gallons: Motor fuel consumed per year, in gallons.
        penetration: Optional county-specific EV penetration overriding
            the fleet-wide value.
    """

    fips: str
    state: str
    population: float
    annual_gallons: float = 0.0
    penetration: float | None = None


@dataclass(frozen=True)
class TimeGrid:
    """Ordered hourly steps of one operational cycle.

    Attributes:
        hours: Number of steps; a representative day has 24.
        dt_h: Step length in hours.
    """

    hours: int = HOURS_PER_DAY
    dt_h: float = 1.0

    @property
    def steps(self) -> tuple[int, ...]:
        """1-based hour indices."""
        return tuple(range(1, self.hours + 1))

    def previous(self, step: int) -> int:
        """0-based index of the step before ``step``, wrapping cyclically."""
        return (step - 1) % self.hours


@dataclass(frozen=True)
class GridCase:
    """A complete study system.

    Attributes:
        buses: Network nodes.
        lines: Transmission lines.
        generators: Generation fleet.
        loads: Load points.
        counties: Counties for EV demand allocation.
        time_grid: Hourly structure of the operational cycle.
        loss_rate: Transmission loss rate tau applied in the balance rows.
        slack_buses: One reference bus per island.
        name: Case name used in reports.
    """

    buses: tuple[Bus, ...]
    lines: tuple[Line, ...] = ()
    generators: tuple[GenerationUnit, ...] = ()
    loads: tuple[LoadPoint, ...] = ()
    counties: tuple[County, ...] = ()
    time_grid: TimeGrid = field(default_factory=TimeGrid)
    loss_rate: float = DEFAULT_LOSS_RATE
    slack_buses: tuple[str, ...] = ()
    name: str = "case"

    @cached_property
    def bus_index(self) -> dict[str, int]:
        """Bus id to position in ``buses``."""
        return {bus.id: i for i, bus in enumerate(self.buses)}

    @cached_property
    def line_index(self) -> dict[str, int]:
        """Line id to position in ``lines``."""
        return {line.id: i for i, line in enumerate(self.lines)}

    @cached_property
    def bus_map(self) -> dict[str, Bus]:
        """Bus id to Bus."""
        return {bus.id: bus for bus in self.buses}

    @cached_property
    def county_map(self) -> dict[str, County]:
        """County FIPS to County."""
        return {county.fips: county for county in self.counties}

    @property
    def hours(self) -> int:
        return self.time_grid.hours

    def bus(self, bus_id: str) -> Bus:
        """Look up a bus by id.

        Raises:
            UnknownBus: If the id is not in the case.
        """
        from ..errors import UnknownBus

        try:
            return self.bus_map[bus_id]
        except KeyError:
            raise UnknownBus(f"unknown bus: {bus_id}") from None

    def county(self, fips: str) -> County:
        """Look up a county by FIPS code."""
        return self.county_map[fips]
