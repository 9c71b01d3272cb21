"""Study-system domain model, topology and validation."""

from .model import (
    CHARGING_VOLTAGE_KV,
    DEFAULT_LOSS_RATE,
    HOURS_PER_DAY,
    UPGRADE_VOLTAGE_KV,
    Bus,
    County,
    Fuel,
    GenerationUnit,
    GridCase,
    Line,
    LoadPoint,
    TimeGrid,
)
from .topology import (
    Island,
    case_islands,
    charging_sites,
    is_upgradable,
    island_of,
    islands,
    network_graph,
    upgradable_lines,
)
from .validation import validate_case

__all__ = [
    "CHARGING_VOLTAGE_KV",
    "DEFAULT_LOSS_RATE",
    "HOURS_PER_DAY",
    "UPGRADE_VOLTAGE_KV",
    "Bus",
    "County",
    "Fuel",
    "GenerationUnit",
    "GridCase",
    "Island",
    "Line",
    "LoadPoint",
    "TimeGrid",
    "case_islands",
    "charging_sites",
    "is_upgradable",
    "island_of",
    "islands",
    "network_graph",
    "upgradable_lines",
    "validate_case",
]
