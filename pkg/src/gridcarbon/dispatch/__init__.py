"""Dispatch models: economic dispatch, EV re-dispatch and line upgrades."""

from .base import build_model_one, emission_rate, solve_model_one
from .ev import build_model_two, ev_emissions, solve_model_two
from .formulation import (
    Station,
    bus_load_matrix,
    charging_stations,
    emissions_tonnes,
    reconstruct_flows,
)
from .network import is_relaxed, relax_network
from .upgrade import (
    UpgradeDay,
    UpgradeMode,
    build_model_three,
    plan_upgrades,
    solve_model_three,
    upgrade_envelope,
    upgrade_frontier,
    upgrade_share,
)

__all__ = [
    "Station",
    "UpgradeDay",
    "UpgradeMode",
    "build_model_one",
    "build_model_three",
    "build_model_two",
    "bus_load_matrix",
    "charging_stations",
    "emission_rate",
    "emissions_tonnes",
    "ev_emissions",
    "is_relaxed",
    "plan_upgrades",
    "reconstruct_flows",
    "relax_network",
    "solve_model_one",
    "solve_model_three",
    "solve_model_two",
    "upgrade_envelope",
    "upgrade_frontier",
    "upgrade_share",
]
