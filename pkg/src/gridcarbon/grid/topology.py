"""Network topology queries: islands, charging sites, upgradable lines."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from ..errors import CountyHasNoEligibleBus, SingularIsland
from .model import CHARGING_VOLTAGE_KV, UPGRADE_VOLTAGE_KV, County, GridCase, Line


@dataclass(frozen=True)
class Island:
    """A connected component of the network.

    Attributes:
        index: Position in the ordered island list.
        buses: Bus ids in case order.
        slack_bus: Reference bus of this island ("" if none configured).
    """

    index: int
    buses: tuple[str, ...]
    slack_bus: str = ""

    def __contains__(self, bus_id: object) -> bool:
        return bus_id in self.buses


def network_graph(case: GridCase) -> nx.MultiGraph:
    """Build the bus/line multigraph (parallel lines stay distinct)."""
    graph = nx.MultiGraph()
    graph.add_nodes_from(bus.id for bus in case.buses)
    for line in case.lines:
        graph.add_edge(line.from_bus, line.to_bus, key=line.id)
    return graph


def islands(case: GridCase) -> list[tuple[str, ...]]:
    """Partition the buses into connected components.

    Components are ordered by the position of their first bus in the case,
    and buses inside a component keep case order.

    Args:
        case: The study system.

    Returns:
        One tuple of bus ids per component.
    """
    graph = network_graph(case)
    position = case.bus_index
    components = [
        tuple(sorted(component, key=position.__getitem__))
        for component in nx.connected_components(graph)
    ]
    components.sort(key=lambda comp: position[comp[0]])
    return components


def case_islands(case: GridCase) -> list[Island]:
    """Connected components paired with their configured slack bus.

    Raises:
        SingularIsland: If a component has no slack bus, or more than one.
    """
    result = []
    slack = set(case.slack_buses)
    for index, buses in enumerate(islands(case)):
        chosen = [bus for bus in buses if bus in slack]
        if len(chosen) != 1:
            raise SingularIsland(
                f"island {index} ({', '.join(buses[:5])}"
                f"{'...' if len(buses) > 5 else ''}) needs exactly one slack bus, "
                f"found {len(chosen)}"
            )
        result.append(Island(index=index, buses=buses, slack_bus=chosen[0]))
    return result


def island_of(case: GridCase) -> dict[str, int]:
    """Map each bus id to the index of its island."""
    return {bus: i for i, comp in enumerate(islands(case)) for bus in comp}


def charging_sites(
    case: GridCase,
    county: County,
    *,
    threshold_kv: float = CHARGING_VOLTAGE_KV,
) -> tuple[str, ...]:
    """Buses in a county eligible to host EV charging (voltage below threshold).

    Args:
        case: The study system.
        county: The county whose charging sites are wanted.
        threshold_kv: Strict upper voltage bound.

    Returns:
        Eligible bus ids in case order.

    Raises:
        CountyHasNoEligibleBus: If none qualify and the county burns fuel.
    """
    sites = tuple(
        bus.id
        for bus in case.buses
        if bus.county == county.fips and bus.voltage_kv < threshold_kv
    )
    if not sites and county.annual_gallons > 0:
        raise CountyHasNoEligibleBus(
            f"county {county.fips} has fuel demand but no bus below "
            f"{threshold_kv:g} kV"
        )
    return sites


def is_upgradable(line: Line, *, threshold_kv: float = UPGRADE_VOLTAGE_KV) -> bool:
    """True for lines strictly above the upgrade voltage threshold."""
    return line.voltage_kv > threshold_kv


def upgradable_lines(
    case: GridCase, *, threshold_kv: float = UPGRADE_VOLTAGE_KV
) -> tuple[str, ...]:
    """Ids of lines eligible for capacity upgrades."""
    return tuple(
        line.id for line in case.lines if is_upgradable(line, threshold_kv=threshold_kv)
    )
