"""DC susceptance model of an island.

Builds the branch incidence matrix and the weighted Laplacian
B = A^T diag(1/x) A used by the DC power-flow approximation.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
import scipy.sparse as sp

from ..errors import SingularIsland, UnknownBus
from ..grid.model import GridCase
from ..grid.topology import Island, case_islands

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SusceptanceModel:
    """Susceptance matrices of one island.

    Attributes:
        island: Island index.
        slack_bus: Reference bus id.
        bus_ids: Column order of the matrices.
        line_ids: Row order of ``incidence``.
        susceptance: 1/x per line.
        incidence: Signed lines x buses incidence (+1 from, -1 to).
        node_admittance: Weighted Laplacian, buses x buses.
    """

    island: int
    slack_bus: str
    bus_ids: tuple[str, ...]
    line_ids: tuple[str, ...]
    susceptance: np.ndarray
    incidence: sp.csr_matrix
    node_admittance: sp.csr_matrix

    @property
    def slack_position(self) -> int:
        return self.bus_ids.index(self.slack_bus)

    def reduced(self) -> sp.csc_matrix:
        """Laplacian with the slack row and column removed."""
        keep = np.array(
            [i for i in range(len(self.bus_ids)) if i != self.slack_position],
            dtype=int,
        )
        return self.node_admittance[keep][:, keep].tocsc()

    def branch_matrix(self) -> sp.csr_matrix:
        """diag(1/x) A, mapping bus angles to line flows."""
        return (sp.diags(self.susceptance) @ self.incidence).tocsr()


def _resolve_island(case: GridCase, island: Island | int | None) -> Island:
    if isinstance(island, Island):
        return island
    if island is None:
        # Whole case treated as a single island.
        slack = case.slack_buses[0] if len(case.slack_buses) == 1 else ""
        if not slack:
            raise SingularIsland(
                "treating the case as one island requires exactly one slack bus"
            )
        return Island(index=0, buses=tuple(b.id for b in case.buses), slack_bus=slack)
    return case_islands(case)[island]


def build_susceptance(
    case: GridCase, island: Island | int | None = None
) -> SusceptanceModel:
    """Build the susceptance model of an island.

    Args:
        case: Case holding the island.
        island: Island object or index; None treats every bus as one island.

    Returns:
        SusceptanceModel with Laplacian entries -1/x per line.

    Raises:
        SingularIsland: If the island's buses are not connected by its lines.
        UnknownBus: If the slack bus is not part of the island.
    """
    isl = _resolve_island(case, island)
    members = set(isl.buses)
    if isl.slack_bus not in members:
        raise UnknownBus(f"slack bus {isl.slack_bus} is not in island {isl.index}")

    lines = [ln for ln in case.lines if ln.from_bus in members and ln.to_bus in members]

    graph = nx.MultiGraph()
    graph.add_nodes_from(isl.buses)
    graph.add_edges_from((ln.from_bus, ln.to_bus) for ln in lines)
    if not nx.is_connected(graph):
        parts = nx.number_connected_components(graph)
        raise SingularIsland(f"island {isl.index} splits into {parts} components")

    position = {bus: i for i, bus in enumerate(isl.buses)}
    n_lines, n_buses = len(lines), len(isl.buses)
    rows = np.repeat(np.arange(n_lines), 2)
    cols = np.array(
        [position[b] for ln in lines for b in (ln.from_bus, ln.to_bus)], dtype=int
    )
    signs = np.tile([1.0, -1.0], n_lines)
    incidence = sp.csr_matrix((signs, (rows, cols)), shape=(n_lines, n_buses))
    susceptance = np.array([ln.susceptance for ln in lines], dtype=float)
    laplacian = (incidence.T @ sp.diags(susceptance) @ incidence).tocsr()

    logger.debug(
        "island %d: %d buses, %d lines, slack %s",
        isl.index,
        n_buses,
        n_lines,
        isl.slack_bus,
    )
    return SusceptanceModel(
        island=isl.index,
        slack_bus=isl.slack_bus,
        bus_ids=isl.buses,
        line_ids=tuple(ln.id for ln in lines),
        susceptance=susceptance,
        incidence=incidence,
        node_admittance=laplacian,
    )
