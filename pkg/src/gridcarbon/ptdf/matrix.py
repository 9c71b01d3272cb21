"""Power transfer distribution factors.

PTDF[l, i] is the change of flow on line l when 1 MW is injected at bus i
and withdrawn at the island's slack bus. The matrix is stored densely
(lines x buses, 8 bytes per entry). The reduced Laplacian stays sparse: it
is factorized once by SuperLU with a symmetric fill-reducing ordering and
no row pivoting, which for a positive definite matrix is a sparse LDL^T
whose diagonal holds the Cholesky pivots, then solved for every line.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
import pandas as pd
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import ImbalancedInjection, NumericallySingular, UnknownBus
from ..grid.model import GridCase
from ..grid.topology import case_islands
from .susceptance import SusceptanceModel, build_susceptance

logger = logging.getLogger(__name__)

# Factorization pivots below this fraction of the largest diagonal are refused.
PIVOT_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class PtdfMatrix:
    """PTDF table of one island.

    Attributes:
        values: Lines x buses sensitivities.
        line_ids: Row labels.
        bus_ids: Column labels.
        slack_bus: Bus whose column is identically zero.
        island: Island index.
    """

    values: np.ndarray
    line_ids: tuple[str, ...]
    bus_ids: tuple[str, ...]
    slack_bus: str
    island: int = 0

    def column(self, bus_id: str) -> np.ndarray:
        """Sensitivity of every line to an injection at ``bus_id``."""
        try:
            return self.values[:, self.bus_ids.index(bus_id)]
        except ValueError:
            raise UnknownBus(
                f"bus {bus_id} is not in island {self.island}"
            ) from None

    def flows(self, injections: np.ndarray) -> np.ndarray:
        """Line flows for per-bus injections (bus_ids order)."""
        return self.values @ injections

    def to_frame(self) -> pd.DataFrame:
        """Rows indexed by line id, columns by bus id."""
        return pd.DataFrame(self.values, index=list(self.line_ids), columns=list(self.bus_ids))


def _factorize(reduced: sp.csc_matrix, island: int) -> spla.SuperLU:
    """Sparse symmetric factorization of the reduced Laplacian.

    Rows are permuted like the columns, so every pivot is a diagonal
    entry of U. All of them must be positive and at least
    ``PIVOT_TOLERANCE`` times the largest diagonal of the matrix.
    """
    try:
        factor = spla.splu(
            reduced.tocsc(),
            permc_spec="MMD_AT_PLUS_A",
            diag_pivot_thresh=0.0,
            options={"SymmetricMode": True},
        )
    except RuntimeError as e:
        raise NumericallySingular(
            f"reduced susceptance of island {island} is singular"
        ) from e
    pivots = factor.U.diagonal()
    if pivots.min() <= 0.0:
        raise NumericallySingular(
            f"reduced susceptance of island {island} is not positive definite"
        )
    if pivots.min() < PIVOT_TOLERANCE * reduced.diagonal().max():
        raise NumericallySingular(
            f"island {island}: pivot {pivots.min():.3e} signals near-disconnection"
        )
    return factor


def compute_ptdf(model: SusceptanceModel) -> PtdfMatrix:
    """Compute the PTDF matrix of an island.

    Args:
        model: Susceptance model of a connected island.

    Returns:
        PtdfMatrix with a zero slack column.

    Raises:
        NumericallySingular: If the reduced Laplacian is not positive
            definite or a pivot falls below the tolerance.
    """
    n_buses = len(model.bus_ids)
    n_lines = len(model.line_ids)
    values = np.zeros((n_lines, n_buses))
    slack = model.slack_position
    keep = np.array([i for i in range(n_buses) if i != slack], dtype=int)

    if keep.size and n_lines:
        reduced = model.reduced()
        factor = _factorize(reduced, model.island)
        branch = model.branch_matrix()[:, keep].toarray()
        # B_r is symmetric, so PTDF_r^T = B_r^{-1} (diag(b) A_r)^T.
        values[:, keep] = factor.solve(np.ascontiguousarray(branch.T)).T

    values.flags.writeable = False
    logger.debug("island %d: PTDF %d x %d", model.island, n_lines, n_buses)
    return PtdfMatrix(
        values=values,
        line_ids=model.line_ids,
        bus_ids=model.bus_ids,
        slack_bus=model.slack_bus,
        island=model.island,
    )


@dataclass(frozen=True)
class EntityColumns:
    """PTDF vectors per injection entity.

    Attributes:
        generators: Generator id to its PTDF vector.
        loads: Load id to its PTDF vector.
        stations: Charging station (bus) id to its PTDF vector.
    """

    generators: dict[str, np.ndarray] = field(default_factory=dict)
    loads: dict[str, np.ndarray] = field(default_factory=dict)
    stations: dict[str, np.ndarray] = field(default_factory=dict)


def entity_columns(
    ptdf: PtdfMatrix,
    case: GridCase,
    stations: Sequence[str] = (),
) -> EntityColumns:
    """Map generators, loads and stations of the island to PTDF vectors.

    Every entity's vector is the column of its hosting bus.

    Args:
        ptdf: PTDF table of one island.
        case: Case the table was computed for.
        stations: Charging station bus ids.

    Raises:
        UnknownBus: If a station lies outside the island.
    """
    members = set(ptdf.bus_ids)
    for bus_id in stations:
        if bus_id not in members:
            raise UnknownBus(f"station bus {bus_id} is not in island {ptdf.island}")
    return EntityColumns(
        generators={g.id: ptdf.column(g.bus) for g in case.generators if g.bus in members},
        loads={ld.id: ptdf.column(ld.bus) for ld in case.loads if ld.bus in members},
        stations={bus_id: ptdf.column(bus_id) for bus_id in stations},
    )


@dataclass(frozen=True, eq=False)
class SystemPtdf:
    """PTDF tables of every island assembled into one lines x buses matrix.

    Entries between a line and a bus of different islands are zero, so
    ``values @ injections`` gives every line flow at once.

    Attributes:
        values: Lines x buses, case order on both axes.
        line_ids: Row labels (case line order).
        bus_ids: Column labels (case bus order).
        islands: Per-island PTDF tables.
    """

    values: np.ndarray
    line_ids: tuple[str, ...]
    bus_ids: tuple[str, ...]
    islands: tuple[PtdfMatrix, ...]

    @property
    def slack_buses(self) -> tuple[str, ...]:
        return tuple(p.slack_bus for p in self.islands)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.values, index=list(self.line_ids), columns=list(self.bus_ids))


def system_ptdf(case: GridCase) -> SystemPtdf:
    """Compute and assemble the PTDF tables of every island of a case."""
    tables = tuple(
        compute_ptdf(build_susceptance(case, island)) for island in case_islands(case)
    )
    values = np.zeros((len(case.lines), len(case.buses)))
    for table in tables:
        rows = [case.line_index[line_id] for line_id in table.line_ids]
        cols = [case.bus_index[bus_id] for bus_id in table.bus_ids]
        values[np.ix_(rows, cols)] = table.values
    values.flags.writeable = False
    return SystemPtdf(
        values=values,
        line_ids=tuple(ln.id for ln in case.lines),
        bus_ids=tuple(b.id for b in case.buses),
        islands=tables,
    )


def dc_flows_direct(
    case: GridCase,
    injections: Mapping[str, float] | np.ndarray,
    *,
    tolerance: float = 1e-6,
) -> np.ndarray:
    """Solve the DC power flow directly, without PTDFs.

    Solves B_r theta = P_r per island with a sparse LU and returns
    (theta_from - theta_to) / x per line. Serves as an independent check
    of the PTDF tables.

    Args:
        case: Network to solve.
        injections: Net injection per bus, as a mapping or a case-ordered array.
        tolerance: Allowed island imbalance relative to the withdrawn power.

    Returns:
        Flow per line in case order, MW.

    Raises:
        ImbalancedInjection: If an island's injections do not sum to zero.
    """
    if isinstance(injections, Mapping):
        vector = np.zeros(len(case.buses))
        for bus_id, mw in injections.items():
            vector[case.bus_index[bus_id]] = mw
    else:
        vector = np.asarray(injections, dtype=float)

    flows = np.zeros(len(case.lines))
    for island in case_islands(case):
        model = build_susceptance(case, island)
        p = vector[[case.bus_index[b] for b in model.bus_ids]]
        withdrawn = float(-p[p < 0].sum())
        if abs(p.sum()) > tolerance * max(withdrawn, 1.0):
            raise ImbalancedInjection(
                f"island {island.index} injections sum to {p.sum():.6g} MW"
            )
        theta = np.zeros(len(model.bus_ids))
        keep = [i for i in range(len(model.bus_ids)) if i != model.slack_position]
        if keep and model.line_ids:
            theta[keep] = spla.spsolve(model.reduced(), p[keep])
        island_flows = model.branch_matrix() @ theta
        for line_id, flow in zip(model.line_ids, island_flows, strict=True):
            flows[case.line_index[line_id]] = flow
    return flows
