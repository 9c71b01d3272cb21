"""DC susceptance models and power transfer distribution factors."""

from .matrix import (
    PIVOT_TOLERANCE,
    EntityColumns,
    PtdfMatrix,
    SystemPtdf,
    compute_ptdf,
    dc_flows_direct,
    entity_columns,
    system_ptdf,
)
from .susceptance import SusceptanceModel, build_susceptance

__all__ = [
    "PIVOT_TOLERANCE",
    "EntityColumns",
    "PtdfMatrix",
    "SusceptanceModel",
    "SystemPtdf",
    "build_susceptance",
    "compute_ptdf",
    "dc_flows_direct",
    "entity_columns",
    "system_ptdf",
]
