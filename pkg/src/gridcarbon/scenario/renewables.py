"""Renewable integration level and variable-renewable capacity scaling.

The integration level is the solar, wind and hydro share of installed
capacity. Targets are met by scaling solar and wind capacity with one
factor s while hydro and every other source stay fixed.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass

from ..errors import InputError, NoVariableRenewables, UnreachableLevel
from ..grid.model import Fuel, GenerationUnit, GridCase
from ..grid.topology import islands

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CapacityMix:
    """Installed capacity by renewable class, MW.

    Attributes:
        variable: Solar plus wind.
        hydro: Hydropower.
        other: Every non-renewable source.
    """

    variable: float
    hydro: float
    other: float

    @property
    def total(self) -> float:
        return self.variable + self.hydro + self.other

    @property
    def level(self) -> float:
        return 0.0 if self.total <= 0 else (self.variable + self.hydro) / self.total


def _members(case: GridCase, island: int | None) -> list[GenerationUnit]:
    if island is None:
        return list(case.generators)
    components = islands(case)
    if not 0 <= island < len(components):
        raise InputError(f"case {case.name} has no island {island}")
    buses = set(components[island])
    return [g for g in case.generators if g.bus in buses]


def capacity_mix(case: GridCase, island: int | None = None) -> CapacityMix:
    """Installed capacity of a case, or of one island, by renewable class."""
    variable = hydro = other = 0.0
    for gen in _members(case, island):
        if gen.fuel.is_variable_renewable:
            variable += gen.capacity_mw
        elif gen.fuel is Fuel.HYDRO:
            hydro += gen.capacity_mw
        else:
            other += gen.capacity_mw
    return CapacityMix(variable=variable, hydro=hydro, other=other)


def renewable_level(case: GridCase, island: int | None = None) -> float:
    """Solar, wind and hydro share of installed capacity (0 without capacity)."""
    return capacity_mix(case, island).level


def renewable_scale_factor(
    case: GridCase, target_level: float, island: int | None = None
) -> float:
    """Factor on solar and wind capacity that reaches ``target_level``.

    Solves (s(S+W) + H) / (s(S+W) + H + NR) = target for s.

    Raises:
        NoVariableRenewables: If there is no solar or wind capacity.
        UnreachableLevel: If the target is 1 or more, or below the level
            reached with solar and wind removed entirely.
    """
    mix = capacity_mix(case, island)
    if mix.variable <= 0:
        raise NoVariableRenewables(
            f"{case.name}: no solar or wind capacity to scale"
            + ("" if island is None else f" in island {island}")
        )
    if not target_level < 1.0:
        raise UnreachableLevel(f"renewable level {target_level} is not below 1")
    s = (target_level * (mix.hydro + mix.other) - mix.hydro) / (
        (1.0 - target_level) * mix.variable
    )
    if s < 0:
        floor = mix.hydro / (mix.hydro + mix.other) if mix.hydro + mix.other > 0 else 0.0
        raise UnreachableLevel(
            f"renewable level {target_level} is below the hydro-only floor {floor:.6f}"
        )
    return s


def apply_renewable_scaling(
    case: GridCase, s: float, island: int | None = None
) -> GridCase:
    """Multiply solar and wind capacity by ``s``.

    Capability profiles are per-unit and stay unchanged, so hourly
    availability scales by ``s`` as well.
    """
    if s < 0:
        raise InputError(f"scale factor must be non-negative, got {s}")
    members = {g.id for g in _members(case, island)}
    generators = tuple(
        dataclasses.replace(g, capacity_mw=g.capacity_mw * s)
        if g.id in members and g.fuel.is_variable_renewable
        else g
        for g in case.generators
    )
    return dataclasses.replace(case, generators=generators)


def scale_to_level(
    case: GridCase, target_level: float, *, per_island: bool = True
) -> tuple[GridCase, tuple[float, ...]]:
    """Scale a case to a renewable level.

    With ``per_island`` every island holding generation is scaled to the
    target on its own; otherwise one factor brings the whole system there.

    Returns:
        The scaled case and the factor applied to each island (one factor
        for the whole-system mode).
    """
    if not per_island:
        s = renewable_scale_factor(case, target_level)
        return apply_renewable_scaling(case, s), (s,)
    factors: list[float] = []
    scaled = case
    for index in range(len(islands(case))):
        if capacity_mix(case, index).total <= 0:
            continue
        s = renewable_scale_factor(case, target_level, index)
        scaled = apply_renewable_scaling(scaled, s, index)
        factors.append(s)
    logger.debug("%s: renewable level %.4f via factors %s", case.name, target_level, factors)
    return scaled, tuple(factors)
