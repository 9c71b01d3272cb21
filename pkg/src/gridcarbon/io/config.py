"""Run configuration.

Configuration is a flat YAML mapping of documented keys. Later sources win:
a bundle's own ``config.yaml``, a user config file, ``GRIDCARBON_<KEY>``
environment variables, then explicit CLI flags.
"""

from __future__ import annotations

import dataclasses
import logging
import os
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from ..errors import ConfigError
from ..fleet import FleetAssumptions
from ..grid.model import CHARGING_VOLTAGE_KV, DEFAULT_LOSS_RATE, UPGRADE_VOLTAGE_KV
from ..lp import FEASIBILITY_TOL, OPTIMALITY_TOL

logger = logging.getLogger(__name__)

ENV_PREFIX = "GRIDCARBON_"


@dataclass
class RunConfig:
    """Settings of one run.

    Attributes:
        loss_rate: Transmission loss rate tau.
        slack_buses: Reference bus per island; empty selects the first bus
            of each island.
        penetration: EV penetration in [0, 1].
        icv_mpge: Combustion-vehicle fuel economy.
        ev_mpge: EV fuel economy.
        kwh_per_gallon_ev: Electricity replacing one gallon of fuel.
        kg_co2_per_gallon: Tailpipe CO2 of one gallon.
        renewable_targets: Renewable levels swept when the scenario file
            names no ``renewable_levels``.
        relaxed: Drop line limits in the re-dispatch.
        charging_kv: Charging stations sit on buses strictly below this.
        upgrade_kv: Only lines strictly above this may be upgraded.
        feasibility_tol: Simplex primal feasibility tolerance.
        optimality_tol: Simplex reduced-cost tolerance.
        day_set: "months" or "seasons".
        months: Months dispatched.
        wind_rated_speed: Rated wind speed for the plateau power curve;
            unset keeps the cubic curve up to cut-off.
        out_dir: Output directory.
        seed: Seed for synthetic cases.
        workers: Processes for per-day and per-scenario solves.
    """

    loss_rate: float = DEFAULT_LOSS_RATE
    slack_buses: list[str] = field(default_factory=list)
    penetration: float = 0.0
    icv_mpge: float = 26.0
    ev_mpge: float = 98.2
    kwh_per_gallon_ev: float = 8.9
    kg_co2_per_gallon: float = 8.9
    renewable_targets: list[float] = field(default_factory=list)
    relaxed: bool = False
    charging_kv: float = CHARGING_VOLTAGE_KV
    upgrade_kv: float = UPGRADE_VOLTAGE_KV
    feasibility_tol: float = FEASIBILITY_TOL
    optimality_tol: float = OPTIMALITY_TOL
    day_set: str = "months"
    months: list[int] = field(default_factory=lambda: list(range(1, 13)))
    wind_rated_speed: float | None = None
    out_dir: str = "out"
    seed: int = 0
    workers: int = 1

    def fleet(self) -> FleetAssumptions:
        """Fleet factors of this configuration."""
        return FleetAssumptions(
            icv_mpge=self.icv_mpge,
            ev_mpge=self.ev_mpge,
            kwh_per_gallon_ev=self.kwh_per_gallon_ev,
            kg_co2_per_gallon=self.kg_co2_per_gallon,
            penetration=self.penetration,
        )

    def to_dict(self) -> dict[str, Any]:
        return dataclasses.asdict(self)

    def updated(self, values: Mapping[str, Any], source: str) -> RunConfig:
        """Copy with ``values`` applied; None values are skipped."""
        changes = {}
        for key, value in values.items():
            if value is None:
                continue
            changes[key] = _coerce(key, value, source)
        return dataclasses.replace(self, **changes)


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_LIST_ITEM = {"slack_buses": str, "renewable_targets": float, "months": int}


def _coerce(key: str, value: Any, source: str) -> Any:
    if key not in _FIELDS:
        raise ConfigError(f"{source}: unknown configuration key {key!r}")
    default = getattr(RunConfig(), key)
    try:
        if key in _LIST_ITEM:
            items = value if isinstance(value, list | tuple) else [value]
            return [_LIST_ITEM[key](item) for item in items]
        if key == "wind_rated_speed":
            return float(value)
        if isinstance(default, bool):
            if not isinstance(value, bool):
                raise ValueError(f"expected true or false, got {value!r}")
            return value
        return type(default)(value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"{source}: bad value for {key}: {e}") from e


def read_config_file(path: Path | str) -> dict[str, Any]:
    """Parse a flat YAML config file.

    Raises:
        ConfigError: If the file cannot be read or is not a flat mapping.
    """
    path = Path(path)
    try:
        data = yaml.safe_load(path.read_text())
    except (OSError, yaml.YAMLError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must be a mapping")
    for key, value in data.items():
        if isinstance(value, dict):
            raise ConfigError(f"config {path}: key {key!r} is nested; the format is flat")
    return data


def env_overrides(env: Mapping[str, str]) -> dict[str, Any]:
    """Configuration values from ``GRIDCARBON_<KEY>`` variables."""
    values: dict[str, Any] = {}
    for name, raw in env.items():
        if not name.startswith(ENV_PREFIX):
            continue
        key = name[len(ENV_PREFIX) :].lower()
        try:
            values[key] = yaml.safe_load(raw)
        except yaml.YAMLError as e:
            raise ConfigError(f"{name}: {e}") from e
    return values


def load_config(
    *paths: Path | str | None,
    env: Mapping[str, str] | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Resolve the run configuration.

    Args:
        *paths: Config files in increasing precedence; None and missing
            bundle files are skipped.
        env: Environment (defaults to ``os.environ``).
        overrides: Explicit CLI values (None entries ignored).

    Raises:
        ConfigError: For unknown keys or malformed values.
    """
    config = RunConfig()
    for path in paths:
        if path is None:
            continue
        config = config.updated(read_config_file(path), str(path))
    config = config.updated(env_overrides(os.environ if env is None else env), "environment")
    if overrides:
        config = config.updated(overrides, "command line")
    config.fleet()
    logger.debug("configuration: %s", config.to_dict())
    return config
