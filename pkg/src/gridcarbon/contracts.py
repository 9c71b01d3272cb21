"""Result contracts shared across gridcarbon modules."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import StrEnum
from typing import Any

import numpy as np


@dataclass(frozen=True)
class ValidationIssue:
    """A single invariant violation found in a case.

    Attributes:
        code: The rule code (e.g., "GCV002").
        message: Description of the violation.
        entity: Entity kind ("bus", "line", "generator", ...).
        entity_id: Identifier of the offending entity.
        severity: Issue severity (error, warning).
    """

    code: str
    message: str
    entity: str
    entity_id: str
    severity: str = "error"


@dataclass(frozen=True)
class ValidationReport:
    """Result of validating a case.

    Attributes:
        valid: True when no error-severity issue was found.
        issues: Every issue, in rule order.
        rules_checked: Number of rules that ran.
    """

    valid: bool
    issues: tuple[ValidationIssue, ...]
    rules_checked: int

    @property
    def errors(self) -> tuple[ValidationIssue, ...]:
        return tuple(i for i in self.issues if i.severity == "error")

    def __bool__(self) -> bool:
        return self.valid


class LpStatus(StrEnum):
    """Outcome of a linear-program solve."""

    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LpSolution:
    """Outcome of a linear-program solve.

    Attributes:
        status: Optimal, infeasible or unbounded.
        values: Level of each variable, in declaration order.
        objective_value: Objective at ``values`` (nan unless optimal).
        duals: Row multipliers in row order (empty unless optimal).
        max_primal_residual: Largest bound or row violation of ``values``.
        iterations: Simplex iterations over both phases.
        variable_names: Names matching ``values``.
        infeasibility: Phase-1 sum of artificial residuals (the certificate).
        unbounded_variable: Index of the variable along an improving ray.
    """

    status: LpStatus
    values: np.ndarray
    objective_value: float
    duals: np.ndarray
    max_primal_residual: float
    iterations: int
    variable_names: tuple[str, ...]
    infeasibility: float = 0.0
    unbounded_variable: int | None = None

    @property
    def is_optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL

    def value(self, name: str) -> float:
        """Level of a variable by name."""
        return float(self.values[self.variable_names.index(name)])


@dataclass(frozen=True)
class SolutionCheck:
    """Residual report of a candidate point against a linear program.

    Attributes:
        max_bound_violation: Largest distance outside a variable bound.
        max_row_violation: Largest row violation after row-norm scaling.
        complementary_gap: Largest |dual x row slack| (0 without duals).
        objective: Objective value at the point.
    """

    max_bound_violation: float
    max_row_violation: float
    complementary_gap: float
    objective: float

    def feasible(self, tol: float = 1e-6) -> bool:
        return self.max_bound_violation <= tol and self.max_row_violation <= tol


# Flags recorded on outputs where the implementation normalizes the
# published model formulation.
FLAG_CAP_WITHOUT_LOSS = "emission_cap_without_loss_factor"
FLAG_UPGRADE_BALANCE_WITH_LOSS = "upgrade_balance_with_loss_factor"
FLAG_CALENDAR_WEIGHTS = "annualized_with_non_leap_calendar_days"
FLAG_UNBALANCED_LOSSES = "losses_not_redistributed_flows_depend_on_slack"


@dataclass(frozen=True, eq=False)
class BaseDispatch:
    """Cost-minimizing dispatch before EV integration.

    Attributes:
        generator_ids: Row labels of ``p_star``.
        line_ids: Row labels of ``flows``.
        p_star: Generator output, generators x hours, MW.
        flows: Line flows, lines x hours, MW.
        bus_loads: Base demand, buses x hours, MW.
        cost_total: Total generation cost in $.
        emissions_total_t: Total emissions in tonnes.
        slack_buses: Reference buses the flows were computed against.
        solution: Raw solver outcome.
    """

    generator_ids: tuple[str, ...]
    line_ids: tuple[str, ...]
    p_star: np.ndarray
    flows: np.ndarray
    bus_loads: np.ndarray
    cost_total: float
    emissions_total_t: float
    slack_buses: tuple[str, ...]
    solution: LpSolution | None = None
    flags: tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class EvDispatch:
    """Emissions-minimizing re-dispatch and charging schedule.

    Attributes:
        generator_ids: Row labels of ``delta_p``.
        station_ids: Charging station (bus) ids, rows of ``charging``.
        station_counties: County of each station.
        line_ids: Row labels of ``flows``.
        delta_p: Re-dispatch, generators x hours, MW (non-negative).
        charging: Station consumption, stations x hours, MW.
        flows: Line flows after re-dispatch, lines x hours, MW.
        e_ev_t: Emissions attributable to EV charging, tonnes.
        objective_t: Total emissions of base plus re-dispatch, tonnes.
        county_energy: Delivered charging energy per county, MWh.
        county_energy_residual: Largest |delivered - required| in MWh.
        max_primal_residual: Largest row or bound violation of the solve.
        relaxed: True when line limits were not enforced.
    """

    generator_ids: tuple[str, ...]
    station_ids: tuple[str, ...]
    station_counties: tuple[str, ...]
    line_ids: tuple[str, ...]
    delta_p: np.ndarray
    charging: np.ndarray
    flows: np.ndarray
    e_ev_t: float
    objective_t: float
    county_energy: dict[str, float]
    county_energy_residual: float
    max_primal_residual: float
    relaxed: bool = False
    solution: LpSolution | None = None
    flags: tuple[str, ...] = ()


@dataclass(frozen=True, eq=False)
class UpgradePlan:
    """Minimum MW-mile line capacity increments.

    Attributes:
        line_ids: Lines covered by the plan (row labels of ``delta_f``).
        delta_f: Capacity increment per line, MW.
        lengths_mi: Length of each line, miles.
        objective_mw_mile: Sum of delta_f x length.
        achieved_e_ev_t: EV emissions per day of the plan, tonnes.
        e_ev_max_t: The emission cap the plan was solved for.
        flags: Formulation deviation flags.
    """

    line_ids: tuple[str, ...]
    delta_f: np.ndarray
    lengths_mi: np.ndarray
    objective_mw_mile: float
    achieved_e_ev_t: tuple[float, ...] = ()
    e_ev_max_t: float = 0.0
    flags: tuple[str, ...] = ()

    @property
    def objective_gw_mile(self) -> float:
        return self.objective_mw_mile / 1000.0

    @property
    def binding_lines(self) -> tuple[str, ...]:
        """Lines receiving a positive increment."""
        return tuple(
            line_id
            for line_id, df in zip(self.line_ids, self.delta_f, strict=True)
            if df > 1e-9
        )

    def increments(self) -> dict[str, float]:
        return {
            line_id: float(df)
            for line_id, df in zip(self.line_ids, self.delta_f, strict=True)
        }


@dataclass(frozen=True)
class SweepRow:
    """One scenario point of a sweep.

    Attributes:
        penetration: EV penetration fraction.
        renewable_level: Target integration level (None for the case as is).
        mode: "constrained" or "relaxed".
        e_ev_t: Annual EV charging emissions, tonnes.
        e_icv_t: Annual ICV tailpipe emissions, tonnes.
        e_v_t: Annual vehicle operational emissions, tonnes.
        congestion_induced_t: Annual congestion-induced emissions, tonnes.
        status: "ok" or the error that stopped this point.
        scale_factor: Variable-renewable scale factor applied.
    """

    penetration: float
    renewable_level: float | None
    mode: str
    e_ev_t: float
    e_icv_t: float
    e_v_t: float
    congestion_induced_t: float
    status: str = "ok"
    scale_factor: float = 1.0

    def key(self) -> tuple[float, float, str]:
        level = -1.0 if self.renewable_level is None else self.renewable_level
        return (self.penetration, level, self.mode)


@dataclass(frozen=True)
class AnnualResult:
    """Annual emissions for one scenario point.

    Attributes:
        e_ev_t: Annual EV charging emissions, tonnes.
        e_icv_t: Annual ICV tailpipe emissions, tonnes.
        e_v_t: Annual vehicle operational emissions, tonnes.
        congestion_induced_t: Annual congestion-induced emissions, tonnes.
        metadata: Slack buses, deviation flags, day set.
    """

    e_ev_t: float
    e_icv_t: float
    e_v_t: float
    congestion_induced_t: float = 0.0
    metadata: dict[str, Any] = field(default_factory=dict)


@dataclass
class RunManifest:
    """Run metadata written next to every report.

    Attributes:
        version: Package version used for the run.
        command: The CLI command or API entry point.
        config: Echo of the effective configuration.
        flags: Formulation deviation flags.
        slack_buses: Reference buses per island.
        files: Names of the emitted files, sorted.
        libraries: Versions of the numerical libraries used.
    """

    version: str
    command: str
    config: dict[str, Any]
    flags: list[str]
    slack_buses: list[str]
    files: list[str] = field(default_factory=list)
    libraries: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "version": self.version,
            "command": self.command,
            "config": self.config,
            "flags": sorted(self.flags),
            "slack_buses": self.slack_buses,
            "files": sorted(self.files),
            "libraries": dict(sorted(self.libraries.items())),
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True) + "\n"
