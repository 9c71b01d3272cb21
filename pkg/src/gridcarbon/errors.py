"""Exception hierarchy for gridcarbon.

Errors are grouped by concern so callers (and the CLI) can map them to
exit codes without inspecting messages.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .contracts import LpSolution, ValidationReport


class GridCarbonError(Exception):
    """Base class for every error raised by gridcarbon."""


# Input errors


class InputError(GridCarbonError):
    """Raised when user-supplied data cannot be used."""


class ParseError(InputError):
    """Raised when a data file cannot be parsed.

    Attributes:
        file: File that failed to parse.
        line: 1-based line number in the file (header is line 1).
        column: Column name, when known.
    """

    def __init__(
        self,
        message: str,
        *,
        file: str,
        line: int | None = None,
        column: str | None = None,
    ):
        self.file = file
        self.line = line
        self.column = column
        where = file
        if line is not None:
            where += f":{line}"
        if column is not None:
            where += f" [{column}]"
        super().__init__(f"{where}: {message}")


class CrossReferenceError(InputError):
    """Raised when a file references an id absent from another file."""


class ValidationError(InputError):
    """Raised when a loaded case violates a model invariant.

    Attributes:
        report: The full validation report.
    """

    def __init__(self, report: ValidationReport, message: str | None = None):
        self.report = report
        if message is None:
            lines = [f"{issue.code} {issue.message}" for issue in report.issues]
            message = "invalid case:\n  " + "\n  ".join(lines)
        super().__init__(message)


class ConfigError(InputError):
    """Raised for unknown or malformed configuration values."""


class UnknownBus(InputError):
    """Raised when an entity refers to a bus outside the case or island."""


class MissingRegionCurve(InputError):
    """Raised when a load's region has no representative-day curve."""


class IncompleteHistory(InputError):
    """Raised when regional hourly history does not cover a full year."""


class EmptyState(InputError):
    """Raised when a state has no counties or zero total population."""


# Network errors


class NetworkError(GridCarbonError):
    """Raised when the network cannot support the requested computation."""


class SingularIsland(NetworkError):
    """Raised when an island is disconnected or otherwise singular."""


class NumericallySingular(NetworkError):
    """Raised when a factorization pivot signals near-disconnection."""


class ImbalancedInjection(NetworkError):
    """Raised when a direct DC solve receives injections not summing to zero."""


class CountyHasNoEligibleBus(NetworkError):
    """Raised when a county with fuel demand has no charging-eligible bus."""


# Model errors


class ModelError(GridCarbonError):
    """Raised for optimization model failures."""


class MalformedProblem(ModelError):
    """Raised when a linear program references undeclared variables."""


class SolverLimitReached(ModelError):
    """Raised when the simplex iteration limit is exhausted."""


class InfeasibleModel(ModelError):
    """Raised when a dispatch model has no feasible point.

    Attributes:
        solution: The solver outcome carrying the phase-1 certificate.
    """

    def __init__(self, message: str, solution: LpSolution | None = None):
        self.solution = solution
        super().__init__(message)


class InfeasibleBaseCase(InfeasibleModel):
    """Raised when base load exceeds deliverable generation (economic dispatch)."""


class InfeasibleEvDemand(InfeasibleModel):
    """Raised when county EV energy cannot be delivered (re-dispatch)."""


class InfeasibleTarget(InfeasibleModel):
    """Raised when an emission cap is unreachable by upgrading lines."""


class UnboundedModel(ModelError):
    """Raised when a dispatch model is unbounded (indicates malformed data)."""


# Scenario errors


class ScenarioError(GridCarbonError):
    """Raised when a scenario cannot be constructed."""


class UnreachableLevel(ScenarioError):
    """Raised when a renewable target lies below the hydro-only floor."""


class NoVariableRenewables(ScenarioError):
    """Raised when an island has no solar or wind capacity to scale."""


class ReportError(GridCarbonError):
    """Raised when report files cannot be written."""
