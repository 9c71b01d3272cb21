"""Case-level validation rules.

These rules check system-wide parameters: the loss rate, the horizon and
the slack bus configuration of each island.
"""

from dataclasses import replace

from ...contracts import ValidationIssue
from ..model import GridCase
from ..topology import islands


class GCV010LossRate:
    """GCV010: Loss rate must lie in [0, 1)."""

    code = "GCV010"
    message = "Loss rate outside [0, 1)"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        if 0.0 <= case.loss_rate < 1.0:
            return []
        return [
            ValidationIssue(
                code=self.code,
                message=f"loss rate {case.loss_rate} outside [0, 1)",
                entity="case",
                entity_id=case.name,
            )
        ]


class GCV011TimeGrid:
    """GCV011: Horizon needs at least one hourly step."""

    code = "GCV011"
    message = "Invalid time grid"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        grid = case.time_grid
        problems = []
        if grid.hours < 1:
            problems.append(f"{grid.hours} steps")
        if grid.dt_h != 1.0:
            problems.append(f"step length {grid.dt_h} h")
        return [
            ValidationIssue(
                code=self.code,
                message=f"time grid has {problem}",
                entity="case",
                entity_id=case.name,
            )
            for problem in problems
        ]


class GCV012SlackPerIsland:
    """GCV012: Each island has exactly one configured slack bus."""

    code = "GCV012"
    message = "Island slack bus misconfigured"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        known = case.bus_map
        for bus_id in case.slack_buses:
            if bus_id not in known:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=f"slack bus {bus_id} does not exist",
                        entity="bus",
                        entity_id=bus_id,
                    )
                )

        # Dangling lines are reported by GCV002; leave them out of the graph.
        usable = tuple(
            line
            for line in case.lines
            if line.from_bus in known and line.to_bus in known
        )
        components = islands(replace(case, lines=usable))
        slack = set(case.slack_buses)
        for index, component in enumerate(components):
            count = sum(1 for bus in component if bus in slack)
            if count != 1:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=(
                            f"island {index} containing bus {component[0]} has "
                            f"{count} slack buses"
                        ),
                        entity="island",
                        entity_id=component[0],
                    )
                )
        return issues
