"""Per-entity validation rules.

These rules check field ranges and references of individual buses, lines,
generators, loads and counties.
"""

import math
from collections import Counter

from ...contracts import ValidationIssue
from ..model import GridCase


class GCV001DuplicateIds:
    """GCV001: Entity ids must be unique within their kind."""

    code = "GCV001"
    message = "Duplicate id"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        groups = {
            "bus": [b.id for b in case.buses],
            "line": [ln.id for ln in case.lines],
            "generator": [g.id for g in case.generators],
            "load": [ld.id for ld in case.loads],
            "county": [c.fips for c in case.counties],
        }
        for entity, ids in groups.items():
            for entity_id, count in Counter(ids).items():
                if count > 1:
                    issues.append(
                        ValidationIssue(
                            code=self.code,
                            message=f"{entity} id {entity_id!r} appears {count} times",
                            entity=entity,
                            entity_id=entity_id,
                        )
                    )
        return issues


class GCV002UnknownBusReference:
    """GCV002: Lines, generators and loads must reference existing buses."""

    code = "GCV002"
    message = "Reference to a missing bus"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        known = case.bus_map

        def missing(entity: str, entity_id: str, bus_id: str) -> None:
            issues.append(
                ValidationIssue(
                    code=self.code,
                    message=f"{entity} {entity_id} references missing bus {bus_id}",
                    entity=entity,
                    entity_id=entity_id,
                )
            )

        for line in case.lines:
            for bus_id in (line.from_bus, line.to_bus):
                if bus_id not in known:
                    missing("line", line.id, bus_id)
        for gen in case.generators:
            if gen.bus not in known:
                missing("generator", gen.id, gen.bus)
        for load in case.loads:
            if load.bus not in known:
                missing("load", load.id, load.bus)
        return issues


class GCV003BusVoltage:
    """GCV003: Bus voltages must be positive."""

    code = "GCV003"
    message = "Bus voltage must be positive"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        return [
            ValidationIssue(
                code=self.code,
                message=f"bus {bus.id} has voltage {bus.voltage_kv} kV",
                entity="bus",
                entity_id=bus.id,
            )
            for bus in case.buses
            if not bus.voltage_kv > 0
        ]


class GCV004LineParameters:
    """GCV004: Line reactance and capacity positive, length non-negative, no self loops."""

    code = "GCV004"
    message = "Invalid line parameters"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        for line in case.lines:
            problems = []
            if not line.reactance_pu > 0 or not math.isfinite(line.reactance_pu):
                problems.append(f"reactance {line.reactance_pu}")
            if not line.capacity_mw > 0:
                problems.append(f"capacity {line.capacity_mw} MW")
            if not line.length_mi >= 0:
                problems.append(f"length {line.length_mi} mi")
            if line.voltage_kv < 0:
                problems.append(f"voltage {line.voltage_kv} kV")
            if line.from_bus == line.to_bus:
                problems.append(f"both ends at bus {line.from_bus}")
            for problem in problems:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=f"line {line.id}: invalid {problem}",
                        entity="line",
                        entity_id=line.id,
                    )
                )
        return issues


class GCV005GeneratorParameters:
    """GCV005: Generator capacity, ramp rates and emission rate non-negative."""

    code = "GCV005"
    message = "Invalid generator parameters"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        for gen in case.generators:
            fields = {
                "capacity_mw": gen.capacity_mw,
                "ramp_up_mw_per_h": gen.ramp_up_mw_per_h,
                "ramp_down_mw_per_h": gen.ramp_down_mw_per_h,
                "emission_t_per_gwh": gen.emission_t_per_gwh,
            }
            for name, value in fields.items():
                if not value >= 0:
                    issues.append(
                        ValidationIssue(
                            code=self.code,
                            message=f"generator {gen.id}: {name} = {value} is negative",
                            entity="generator",
                            entity_id=gen.id,
                        )
                    )
            if not math.isfinite(gen.capacity_mw) or not math.isfinite(
                gen.cost_per_mwh
            ):
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=f"generator {gen.id}: capacity and cost must be finite",
                        entity="generator",
                        entity_id=gen.id,
                    )
                )
        return issues


class GCV006CapabilityProfile:
    """GCV006: Capability profiles cover the horizon with values in [0, 1]."""

    code = "GCV006"
    message = "Invalid capability profile"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        for gen in case.generators:
            profile = gen.capability_profile
            if not profile:
                continue
            if len(profile) != case.hours:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=(
                            f"generator {gen.id}: profile has {len(profile)} values, "
                            f"horizon has {case.hours}"
                        ),
                        entity="generator",
                        entity_id=gen.id,
                    )
                )
            bad = [v for v in profile if not 0.0 <= v <= 1.0]
            if bad:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=f"generator {gen.id}: profile value {bad[0]} outside [0, 1]",
                        entity="generator",
                        entity_id=gen.id,
                    )
                )
        return issues


class GCV007LoadParameters:
    """GCV007: Load peaks must be non-negative."""

    code = "GCV007"
    message = "Load peak must be non-negative"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        return [
            ValidationIssue(
                code=self.code,
                message=f"load {load.id} has peak {load.peak_mw} MW",
                entity="load",
                entity_id=load.id,
            )
            for load in case.loads
            if not load.peak_mw >= 0
        ]


class GCV008CountyParameters:
    """GCV008: County population positive, fuel non-negative, penetration in [0, 1]."""

    code = "GCV008"
    message = "Invalid county parameters"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        issues: list[ValidationIssue] = []
        for county in case.counties:
            problems = []
            if not county.population > 0:
                problems.append(f"population {county.population}")
            if not county.annual_gallons >= 0:
                problems.append(f"annual_gallons {county.annual_gallons}")
            if county.penetration is not None and not 0 <= county.penetration <= 1:
                problems.append(f"penetration {county.penetration}")
            for problem in problems:
                issues.append(
                    ValidationIssue(
                        code=self.code,
                        message=f"county {county.fips}: invalid {problem}",
                        entity="county",
                        entity_id=county.fips,
                    )
                )
        return issues


class GCV009UnknownCounty:
    """GCV009: Bus counties should be declared (warning only)."""

    code = "GCV009"
    message = "Bus references an undeclared county"

    def check(self, case: GridCase) -> list[ValidationIssue]:
        if not case.counties:
            return []
        known = case.county_map
        return [
            ValidationIssue(
                code=self.code,
                message=f"bus {bus.id} lies in undeclared county {bus.county}",
                entity="bus",
                entity_id=bus.id,
                severity="warning",
            )
            for bus in case.buses
            if bus.county and bus.county not in known
        ]
