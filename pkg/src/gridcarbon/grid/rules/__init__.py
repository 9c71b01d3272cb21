"""Validation rules for study cases.

This package contains categorized rules:
- entity_rules: field ranges and references of individual entities
- network_rules: loss rate, horizon and slack configuration
"""

from .base import CaseRule
from .entity_rules import (
    GCV001DuplicateIds,
    GCV002UnknownBusReference,
    GCV003BusVoltage,
    GCV004LineParameters,
    GCV005GeneratorParameters,
    GCV006CapabilityProfile,
    GCV007LoadParameters,
    GCV008CountyParameters,
    GCV009UnknownCounty,
)
from .network_rules import GCV010LossRate, GCV011TimeGrid, GCV012SlackPerIsland

# All available rules, in execution order
ALL_RULES: list[type] = [
    GCV001DuplicateIds,
    GCV002UnknownBusReference,
    GCV003BusVoltage,
    GCV004LineParameters,
    GCV005GeneratorParameters,
    GCV006CapabilityProfile,
    GCV007LoadParameters,
    GCV008CountyParameters,
    GCV009UnknownCounty,
    GCV010LossRate,
    GCV011TimeGrid,
    GCV012SlackPerIsland,
]

# Rule code to class mapping
RULE_REGISTRY: dict[str, type] = {rule.code: rule for rule in ALL_RULES}

__all__ = [
    "ALL_RULES",
    "RULE_REGISTRY",
    "CaseRule",
    "GCV001DuplicateIds",
    "GCV002UnknownBusReference",
    "GCV003BusVoltage",
    "GCV004LineParameters",
    "GCV005GeneratorParameters",
    "GCV006CapabilityProfile",
    "GCV007LoadParameters",
    "GCV008CountyParameters",
    "GCV009UnknownCounty",
    "GCV010LossRate",
    "GCV011TimeGrid",
    "GCV012SlackPerIsland",
]
