"""Case validation.

Runs the rule registry over a case and collects every violation into a
report. Validation never raises; callers decide what a failing report means.
"""

from ..contracts import ValidationIssue, ValidationReport
from .model import GridCase
from .rules import RULE_REGISTRY


def validate_case(
    case: GridCase,
    *,
    rules: list[str] | None = None,
    exclude_rules: list[str] | None = None,
) -> ValidationReport:
    """Validate a case against the registered rules.

    Args:
        case: The case to validate.
        rules: List of rule codes to run (None = all rules).
        exclude_rules: List of rule codes to exclude.

    Returns:
        ValidationReport listing every violation with its entity id.
    """
    rules_to_run = list(RULE_REGISTRY) if rules is None else list(rules)
    if exclude_rules:
        rules_to_run = [r for r in rules_to_run if r not in exclude_rules]

    issues: list[ValidationIssue] = []
    checked = 0
    for rule_code in rules_to_run:
        rule_class = RULE_REGISTRY.get(rule_code)
        if rule_class is None:
            continue
        issues.extend(rule_class().check(case))
        checked += 1

    return ValidationReport(
        valid=not any(issue.severity == "error" for issue in issues),
        issues=tuple(issues),
        rules_checked=checked,
    )
