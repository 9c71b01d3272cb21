"""Base protocol for case validation rules."""

from typing import Protocol

from ...contracts import ValidationIssue
from ..model import GridCase


class CaseRule(Protocol):
    """Protocol for case validation rules."""

    code: str
    message: str

    def check(self, case: GridCase) -> list[ValidationIssue]:
        """Check the case for violations.

        Args:
            case: The case being validated.

        Returns:
            List of issues found.
        """
        ...
