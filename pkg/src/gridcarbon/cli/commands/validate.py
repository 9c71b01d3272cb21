"""Validate command implementation."""

import argparse
import json
import sys

from gridcarbon.cli.utils import EXIT_INPUT, EXIT_OK, handles_errors


@handles_errors
def run_validate(args: argparse.Namespace) -> int:
    """Execute the validate command.

    Args:
        args: Parsed command-line arguments.

    Returns:
        Exit code (0=valid, 3=invalid or unreadable bundle).
    """
    from gridcarbon.grid import validate_case
    from gridcarbon.io import CaseBundle, load_case, load_config

    bundle = CaseBundle.at(args.bundle)
    config = load_config(bundle.config_path, args.config)
    case = load_case(bundle, config, validate=False)
    report = validate_case(
        case,
        rules=args.rules.split(",") if args.rules else None,
        exclude_rules=args.exclude.split(",") if args.exclude else None,
    )

    if args.format == "json":
        payload = {
            "valid": report.valid,
            "rules_checked": report.rules_checked,
            "issues": [
                {
                    "code": issue.code,
                    "severity": issue.severity,
                    "entity": issue.entity,
                    "entity_id": issue.entity_id,
                    "message": issue.message,
                }
                for issue in report.issues
            ],
        }
        print(json.dumps(payload, indent=2))
    else:
        for issue in report.issues:
            stream = sys.stderr if issue.severity == "error" else sys.stdout
            print(
                f"{issue.code} {issue.severity} {issue.entity} {issue.entity_id}: {issue.message}",
                file=stream,
            )
        status = "valid" if report.valid else "invalid"
        print(
            f"Case is {status}: {args.bundle} "
            f"({len(case.buses)} buses, {len(case.lines)} lines, "
            f"{report.rules_checked} rules checked)"
        )

    return EXIT_OK if report.valid else EXIT_INPUT
