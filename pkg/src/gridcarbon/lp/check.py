"""Residual checks of candidate points against a linear program."""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from ..contracts import LpSolution, SolutionCheck
from .problem import LinearProgram, Relation

if TYPE_CHECKING:
    from .problem import LpArrays


def row_violations(arrays: LpArrays, values: np.ndarray) -> np.ndarray:
    """Per-row violation divided by the row's largest coefficient magnitude."""
    if not arrays.relations:
        return np.zeros(0)
    activity = arrays.matrix @ values
    gap = activity - arrays.rhs
    violation = np.zeros_like(gap)
    for i, rel in enumerate(arrays.relations):
        if rel is Relation.LE:
            violation[i] = max(gap[i], 0.0)
        elif rel is Relation.GE:
            violation[i] = max(-gap[i], 0.0)
        else:
            violation[i] = abs(gap[i])
    norms = np.asarray(abs(arrays.matrix).max(axis=1).todense()).ravel()
    norms[norms == 0] = 1.0
    return violation / norms


def check_solution(
    lp: LinearProgram,
    solution: LpSolution | np.ndarray,
    tol: float = 1e-6,
) -> SolutionCheck:
    """Report how well a point satisfies a linear program.

    Args:
        lp: The problem.
        solution: A solver outcome or a raw vector of variable levels.
        tol: Slack below which a row counts as active for the
            complementary-slackness check.

    Returns:
        SolutionCheck with bound/row violations and the largest
        |dual x slack| product over inactive rows.
    """
    arrays = lp.to_arrays()
    if isinstance(solution, LpSolution):
        values = np.asarray(solution.values, dtype=float)
        duals = np.asarray(solution.duals, dtype=float)
    else:
        values = np.asarray(solution, dtype=float)
        duals = np.zeros(0)

    bound = np.maximum(arrays.lower - values, values - arrays.upper)
    max_bound = float(max(bound.max(), 0.0)) if bound.size else 0.0
    rows = row_violations(arrays, values)
    max_row = float(rows.max()) if rows.size else 0.0

    gap = 0.0
    if duals.size == len(arrays.relations) and duals.size:
        slack = np.abs(arrays.matrix @ values - arrays.rhs)
        inactive = slack > tol
        if inactive.any():
            gap = float(np.max(np.abs(duals[inactive] * slack[inactive])))

    return SolutionCheck(
        max_bound_violation=max_bound,
        max_row_violation=max_row,
        complementary_gap=gap,
        objective=float(arrays.cost @ values) + lp.objective_constant,
    )
