"""Network relaxation and the solve wrapper shared by the dispatch models."""

from __future__ import annotations

import dataclasses
import logging
import math

from ..contracts import LpSolution, LpStatus
from ..errors import InfeasibleModel, UnboundedModel
from ..grid.model import GridCase
from ..lp import FEASIBILITY_TOL, OPTIMALITY_TOL, LinearProgram, solve_lp

logger = logging.getLogger(__name__)


def relax_network(case: GridCase) -> GridCase:
    """Copy of ``case`` with every line capacity set to +inf.

    Flow rows of lines with infinite capacity are omitted by every model
    builder, so the relaxed case dispatches as a copper plate per island.
    """
    logger.debug("relaxing %d line limits of %s", len(case.lines), case.name)
    return dataclasses.replace(
        case,
        lines=tuple(dataclasses.replace(line, capacity_mw=math.inf) for line in case.lines),
        name=f"{case.name}-relaxed",
    )


def is_relaxed(case: GridCase) -> bool:
    """True when no line limit is enforced."""
    return all(math.isinf(line.capacity_mw) for line in case.lines)


def solve_or_raise(
    lp: LinearProgram,
    infeasible: type[InfeasibleModel],
    *,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
) -> LpSolution:
    """Solve ``lp`` and raise the model's infeasibility error on failure.

    Raises:
        InfeasibleModel: Subclass ``infeasible``, carrying the solver outcome.
        UnboundedModel: If the program is unbounded.
    """
    solution = solve_lp(lp, feasibility_tol=feasibility_tol, optimality_tol=optimality_tol)
    if solution.status is LpStatus.INFEASIBLE:
        raise infeasible(
            f"{lp.name}: no feasible point (phase-1 residual {solution.infeasibility:.3e})",
            solution,
        )
    if solution.status is LpStatus.UNBOUNDED:
        raise UnboundedModel(
            f"{lp.name}: unbounded along {solution.unbounded_variable}"
        )
    return solution
