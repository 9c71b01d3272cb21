"""Linear programming: problem model, revised simplex solver, residual checks."""

from .check import check_solution, row_violations
from .dump import format_lp_text, write_lp_text
from .problem import LinearProgram, LpArrays, LpBuilder, Relation, Row, Variable
from .simplex import FEASIBILITY_TOL, OPTIMALITY_TOL, solve_lp

__all__ = [
    "FEASIBILITY_TOL",
    "OPTIMALITY_TOL",
    "LinearProgram",
    "LpArrays",
    "LpBuilder",
    "Relation",
    "Row",
    "Variable",
    "check_solution",
    "format_lp_text",
    "row_violations",
    "solve_lp",
    "write_lp_text",
]
