"""Bounded-variable revised simplex.

The solver works on the equilibrated problem

    min c'x  s.t.  A x + s = b,  l <= x <= u,  s in S(relation)

where every row owns a logical (slack) column whose bounds encode the row
relation. Phase 1 minimizes the sum of artificial columns added to rows
whose starting slack is out of bounds; phase 2 fixes the artificials at zero
and minimizes the real cost. The basis inverse is kept dense and updated
with a product-form step, refactorized every ``REFACTOR_EVERY`` pivots.

Pricing is Dantzig (largest reduced cost). After ``DEGENERATE_STREAK``
consecutive degenerate pivots the phase switches to Bland's smallest-index
rule for both entering and leaving choices, which guarantees termination.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from ..contracts import LpSolution, LpStatus
from ..errors import SolverLimitReached
from .check import row_violations
from .problem import LinearProgram, Relation

logger = logging.getLogger(__name__)

FEASIBILITY_TOL = 1e-6
OPTIMALITY_TOL = 1e-7
PIVOT_TOL = 1e-9
REFACTOR_EVERY = 100
DEGENERATE_STREAK = 50


class _At(IntEnum):
    BASIC = 0
    LOWER = 1
    UPPER = 2
    FREE = 3
    FIXED = 4


@dataclass
class _Phase:
    optimal: bool
    unbounded_column: int | None = None


def _power_of_two(scale: np.ndarray) -> np.ndarray:
    return np.exp2(np.round(np.log2(scale)))


def _equilibrate(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row then column max-norm scale factors, rounded to powers of two."""
    m, n = matrix.shape
    rows = np.ones(m)
    cols = np.ones(n)
    if m and n:
        row_max = np.abs(matrix).max(axis=1)
        rows = np.where(row_max > 0, 1.0 / np.where(row_max > 0, row_max, 1.0), 1.0)
        rows = _power_of_two(rows)
        col_max = np.abs(matrix * rows[:, None]).max(axis=0)
        cols = np.where(col_max > 0, 1.0 / np.where(col_max > 0, col_max, 1.0), 1.0)
        cols = _power_of_two(cols)
    return rows, cols


class _Simplex:
    """Working state of one solve."""

    def __init__(
        self,
        A: np.ndarray,
        b: np.ndarray,
        lower: np.ndarray,
        upper: np.ndarray,
        *,
        feasibility_tol: float,
        optimality_tol: float,
        max_iterations: int,
    ):
        self.A = A
        self.b = b
        self.lower = lower
        self.upper = upper
        self.m, self.ncols = A.shape
        self.feas_tol = feasibility_tol
        self.opt_tol = optimality_tol
        self.max_iterations = max_iterations
        self.iterations = 0
        self.x = np.zeros(self.ncols)
        self.status = np.full(self.ncols, _At.LOWER, dtype=np.int8)
        self.basis = np.zeros(self.m, dtype=int)
        self.binv = np.eye(self.m)
        self.since_refactor = 0

    # basis bookkeeping

    def place_nonbasic(self, j: int) -> None:
        lo, up = self.lower[j], self.upper[j]
        if lo == up:
            self.status[j], self.x[j] = _At.FIXED, lo
        elif math.isfinite(lo):
            self.status[j], self.x[j] = _At.LOWER, lo
        elif math.isfinite(up):
            self.status[j], self.x[j] = _At.UPPER, up
        else:
            self.status[j], self.x[j] = _At.FREE, 0.0

    def refactor(self) -> None:
        if self.m:
            self.binv = np.linalg.inv(self.A[:, self.basis])
            nonbasic = np.ones(self.ncols, dtype=bool)
            nonbasic[self.basis] = False
            residual = self.b - self.A[:, nonbasic] @ self.x[nonbasic]
            self.x[self.basis] = self.binv @ residual
        self.since_refactor = 0
        logger.debug("refactorized basis at iteration %d", self.iterations)

    def pivot(self, r: int, alpha: np.ndarray) -> None:
        row = self.binv[r] / alpha[r]
        self.binv -= np.outer(alpha, row)
        self.binv[r] = row
        self.since_refactor += 1
        if self.since_refactor >= REFACTOR_EVERY:
            self.refactor()

    # one phase

    def run(self, cost: np.ndarray, phase: int) -> _Phase:
        degenerate = 0
        bland = False
        columns = np.arange(self.ncols)
        while True:
            if self.iterations >= self.max_iterations:
                raise SolverLimitReached(
                    f"simplex stopped after {self.iterations} iterations"
                )

            y = cost[self.basis] @ self.binv if self.m else np.zeros(0)
            reduced = cost - y @ self.A if self.m else cost.copy()

            st = self.status
            can_rise = ((st == _At.LOWER) | (st == _At.FREE)) & (reduced < -self.opt_tol)
            can_fall = ((st == _At.UPPER) | (st == _At.FREE)) & (reduced > self.opt_tol)
            eligible = columns[can_rise | can_fall]
            if eligible.size == 0:
                return _Phase(optimal=True)

            if bland:
                q = int(eligible[0])
            else:
                q = int(eligible[np.argmax(np.abs(reduced[eligible]))])
            # Direction of x_q: rise on a negative reduced cost.
            sigma = 1.0 if reduced[q] < 0 else -1.0

            alpha = self.binv @ self.A[:, q] if self.m else np.zeros(0)
            step = sigma * alpha

            # Ratio test over basic variables.
            theta = math.inf
            leave = -1
            if self.m:
                xb = self.x[self.basis]
                lb = self.lower[self.basis]
                ub = self.upper[self.basis]
                ratios = np.full(self.m, math.inf)
                falling = step > PIVOT_TOL
                rising = step < -PIVOT_TOL
                ok = falling & np.isfinite(lb)
                ratios[ok] = (xb[ok] - lb[ok]) / step[ok]
                ok = rising & np.isfinite(ub)
                ratios[ok] = (ub[ok] - xb[ok]) / -step[ok]
                ratios = np.maximum(ratios, 0.0)
                theta = float(ratios.min())
                if math.isfinite(theta):
                    ties = np.flatnonzero(ratios <= theta + 1e-12)
                    if bland:
                        leave = int(ties[np.argmin(self.basis[ties])])
                    else:
                        leave = int(ties[np.argmax(np.abs(alpha[ties]))])

            flip = self.upper[q] - self.lower[q]
            if not math.isfinite(theta) and not math.isfinite(flip):
                return _Phase(optimal=False, unbounded_column=q)

            self.iterations += 1
            if flip <= theta:
                # Entering variable reaches its opposite bound first.
                if self.m:
                    self.x[self.basis] -= flip * step
                if self.status[q] == _At.LOWER:
                    self.status[q], self.x[q] = _At.UPPER, self.upper[q]
                else:
                    self.status[q], self.x[q] = _At.LOWER, self.lower[q]
                degenerate = 0
                continue

            if self.m:
                self.x[self.basis] -= theta * step
            self.x[q] += sigma * theta
            out = int(self.basis[leave])
            if step[leave] > 0:
                self.status[out], self.x[out] = _At.LOWER, self.lower[out]
            else:
                self.status[out], self.x[out] = _At.UPPER, self.upper[out]
            if self.lower[out] == self.upper[out]:
                self.status[out] = _At.FIXED
            self.basis[leave] = q
            self.status[q] = _At.BASIC
            self.pivot(leave, alpha)

            if theta <= 1e-12:
                degenerate += 1
                if not bland and degenerate >= DEGENERATE_STREAK:
                    bland = True
                    logger.debug(
                        "phase %d: %d degenerate pivots, switching to Bland's rule",
                        phase,
                        degenerate,
                    )
            else:
                degenerate = 0


def solve_lp(
    lp: LinearProgram,
    *,
    feasibility_tol: float = FEASIBILITY_TOL,
    optimality_tol: float = OPTIMALITY_TOL,
    max_iterations: int | None = None,
) -> LpSolution:
    """Solve a linear program.

    Args:
        lp: The problem (minimization).
        feasibility_tol: Primal feasibility tolerance on the scaled problem.
        optimality_tol: Reduced-cost tolerance.
        max_iterations: Iteration cap (default scales with problem size).

    Returns:
        LpSolution with status, primal values, objective and row duals.

    Raises:
        MalformedProblem: If the problem references undeclared variables.
        SolverLimitReached: If the iteration cap is exhausted.
    """
    arrays = lp.to_arrays()
    A0 = arrays.matrix.toarray()
    m, n = A0.shape
    row_scale, col_scale = _equilibrate(A0)

    A = A0 * row_scale[:, None] * col_scale[None, :]
    b = arrays.rhs * row_scale
    cost = arrays.cost * col_scale
    with np.errstate(invalid="ignore"):
        lower = arrays.lower / col_scale
        upper = arrays.upper / col_scale

    slack_lower = np.zeros(m)
    slack_upper = np.zeros(m)
    for i, rel in enumerate(arrays.relations):
        if rel is Relation.LE:
            slack_upper[i] = math.inf
        elif rel is Relation.GE:
            slack_lower[i] = -math.inf

    # Columns: structural | slack | artificial.
    full = np.hstack([A, np.eye(m), np.zeros((m, m))])
    lo = np.concatenate([lower, slack_lower, np.zeros(m)])
    up = np.concatenate([upper, slack_upper, np.zeros(m)])
    cap = max_iterations or max(1000, 20 * (m + n + m))
    solver = _Simplex(
        full,
        b,
        lo,
        up,
        feasibility_tol=feasibility_tol,
        optimality_tol=optimality_tol,
        max_iterations=cap,
    )

    for j in range(n):
        solver.place_nonbasic(j)
    start = b - A @ solver.x[:n] if m else np.zeros(0)
    needs_phase_one = False
    for i in range(m):
        slack, art = n + i, n + m + i
        value = start[i]
        if slack_lower[i] - feasibility_tol <= value <= slack_upper[i] + feasibility_tol:
            solver.basis[i] = slack
            solver.status[slack] = _At.BASIC
            solver.x[slack] = value
            solver.status[art], solver.x[art] = _At.FIXED, 0.0
        else:
            clamped = min(max(value, slack_lower[i]), slack_upper[i])
            residual = value - clamped
            sign = 1.0 if residual > 0 else -1.0
            full[i, art] = sign
            solver.upper[art] = math.inf
            solver.x[slack] = clamped
            solver.status[slack] = (
                _At.FIXED
                if slack_lower[i] == slack_upper[i]
                else (_At.LOWER if clamped == slack_lower[i] else _At.UPPER)
            )
            solver.basis[i] = art
            solver.status[art] = _At.BASIC
            solver.x[art] = abs(residual)
            needs_phase_one = True
    if m:
        solver.refactor()

    infeasibility = 0.0
    if needs_phase_one:
        phase_one_cost = np.zeros(full.shape[1])
        phase_one_cost[n + m :] = 1.0
        solver.run(phase_one_cost, phase=1)
        solver.refactor()
        infeasibility = float(solver.x[n + m :].sum())
        logger.debug(
            "%s: phase 1 finished after %d iterations, infeasibility %.3e",
            lp.name,
            solver.iterations,
            infeasibility,
        )
        if infeasibility > feasibility_tol:
            values = solver.x[:n] * col_scale
            logger.info("%s: infeasible (phase-1 residual %.3e)", lp.name, infeasibility)
            return LpSolution(
                status=LpStatus.INFEASIBLE,
                values=values,
                objective_value=math.nan,
                duals=np.zeros(0),
                max_primal_residual=_max_residual(arrays, values),
                iterations=solver.iterations,
                variable_names=lp.variable_names,
                infeasibility=infeasibility,
            )
        # Artificials stay in the problem pinned at zero.
        solver.upper[n + m :] = 0.0
        for j in range(n + m, n + 2 * m):
            if solver.status[j] != _At.BASIC:
                solver.status[j], solver.x[j] = _At.FIXED, 0.0

    phase_two_cost = np.concatenate([cost, np.zeros(2 * m)])
    outcome = solver.run(phase_two_cost, phase=2)
    if m:
        solver.refactor()
    values = solver.x[:n] * col_scale

    if not outcome.optimal:
        ray = outcome.unbounded_column
        logger.info("%s: unbounded along column %s", lp.name, ray)
        return LpSolution(
            status=LpStatus.UNBOUNDED,
            values=values,
            objective_value=-math.inf,
            duals=np.zeros(0),
            max_primal_residual=_max_residual(arrays, values),
            iterations=solver.iterations,
            variable_names=lp.variable_names,
            unbounded_variable=ray if ray is not None and ray < n else None,
        )

    duals = (
        (phase_two_cost[solver.basis] @ solver.binv) * row_scale if m else np.zeros(0)
    )
    objective = float(arrays.cost @ values) + lp.objective_constant
    logger.info(
        "%s: optimal after %d iterations, objective %.10g",
        lp.name,
        solver.iterations,
        objective,
    )
    return LpSolution(
        status=LpStatus.OPTIMAL,
        values=values,
        objective_value=objective,
        duals=duals,
        max_primal_residual=_max_residual(arrays, values),
        iterations=solver.iterations,
        variable_names=lp.variable_names,
    )


def _max_residual(arrays, values: np.ndarray) -> float:
    bound = np.maximum(arrays.lower - values, values - arrays.upper)
    worst = float(bound.max()) if bound.size else 0.0
    rows = row_violations(arrays, values)
    if rows.size:
        worst = max(worst, float(rows.max()))
    return max(worst, 0.0)
