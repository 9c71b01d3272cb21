"""General-form linear programs.

A LinearProgram is a minimization over named variables with lower/upper
bounds and rows of the form ``sum(a_j x_j) <relation> rhs``. Programs are
assembled with LpBuilder and immutable afterwards.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import StrEnum

import numpy as np
import scipy.sparse as sp

from ..errors import MalformedProblem


class Relation(StrEnum):
    """Row relation."""

    LE = "<="
    EQ = "="
    GE = ">="


@dataclass(frozen=True)
class Variable:
    """A decision variable.

    Attributes:
        name: Unique variable name.
        lower: Lower bound (may be -inf).
        upper: Upper bound (may be +inf).
        cost: Objective coefficient.
    """

    name: str
    lower: float = 0.0
    upper: float = math.inf
    cost: float = 0.0


@dataclass(frozen=True)
class Row:
    """A linear constraint.

    Attributes:
        name: Row name.
        coefficients: (variable name, coefficient) pairs.
        relation: <=, = or >=.
        rhs: Right-hand side.
    """

    name: str
    coefficients: tuple[tuple[str, float], ...]
    relation: Relation
    rhs: float


@dataclass(frozen=True)
class LpArrays:
    """Matrix form of a linear program (variables and rows in declaration order)."""

    cost: np.ndarray
    matrix: sp.csr_matrix
    relations: tuple[Relation, ...]
    rhs: np.ndarray
    lower: np.ndarray
    upper: np.ndarray


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """A minimization problem in general form.

    Attributes:
        variables: Declared variables.
        rows: Constraints.
        name: Problem name used in logs and dumps.
        objective_constant: Constant added to the objective value.
    """

    variables: tuple[Variable, ...]
    rows: tuple[Row, ...]
    name: str = "lp"
    objective_constant: float = 0.0

    @property
    def variable_names(self) -> tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    def scaled_objective(self, factor: float) -> LinearProgram:
        """Copy with every cost (and the constant) multiplied by ``factor``."""
        return LinearProgram(
            variables=tuple(
                Variable(v.name, v.lower, v.upper, v.cost * factor)
                for v in self.variables
            ),
            rows=self.rows,
            name=self.name,
            objective_constant=self.objective_constant * factor,
        )

    def to_arrays(self) -> LpArrays:
        """Convert to matrix form.

        Raises:
            MalformedProblem: On dangling variable references, duplicate
                names, or inverted bounds.
        """
        index: dict[str, int] = {}
        for i, var in enumerate(self.variables):
            if var.name in index:
                raise MalformedProblem(f"{self.name}: duplicate variable {var.name}")
            if var.lower > var.upper:
                raise MalformedProblem(
                    f"{self.name}: variable {var.name} has lower {var.lower} > upper {var.upper}"
                )
            index[var.name] = i

        data: list[float] = []
        row_idx: list[int] = []
        col_idx: list[int] = []
        for r, row in enumerate(self.rows):
            for name, coef in row.coefficients:
                col = index.get(name)
                if col is None:
                    raise MalformedProblem(
                        f"{self.name}: row {row.name} references undeclared variable {name}"
                    )
                if coef != 0.0:
                    data.append(coef)
                    row_idx.append(r)
                    col_idx.append(col)

        # Duplicate (row, col) entries are summed by the COO->CSR conversion.
        matrix = sp.coo_matrix(
            (data, (row_idx, col_idx)), shape=(len(self.rows), len(self.variables))
        ).tocsr()
        return LpArrays(
            cost=np.array([v.cost for v in self.variables], dtype=float),
            matrix=matrix,
            relations=tuple(row.relation for row in self.rows),
            rhs=np.array([row.rhs for row in self.rows], dtype=float),
            lower=np.array([v.lower for v in self.variables], dtype=float),
            upper=np.array([v.upper for v in self.variables], dtype=float),
        )


class LpBuilder:
    """Incremental assembly of a LinearProgram.

    Example:
        >>> lp = LpBuilder("toy")
        >>> x = lp.add_variable("x", upper=5.0, cost=-1.0)
        >>> lp.add_row("cap", {x: 1.0}, Relation.LE, 4.0)
        >>> problem = lp.build()
    """

    def __init__(self, name: str = "lp"):
        self.name = name
        self._variables: list[Variable] = []
        self._rows: list[Row] = []
        self._names: set[str] = set()
        self._order: list[str] = []
        self.objective_constant = 0.0

    def add_variable(
        self,
        name: str,
        *,
        lower: float = 0.0,
        upper: float = math.inf,
        cost: float = 0.0,
    ) -> str:
        """Declare a variable and return its name."""
        if name in self._names:
            raise MalformedProblem(f"{self.name}: duplicate variable {name}")
        self._names.add(name)
        self._order.append(name)
        self._variables.append(Variable(name, lower, upper, cost))
        return name

    def add_row(
        self,
        name: str,
        coefficients: Mapping[str, float] | Iterable[tuple[str, float]],
        relation: Relation,
        rhs: float,
    ) -> None:
        """Append a constraint row."""
        items = coefficients.items() if isinstance(coefficients, Mapping) else coefficients
        self._rows.append(
            Row(
                name=name,
                coefficients=tuple((v, float(c)) for v, c in items),
                relation=relation,
                rhs=float(rhs),
            )
        )

    @property
    def names(self) -> list[str]:
        """Variable names in declaration order (live view)."""
        return self._order

    @property
    def variable_count(self) -> int:
        return len(self._variables)

    @property
    def row_count(self) -> int:
        return len(self._rows)

    def build(self) -> LinearProgram:
        return LinearProgram(
            variables=tuple(self._variables),
            rows=tuple(self._rows),
            name=self.name,
            objective_constant=self.objective_constant,
        )
